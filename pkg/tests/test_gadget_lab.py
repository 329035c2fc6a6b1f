import pytest

from stickkit import gadget_lab
from stickkit.gadget_lab import (
    EXHAUSTED,
    REFUTED,
    VERIFIED,
    check_clause_states,
    check_forced_cycle,
    check_four_cycle_types,
    check_handy,
    check_transmission,
)

# pinned by the first complete enumeration of each gadget
HANDY_ORDERS = 8
FORCED_ORDERS = {3: None, 4: 16, 5: 16}
CLAUSE_TRIPLETS = {"FFT": 8, "FTF": 16, "TFF": 24}
TRANSMISSION_TRIPLETS = {"FFT": 128, "FTF": 2304, "TFF": 3840}
C4_ORDERS = 16


def test_handy_verified():
    rep = check_handy()
    assert rep.status == VERIFIED
    assert rep.evidence["projected_classes"] == 1
    assert rep.evidence["orders"] == HANDY_ORDERS
    assert len(rep.evidence["p_slots"]) == 2 and len(rep.evidence["y_slots"]) <= 3


def test_handy_exhausted_with_tiny_budget():
    assert check_handy(budget=2).status == EXHAUSTED


@pytest.mark.parametrize("k", [4, 5])
def test_forced_cycle_verified(k):
    rep = check_forced_cycle(k)
    assert rep.status == VERIFIED and rep.evidence["orders"] == FORCED_ORDERS[k]


@pytest.mark.parametrize("k", [3, 6])
def test_forced_cycle_other_sizes(k):
    assert check_forced_cycle(k).status == VERIFIED


@pytest.mark.parametrize("drop", [("Q", "g1"), ("Q", "g2"), ("e2", "R"), ("e2", "f2"), ("h2", "p2"), ("h3", "p2")])
def test_forced_cycle_mutations_refuted(drop):
    rep = check_forced_cycle(4, drop)
    assert rep.status == REFUTED and rep.evidence["offending"]


def test_forced_cycle_size_guard():
    with pytest.raises(ValueError):
        check_forced_cycle(7)


def test_clause_states():
    rep = check_clause_states()
    assert rep.status == VERIFIED
    assert rep.evidence["triplets"] == CLAUSE_TRIPLETS
    for case, item in rep.evidence["templates"].items():
        assert item["feasible"] and item["triplet"] == item["expected"]
    assert rep.evidence["templates"]["1"]["triplet"] == "TFF"
    assert rep.evidence["templates"]["4"]["triplet"] == "FFT"


def test_clause_states_exhausted():
    rep = check_clause_states(budget=100)
    assert rep.status == EXHAUSTED and not rep.ok


@pytest.mark.slow
def test_transmission():
    rep = check_transmission()
    assert rep.status == VERIFIED
    assert rep.evidence["triplets"] == TRANSMISSION_TRIPLETS


@pytest.mark.slow
def test_transmission_without_r1_refuted():
    rep = check_transmission(drop_vertices=("r1",))
    assert rep.status == REFUTED
    assert any("x-biconditional" in o["reason"] for o in rep.evidence["offending"])


def test_four_cycle_types():
    rep = check_four_cycle_types()
    assert rep.status == VERIFIED
    assert rep.evidence["classes"] == 4 and rep.evidence["types"] == {"A": 2, "B": 2}
    assert rep.evidence["orders"] == C4_ORDERS


def test_report_json_and_summary():
    rep = check_four_cycle_types()
    obj = rep.to_json()
    assert obj["status"] == VERIFIED and obj["id"] == "four-cycle-types"
    assert rep.summary().startswith("four-cycle-types: verified")


def test_run_checks_unknown():
    with pytest.raises(ValueError):
        gadget_lab.run_checks("nope")
