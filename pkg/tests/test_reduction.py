import itertools
import json
from pathlib import Path

import pytest

from stickkit.feasibility import check_order
from stickkit.graph import A, B, parse_graph, serialize_graph
from stickkit.reduction import (
    AssignmentError,
    DecodeError,
    InstanceError,
    OneInThreeInstance,
    artifact_from_files,
    build_reduction,
    decode_assignment,
    expected_counts,
    format_1in3,
    format_order,
    normalize_instance,
    parse_1in3,
    parse_assignment,
    parse_order,
    witness_order,
)

INSTANCES = Path(__file__).parent / "data" / "instances"


def load(name):
    return normalize_instance(parse_1in3((INSTANCES / name).read_text()))


@pytest.fixture(scope="module")
def one():
    return build_reduction(load("one_clause.cnf3"))


# -- parsing -----------------------------------------------------------------


def test_parse_one_clause():
    inst = parse_1in3("p m1in3 3 1\n1 2 3 0\n")
    assert inst.n == 3 and inst.clauses == ((1, 2, 3),)


def test_parse_accepts_duplicates():
    inst = parse_1in3("c dup\np m1in3 5 1\n2 2 5 0\n")
    assert inst.clauses == ((2, 2, 5),) and not inst.is_normalized()


@pytest.mark.parametrize("text", [
    "p m1in3 3 1\n1 2 0\n",
    "p m1in3 3 1\n1 2 4 0\n",
    "p m1in3 3 1\n0 2 3 0\n",
    "p m1in3 3 2\n1 2 3 0\n",
    "p cnf 3 1\n1 2 3 0\n",
    "1 2 3 0\n",
    "p m1in3 3 1\n1 2 3\n",
])
def test_parse_errors(text):
    with pytest.raises(InstanceError):
        parse_1in3(text)


def test_format_round_trip():
    inst = load("dense3.cnf3")
    assert parse_1in3(format_1in3(inst)).clauses == inst.clauses


# -- normalization ---------------------------------------------------------------


def test_normalize_doubled():
    inst = normalize_instance(parse_1in3("p m1in3 2 1\n1 1 2 0\n"))
    assert inst.n == 4 and inst.m == 3 and inst.is_normalized()


def test_normalize_fixed_point():
    inst = parse_1in3("p m1in3 5 2\n1 2 3 0\n3 4 5 0\n")
    assert normalize_instance(inst) == inst


def test_normalize_tripled():
    inst = normalize_instance(parse_1in3("p m1in3 1 1\n1 1 1 0\n"))
    assert inst.n == 5 and inst.m == 7 and inst.is_normalized()


def _satisfiable(inst):
    return any(not inst.satisfied_by(v) for v in itertools.product((False, True), repeat=inst.n))


def test_normalization_preserves_satisfiability():
    # (x, x, y) is satisfied by x=F, y=T; (x, x, x) never is
    assert _satisfiable(load("xxy.cnf3"))
    assert not _satisfiable(load("xxx.cnf3"))


def test_normalization_keeps_solution_projection():
    raw = parse_1in3("p m1in3 2 1\n1 1 2 0\n")
    norm = normalize_instance(raw)
    for vals in itertools.product((False, True), repeat=norm.n):
        if not norm.satisfied_by(vals):
            assert not raw.satisfied_by(vals[: raw.n])


# -- builder ------------------------------------------------------------------


def test_one_clause_registry(one):
    names = set(one.registry)
    assert {f"h{d}" for d in range(2, 7)} <= names
    assert "h1" not in names and "h7" not in names
    assert sum(1 for x in names if x.startswith("K1.")) == 40
    assert not any(x.startswith("K2.") for x in names)
    for t in (1, 2, 3):
        assert {f"V{t}.{x}" for x in ("v", "w", "u0", "u1", "n0", "n1")} <= names
    assert {f"O.{x}" for x in ("T", "N", "R", "Q", "P", "Y", "e1", "e2", "f1", "f2", "g1", "g2")} <= names


def test_registry_total_and_injective(one):
    symbols = ["b1", "b2", "b10", "b11", "a1", "a2", "C", "D", "U", "W", "Z", "d1", "d2", "L", "V", "H", "S",
               "Mx0", "Mx1", "My0", "My1", "Mz0", "Mz1", "s0", "s1", "t0", "t1", "r0", "r1", "v0", "v1",
               "f1", "g1", "R", "g2", "f2", "e1", "Q", "e2", "N", "P", "Y", "T"]
    ids = {one.vid(f"K1.{s}") for s in symbols}
    # Mz1 = V, e1 = H, N = S share a vertex
    assert len(ids) == len(symbols) - 3
    assert sorted(one.registry.values()) == list(range(one.graph.n))
    for t in (1, 2, 3):
        for s in ("0", "1"):
            assert f"V{t}.u{s}*K1" in one.registry


def test_sides_follow_orientation(one):
    g = one.graph
    for name in ("K1.a1", "K1.C", "K1.L", "O.T", "O.Q", "h2", "V1.n0"):
        assert g.sides[one.vid(name)] == A, name
    for name in ("K1.b1", "K1.b10", "O.f1", "O.g1", "V1.v", "V1.u0"):
        assert g.sides[one.vid(name)] == B, name


def test_unnormalized_rejected():
    with pytest.raises(InstanceError):
        build_reduction(parse_1in3("p m1in3 2 1\n1 1 2 0\n"))


def test_deterministic_serialization():
    a = serialize_graph(build_reduction(load("chain2.cnf3")).graph)
    b = serialize_graph(build_reduction(load("chain2.cnf3")).graph)
    assert a == b


def test_serialization_preserves_registry(one):
    g = parse_graph(serialize_graph(one.graph))
    assert {g.label(v): v for v in range(g.n)} == one.registry


@pytest.mark.parametrize("name", sorted(p.name for p in INSTANCES.glob("*.cnf3")))
def test_counts_match_closed_forms(name):
    inst = load(name)
    art = build_reduction(inst)
    want = expected_counts(inst)
    assert art.graph.n == want["vertices"] == want["vertices.closed_form"]
    for key, val in want.items():
        if key.startswith("edges."):
            assert art.counts[key] == val, key
    assert art.counts["edges"] == len(art.graph.edges)


# -- witness and decode -----------------------------------------------------------


def test_witness_tff_round_trip(one):
    vals = (True, False, False)
    order = witness_order(one, vals)
    assert check_order(one.graph, order).feasible
    assert decode_assignment(one, order) == vals


@pytest.mark.parametrize("vals", [(True, False, False), (False, True, False), (False, False, True)])
def test_all_valid_assignments_round_trip(one, vals):
    assert decode_assignment(one, witness_order(one, vals)) == vals


def test_all_false_rejected(one):
    with pytest.raises(AssignmentError, match="clause 1"):
        witness_order(one, (False, False, False))


def test_wrong_length_rejected(one):
    with pytest.raises(AssignmentError):
        witness_order(one, (True, False))


def test_true_means_u1_first(one):
    order = witness_order(one, (False, True, False))
    pos = {v: i for i, v in enumerate(order)}
    for t, val in zip((1, 2, 3), (False, True, False)):
        assert (pos[one.vid(f"V{t}.u1")] < pos[one.vid(f"V{t}.u0")]) == val


def test_handy_sub_order_in_witness(one):
    order = witness_order(one, (True, False, False))
    names = [one.graph.label(v) for v in order]
    assert [x for x in names if x in ("O.f1", "O.g1", "O.g2", "O.f2")] == ["O.f1", "O.g1", "O.g2", "O.f2"]


def test_decode_rejects_infeasible(one):
    order = witness_order(one, (True, False, False))
    order[0], order[-1] = order[-1], order[0]
    with pytest.raises(DecodeError):
        decode_assignment(one, order)


def test_decode_rejects_non_permutation(one):
    with pytest.raises(DecodeError):
        decode_assignment(one, [0] * one.graph.n)


def test_sidecar_round_trip(one, tmp_path):
    side = json.loads(json.dumps(one.sidecar()))
    g = parse_graph(serialize_graph(one.graph))
    art = artifact_from_files(g, side)
    order = parse_order(g, format_order(one.graph, witness_order(one, (False, False, True))))
    assert decode_assignment(art, order) == (False, False, True)


def test_sidecar_mismatch_detected(one):
    side = one.sidecar()
    side["registry"] = dict(side["registry"], **{"K1.a1": side["registry"]["K1.C"]})
    with pytest.raises(DecodeError):
        artifact_from_files(one.graph, side)


def test_parse_assignment_forms():
    assert parse_assignment("T F f", 3) == (True, False, False)
    assert parse_assignment("1,0", 2) == (True, False)
    with pytest.raises(AssignmentError):
        parse_assignment("T X", 2)
    with pytest.raises(AssignmentError):
        parse_assignment("T", 2)


def test_instance_validation():
    with pytest.raises(InstanceError):
        OneInThreeInstance(2, ((1, 2, 3),), ())
