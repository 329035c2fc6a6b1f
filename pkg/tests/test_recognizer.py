import pytest

from stickkit import _kernel
from stickkit.feasibility import check_order
from stickkit.gadgets import handy_gadget
from stickkit.geometry import verify_geometry
from stickkit.graph import A, B, Graph
from stickkit.recognizer import (
    EXHAUSTED,
    NO,
    YES,
    RecognitionError,
    brute_force_oracle,
    enumerate_representations,
    recognize,
)
from corpus import all_graphs, connected_bipartite, cube, cycle

K2 = Graph(2, [(0, 1)], [B, A], ["b", "a"])
TWO_K2 = Graph(4, [(0, 1), (2, 3)], [B, A, B, A], ["b1", "a1", "b2", "a2"])
OCTAHEDRON = Graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u + 3])


def test_k2_yes():
    out = recognize(K2, "stick")
    assert out.verdict == YES and out.witness.order == (0, 1)
    assert verify_geometry(out.witness.geometry, K2).match


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_even_cycles_are_stick(k):
    g = cycle(k)
    out = recognize(g, "stick")
    assert out.verdict == YES
    assert check_order(g, list(out.witness.order)).feasible


def test_cube_is_not_stick():
    out = recognize(cube(), "stick")
    assert out.verdict == NO


def test_all_connected_bipartite_up_to_seven_are_stick():
    graphs = connected_bipartite(7)
    assert all(recognize(g, "stick").verdict == YES for g in graphs)


def test_octahedron_is_not_mpt():
    assert recognize(OCTAHEDRON, "mpt").verdict == NO
    assert brute_force_oracle(OCTAHEDRON, "mpt").verdict == NO


def test_budget_exhausted_is_not_no():
    out = recognize(cube(), "stick", budget=3)
    assert out.verdict == EXHAUSTED and out.witness is None


def test_errors():
    with pytest.raises(RecognitionError):
        recognize(Graph(2, [(0, 1)]), "stick")
    with pytest.raises(RecognitionError):
        recognize(Graph(3, [(0, 1), (1, 2), (0, 2)]), "biphook")
    with pytest.raises(RecognitionError):
        recognize(K2, "interval")
    with pytest.raises(RecognitionError):
        recognize(K2, "stick", budget=0)
    with pytest.raises(RecognitionError):
        brute_force_oracle(cube(), "stick")


def test_biphook_accepts_plain_bipartite():
    assert recognize(cycle(3).as_plain(), "biphook").verdict == YES


def test_enumerate_k2():
    rep = enumerate_representations(K2, "stick")
    assert rep.complete and rep.orders == [(0, 1)]


def test_enumerate_c4_b_suborders():
    g = cycle(2)  # c0, c2 are B
    rep = enumerate_representations(g, "stick", project=["c0", "c2"])
    assert rep.complete and sorted(rep.orders) == [(0, 2), (2, 0)]


def test_enumerate_handy_projection_unique():
    g = handy_gadget()
    core = [x for x in g.names if x not in ("P", "Y")]
    rep = enumerate_representations(g, "stick", project=core)
    assert rep.complete and len(rep.orders) == 1


def test_enumerated_orders_are_feasible():
    g = cycle(3)
    rep = enumerate_representations(g, "stick")
    assert rep.count == len(rep.orders) > 0
    assert all(check_order(g, list(o)).feasible for o in rep.orders)


def test_enumerate_budget_incomplete():
    rep = enumerate_representations(cycle(4), "stick", budget=5)
    assert not rep.complete


def test_oracle_two_k2_witness():
    out = brute_force_oracle(TWO_K2, "stick")
    assert out.verdict == YES and out.witness.order == (0, 1, 2, 3)


def test_oracle_c4_mpt():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert brute_force_oracle(c4, "mpt").verdict == YES


def test_deterministic_witness():
    g = cycle(5)
    assert recognize(g).witness.order == recognize(g).witness.order


@pytest.mark.skipif("cython" not in _kernel.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("g", list(connected_bipartite(6))[::3] + [cube(), handy_gadget()], ids=str)
def test_backends_identical(g):
    py = enumerate_representations(g, "stick", backend="python")
    cy = enumerate_representations(g, "stick", backend="cython")
    assert py.orders == cy.orders
    assert py.stats.nodes == cy.stats.nodes and py.stats.prunes == cy.stats.prunes


@pytest.mark.skipif("cython" not in _kernel.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("g", list(all_graphs(5))[::4] + [OCTAHEDRON], ids=str)
def test_backends_identical_hook(g):
    py = enumerate_representations(g, "mpt", backend="python")
    cy = enumerate_representations(g, "mpt", backend="cython")
    assert py.orders == cy.orders and py.complete == cy.complete


def test_unknown_backend():
    with pytest.raises(ValueError):
        recognize(K2, backend="fortran")


@pytest.mark.parametrize("g", [cycle(4), cube(), handy_gadget()], ids=str)
def test_parallel_matches_sequential(g):
    seq = recognize(g, "stick")
    par = recognize(g, "stick", workers=2)
    assert seq.verdict == par.verdict
    if seq.verdict == YES:
        assert seq.witness.order == par.witness.order


def test_parallel_never_exhausts_where_sequential_finishes():
    seq = recognize(cube(), "stick", budget=40)
    par = recognize(cube(), "stick", budget=40, workers=2)
    assert seq.verdict == par.verdict == NO
