"""Property tests over random small graphs, orders and instances."""
import itertools
import warnings

import networkx as nx
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from stickkit.biphook import build_biphook
from stickkit.feasibility import HOOK, STICK, check_order, prefix_prunable
from stickkit.geometry import TouchingWarning, realize, verify_geometry
from stickkit.graph import A, B, Graph, graph_from_json, graph_to_json, parse_graph, serialize_graph, validate_bipartition
from stickkit.reduction import OneInThreeInstance, normalize_instance

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def bipartite_graphs(draw, max_n=7, min_n=1):
    n = draw(st.integers(min_n, max_n))
    sides = draw(st.lists(st.sampled_from((A, B)), min_size=n, max_size=n))
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if sides[u] != sides[v]]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    named = draw(st.booleans())
    names = [f"v{i}" for i in range(n)] if named else None
    return Graph(n, edges, sides, names)


@st.composite
def plain_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, edges)


@st.composite
def graph_and_order(draw, max_n=7):
    g = draw(bipartite_graphs(max_n))
    return g, draw(st.permutations(range(g.n)))


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@SETTINGS
@given(bipartite_graphs())
def test_adjacency_symmetric(g):
    for u in range(g.n):
        for v in range(g.n):
            assert g.adjacent(u, v) == g.adjacent(v, u) == (v in g.neighbors(u))


@SETTINGS
@given(bipartite_graphs())
def test_text_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


@SETTINGS
@given(bipartite_graphs())
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g


@SETTINGS
@given(plain_graphs())
def test_bipartition_agrees_with_networkx(g):
    res = validate_bipartition(g)
    assert res.is_bipartite == nx.is_bipartite(_nx(g))
    if res.is_bipartite:
        assert all(res.sides[u] != res.sides[v] for u, v in g.edges)
    else:
        cyc = res.odd_cycle
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        assert all(g.adjacent(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


@SETTINGS
@given(graph_and_order())
def test_feasible_iff_realization_matches(pair):
    g, order = pair
    rep = check_order(g, order)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TouchingWarning)
        chk = verify_geometry(realize(g, order, rep.reaches), g)
    assert chk.match == rep.feasible
    if rep.feasible:
        assert not chk.touchings and not caught


@SETTINGS
@given(graph_and_order(max_n=6))
def test_hook_feasible_iff_realization_matches(pair):
    g, order = pair
    plain = g.as_plain()
    rep = check_order(plain, order, HOOK)
    chk = verify_geometry(realize(plain, order, rep.reaches, HOOK), plain)
    assert chk.match == rep.feasible
    if rep.feasible:
        assert not chk.touchings


@SETTINGS
@given(graph_and_order(max_n=6), st.integers(0, 6), st.booleans())
def test_prefix_pruning_sound(pair, k, lookahead):
    g, order = pair
    prefix = list(order[: min(k, g.n)])
    if not prefix_prunable(g, prefix, STICK, lookahead):
        return
    rest = [v for v in range(g.n) if v not in prefix]
    for tail in itertools.permutations(rest):
        assert not check_order(g, prefix + list(tail)).feasible


@SETTINGS
@given(graph_and_order(max_n=6))
def test_feasible_orders_never_pruned(pair):
    g, order = pair
    assume(check_order(g, order).feasible)
    for k in range(g.n + 1):
        assert not prefix_prunable(g, order[:k], STICK, lookahead=True)


@SETTINGS
@given(bipartite_graphs(max_n=6))
def test_biphook_counts(g):
    art = build_biphook(g, require_connected=False)
    assert art.gamma.n == 4 * g.n
    assert len(art.gamma.edges) == 4 * g.n + 4 * len(g.edges)
    assert validate_bipartition(art.gamma.as_plain()).is_bipartite


@st.composite
def instances(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 2))
    lit = st.integers(1, n)
    clauses = tuple(tuple(draw(st.lists(lit, min_size=3, max_size=3))) for _ in range(m))
    return OneInThreeInstance(n, clauses, tuple(f"x{i}" for i in range(1, n + 1)))


def _solutions(inst):
    return {vals for vals in itertools.product((False, True), repeat=inst.n) if not inst.satisfied_by(vals)}


@SETTINGS
@given(instances())
def test_normalization_preserves_solutions(inst):
    norm = normalize_instance(inst)
    assert norm.is_normalized()
    assert normalize_instance(norm) == norm
    assert {s[: inst.n] for s in _solutions(norm)} == _solutions(inst)
