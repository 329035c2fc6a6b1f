"""Stick graphs to BipHook graphs: each vertex becomes an induced 4-cycle.

For a vertex ``u`` the cycle is ``x_u - t_u - y_u - z_u - x_u``; an edge
``uv`` adds the four edges between ``{x_u, y_u}`` and ``{x_v, y_v}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .feasibility import HOOK, STICK, check_order, extremal_reaches
from .geometry import Q, Geometry, intersection_pairs, verify_geometry
from .graph import A, B, Graph

ROLE = ("x", "t", "y", "z")

# Centre order inside a block, listed by role, for each of the four
# representation cases of a 4-cycle (up to x<->y and t<->z).
CASE_PATTERNS = {
    1: ("x", "z", "y", "t"),
    2: ("t", "x", "z", "y"),
    3: ("x", "y", "t", "z"),
    4: ("t", "z", "x", "y"),
}
CASE_TYPE = {1: B, 2: A, 3: B, 4: A}
BLOCK_TEMPLATE = {B: 1, A: 2}
BLOCK_STRIDE = 5  # four centres per original position, then one empty slot


class BipHookError(ValueError):
    pass


@dataclass(frozen=True)
class FourCycleType:
    type: str
    case: int


@dataclass
class BipHookArtifact:
    source: Graph
    gamma: Graph
    registry: dict          # original vertex -> (x, t, y, z) ids in gamma

    def block(self, u: int) -> tuple[int, int, int, int]:
        return self.registry[u]


def build_biphook(g: Graph, require_connected: bool = True) -> BipHookArtifact:
    if require_connected and not g.is_connected():
        raise BipHookError("input graph must be connected")
    names = []
    for u in range(g.n):
        label = g.label(u)
        names += [f"{r}_{label}" for r in ROLE]
    edges = []
    for u in range(g.n):
        x, t, y, z = 4 * u, 4 * u + 1, 4 * u + 2, 4 * u + 3
        edges += [(x, t), (t, y), (y, z), (z, x)]
    for u, v in sorted(g.edges):
        for a in (4 * u, 4 * u + 2):
            for b in (4 * v, 4 * v + 2):
                edges.append((a, b))
    sides = None
    if g.bipartite:
        sides = []
        for u in range(g.n):
            own, other = (A, B) if g.sides[u] == A else (B, A)
            sides += [own, other, own, other]
    gamma = Graph(4 * g.n, edges, sides, names)
    registry = {u: (4 * u, 4 * u + 1, 4 * u + 2, 4 * u + 3) for u in range(g.n)}
    return BipHookArtifact(g, gamma, registry)


def _block_layout(kind: str) -> list[str]:
    return list(CASE_PATTERNS[BLOCK_TEMPLATE[kind]])


def stick_to_hooks(g: Graph, stick_geom: Geometry, art: BipHookArtifact | None = None) -> Geometry:
    """Replace every stick by the 4-hook block of its type."""
    check = verify_geometry(stick_geom, g)
    if not check.match:
        raise BipHookError("input geometry does not represent the graph")
    art = art or build_biphook(g, require_connected=False)
    order = stick_geom.order()
    reach = extremal_reaches(g, order, STICK)
    n4 = 4 * g.n
    slot = {}
    for i, u in enumerate(order):
        for j, role in enumerate(_block_layout(g.sides[u])):
            slot[art.registry[u][ROLE.index(role)]] = BLOCK_STRIDE * i + j
    fwd = [0] * n4
    back = [0] * n4
    for u in order:
        x, t, y, z = (slot[h] for h in art.registry[u])
        if g.sides[u] == B:
            # x z y t: x and y reach right to the last centre of the last neighbour block
            far = max(BLOCK_STRIDE * reach.forward[u] + 3, t)
            fwd_r = {"x": far, "z": y, "y": far, "t": t}
            back_r = {"x": x, "z": x, "y": z, "t": x}
        else:
            # t x z y: x and y reach down to the first centre of the first neighbour block
            near = min(BLOCK_STRIDE * reach.back[u], t)
            fwd_r = {"t": y, "x": z, "z": y, "y": y}
            back_r = {"t": t, "x": near, "z": x, "y": near}
        for role, hv in zip(ROLE, art.registry[u]):
            fwd[hv] = fwd_r[role]
            back[hv] = back_r[role]
    origins = tuple((Q * slot[v], -Q * slot[v]) for v in range(n4))
    htip = tuple(Q * fwd[v] + 1 for v in range(n4))
    vtip = tuple(-Q * back[v] + 1 for v in range(n4))
    names = tuple(art.gamma.label(v) for v in range(n4))
    return Geometry(HOOK, origins, htip, vtip, names)


def classify_order(positions: Sequence[int]) -> FourCycleType:
    """Classify a 4-cycle by the centre positions of (x, t, y, z)."""
    px, pt, py, pz = positions
    if px > py:
        px, py = py, px
    inside = [p for p in (pt, pz) if px < p < py]
    outside = [p for p in (pt, pz) if not px < p < py]
    if len(inside) == 2:
        raise BipHookError("t and z both between x and y cannot realize a 4-cycle")
    if len(inside) == 1:
        case = 1 if outside[0] > py else 2
    elif all(p > py for p in outside):
        case = 3
    elif all(p < px for p in outside):
        case = 4
    else:
        raise BipHookError("one of t, z before x and the other after y cannot realize a 4-cycle")
    return FourCycleType(CASE_TYPE[case], case)


def classify_four_cycle(geom: Geometry, block: Sequence[int]) -> FourCycleType:
    """Classify the sub-representation of the hooks ``block = (x, t, y, z)``."""
    x, t, y, z = block
    cycle = {frozenset(e) for e in ((x, t), (t, y), (y, z), (z, x))}
    meets, _ = intersection_pairs(geom)
    inner = {frozenset(p) for p in meets if set(p) <= set(block)}
    if inner != cycle:
        raise BipHookError("these hooks do not realize an induced 4-cycle")
    order = geom.order()
    rank = {v: i for i, v in enumerate(order)}
    return classify_order([rank[v] for v in block])


def hooks_to_stick(art: BipHookArtifact, hook_geom: Geometry) -> list[int]:
    """Recover a feasible stick order of the source graph from hooks."""
    g = art.source
    if not g.bipartite:
        raise BipHookError("source graph must be bipartite")
    types = {u: classify_four_cycle(hook_geom, art.registry[u]).type for u in range(g.n)}
    for u, v in sorted(g.edges):
        if types[u] == types[v]:
            raise BipHookError(f"adjacent blocks {g.label(u)} and {g.label(v)} share type {types[u]}")
    if not verify_geometry(hook_geom, art.gamma).match:
        raise BipHookError("hook geometry does not represent gamma")
    order = hook_geom.order()
    rank = {h: i for i, h in enumerate(order)}
    key = {}
    for u in range(g.n):
        x, _, y, _ = art.registry[u]
        key[u] = max(rank[x], rank[y]) if types[u] == B else min(rank[x], rank[y])
    # an A-type block may start just before its B-type neighbour ends; nothing
    # sits in between, so it can slide right past it
    for u in sorted(range(g.n), key=lambda w: key[w]):
        if types[u] == A:
            left = [key[v] for v in g.neighbors(u) if types[v] == B]
            if left and max(left) > key[u]:
                key[u] = max(left) + 0.5
    stick = []
    for comp in _components(g):
        part = sorted(comp, key=lambda w: key[w])
        agree = [types[u] == g.sides[u] for u in comp]
        if not any(agree):
            part.reverse()  # mirrored: the two sides swapped roles
        elif not all(agree):
            raise BipHookError("block types agree with neither orientation of the bipartition")
        stick += part
    rep = check_order(g, stick, STICK)
    if not rep.feasible:
        raise BipHookError("recovered order is not feasible")
    return stick


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(comp)
    return out


def mirror(g: Graph, order: Sequence[int]) -> tuple[Graph, list[int]]:
    """Swap the roles of A and B; the reversed order represents the result."""
    swapped = g.with_sides([A if s == B else B for s in g.sides])
    return swapped, list(reversed(order))
