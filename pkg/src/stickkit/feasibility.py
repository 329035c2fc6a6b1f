"""Fixed-order feasibility for Stick and hook representations.

An order lists the vertices left to right along the ground line.  Reaches are
position indices: ``forward[v]`` is the rightmost position whose vertical line
the horizontal arm of ``v`` crosses, ``back[v]`` the leftmost position whose
level the vertical arm of ``v`` reaches.  For ``u`` before ``v`` the arms meet
iff ``forward[u] >= pos(v)`` and ``back[v] <= pos(u)``.

Taking every forward reach minimal and every back reach maximal (the
*extremal* reaches) realizes all edges with the fewest crossings, so an order
is feasible iff the extremal reaches create no crossing on a non-edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import A, B, Graph

STICK = "stick"
HOOK = "hook"
MODELS = (STICK, HOOK)

MISORDERED = "misordered-edge"
SPURIOUS = "spurious-nonedge"


class FeasibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Reaches:
    """Per-vertex reach indices; ``None`` where the model has no such arm."""

    forward: tuple
    back: tuple


@dataclass
class FeasibilityReport:
    feasible: bool
    reaches: Optional[Reaches]
    violations: list = field(default_factory=list)


def _check_model(g: Graph, model: str) -> None:
    if model not in MODELS:
        raise FeasibilityError(f"unknown model {model!r}")
    if model == STICK and not g.bipartite:
        raise FeasibilityError("stick model requires a bipartite graph")


def positions(order: Sequence[int], n: int) -> list[int]:
    """Inverse permutation; raises if ``order`` is not a permutation of 0..n-1."""
    if len(order) != n:
        raise FeasibilityError(f"order has {len(order)} entries, graph has {n} vertices")
    pos = [-1] * n
    for i, v in enumerate(order):
        if not 0 <= v < n or pos[v] != -1:
            raise FeasibilityError(f"order is not a permutation (bad entry {v})")
        pos[v] = i
    return pos


def extremal_reaches(g: Graph, order: Sequence[int], model: str = STICK) -> Reaches:
    _check_model(g, model)
    pos = positions(order, g.n)
    fwd: list = [None] * g.n
    back: list = [None] * g.n
    for v in range(g.n):
        p = pos[v]
        hi = lo = p
        for w in g.neighbors(v):
            q = pos[w]
            if q > hi:
                hi = q
            if q < lo:
                lo = q
        if model == HOOK or g.sides[v] == B:
            fwd[v] = hi
        if model == HOOK or g.sides[v] == A:
            back[v] = lo
    return Reaches(tuple(fwd), tuple(back))


def check_order(g: Graph, order: Sequence[int], model: str = STICK) -> FeasibilityReport:
    """Decide whether ``order`` extends to a representation of ``g``.

    All violations are listed as ``(u, v, kind)`` with ``u`` before ``v``.
    """
    reaches = extremal_reaches(g, order, model)
    pos = positions(order, g.n)
    fwd, back = reaches.forward, reaches.back
    violations = []
    stick = model == STICK
    for i, u in enumerate(order):
        for v in order[i + 1 :]:
            if stick:
                su, sv = g.sides[u], g.sides[v]
                if su == sv:
                    continue
                if g.adjacent(u, v):
                    if su == A:
                        violations.append((u, v, MISORDERED))
                    continue
                if su == A:
                    continue
            elif g.adjacent(u, v):
                continue
            if fwd[u] >= pos[v] and back[v] <= pos[u]:
                violations.append((u, v, SPURIOUS))
    return FeasibilityReport(not violations, reaches, violations)


def prefix_prunable(
    g: Graph, prefix: Sequence[int], model: str = STICK, lookahead: bool = False
) -> bool:
    """True only if no completion of ``prefix`` can be feasible.

    The base rule flags a non-edge ``u`` before ``v`` whose crossing is
    already forced by placed vertices: a neighbour of ``u`` placed after ``v``
    and a neighbour of ``v`` placed at or before ``u``.  In the stick model a
    placed A-vertex before a placed B-neighbour is also fatal.

    With ``lookahead`` a vertex ``u`` that still has an unplaced neighbour is
    treated as reaching past every placed vertex, which is sound because the
    neighbour must land further right.
    """
    _check_model(g, model)
    pos = {}
    for i, v in enumerate(prefix):
        if v in pos or not 0 <= v < g.n:
            raise FeasibilityError(f"bad prefix entry {v}")
        pos[v] = i
    placed = 0
    for v in prefix:
        placed |= 1 << v
    stick = model == STICK
    k = len(prefix)
    hi = {}
    lo = {}
    for v in prefix:
        h = l = pos[v]
        for w in g.neighbors(v):
            q = pos.get(w)
            if q is None:
                if lookahead:
                    h = k
                continue
            h = max(h, q)
            l = min(l, q)
        hi[v], lo[v] = h, l
    for i, u in enumerate(prefix):
        for v in prefix[i + 1 :]:
            if stick:
                su, sv = g.sides[u], g.sides[v]
                if su == sv:
                    continue
                if g.adjacent(u, v):
                    if su == A:
                        return True
                    continue
                if su == A:
                    continue
            elif g.adjacent(u, v):
                continue
            if hi[u] > pos[v] and lo[v] <= pos[u]:
                return True
    return False
