"""Exact recognition by search over origin orders.

``recognize`` and ``enumerate_representations`` run the left-to-right order
search in :mod:`stickkit._kernel`.  ``brute_force_oracle`` is a deliberately
separate path: it tries every permutation and searches the reach indices
directly against the geometric segment predicate.
"""
from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import _kernel
from .feasibility import HOOK, STICK, Reaches, check_order
from .geometry import Geometry, realize, segments_meet, verify_geometry
from .graph import A, B, Graph, validate_bipartition

log = logging.getLogger(__name__)

YES = "yes"
NO = "no"
EXHAUSTED = "exhausted"

CLASSES = ("stick", "biphook", "mpt")
UNLIMITED = 1 << 62
ORACLE_LIMITS = {"stick": 7, "biphook": 6, "mpt": 6}


class RecognitionError(ValueError):
    pass


@dataclass
class Witness:
    order: tuple
    reaches: Reaches
    geometry: Geometry


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    seconds: float = 0.0


@dataclass
class RecognitionOutcome:
    verdict: str
    witness: Optional[Witness] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __bool__(self):
        return self.verdict == YES


@dataclass
class EnumerationReport:
    """Feasible orders (or distinct projections) found by the search.

    ``orders`` holds full orders, or tuples of the projected vertex ids in
    left-to-right order when a projection was requested.  ``count`` is the
    number of full feasible orders visited.
    """

    orders: list
    complete: bool
    count: int
    stats: SearchStats
    annotations: dict = field(default_factory=dict)


def model_for(cls: str) -> str:
    if cls not in CLASSES:
        raise RecognitionError(f"unknown class {cls!r}; expected one of {CLASSES}")
    return STICK if cls == "stick" else HOOK


def _prepare(g: Graph, cls: str) -> tuple[str, list[int]]:
    model = model_for(cls)
    if cls == "stick":
        if not g.bipartite:
            raise RecognitionError("stick recognition needs a graph with A/B sides")
        kinds = [_kernel.KIND_A if s == A else _kernel.KIND_B for s in g.sides]
    else:
        if cls == "biphook" and not validate_bipartition(g).is_bipartite:
            raise RecognitionError("biphook recognition needs a bipartite graph")
        kinds = [_kernel.KIND_ANY] * g.n
    return model, kinds


def _run(g, cls, budget, prefix, visit, backend):
    model, kinds = _prepare(g, cls)
    dfs = _kernel.get_dfs(backend)
    budget = UNLIMITED if budget is None else int(budget)
    if budget <= 0:
        raise RecognitionError("budget must be positive")
    t0 = time.perf_counter()
    status, nodes, prunes = dfs(g.n, list(g.nbr), bytes(kinds), model == STICK, list(prefix), budget, visit)
    stats = SearchStats(nodes, prunes, time.perf_counter() - t0)
    return model, status, stats


def _witness(g, order, model) -> Witness:
    report = check_order(g, order, model)
    if not report.feasible:  # the kernel and the checker disagree
        raise AssertionError(f"search returned an infeasible order: {report.violations[:3]}")
    geom = realize(g, order, report.reaches, model)
    return Witness(tuple(order), report.reaches, geom)


def recognize(
    g: Graph,
    cls: str = "stick",
    budget: Optional[int] = None,
    *,
    prefix: Sequence[int] = (),
    workers: int = 1,
    backend: Optional[str] = None,
) -> RecognitionOutcome:
    """Decide membership of ``g`` in the Stick, BipHook or MPT class.

    ``budget`` caps the number of search nodes; running out yields the
    ``exhausted`` verdict, never ``no``.
    """
    if workers > 1:
        from .parallel import recognize_parallel

        return recognize_parallel(g, cls, budget, workers=workers, prefix=prefix, backend=backend)
    found = []

    def visit(order):
        found.append(order)
        return True

    model, status, stats = _run(g, cls, budget, prefix, visit, backend)
    if found:
        return RecognitionOutcome(YES, _witness(g, found[0], model), stats)
    if status == _kernel.EXHAUSTED:
        return RecognitionOutcome(EXHAUSTED, None, stats)
    return RecognitionOutcome(NO, None, stats)


def _resolve(g: Graph, items) -> list[int]:
    return [g.vertex(x) if isinstance(x, str) else int(x) for x in items]


def enumerate_representations(
    g: Graph,
    cls: str = "stick",
    budget: Optional[int] = None,
    project: Optional[Sequence] = None,
    *,
    prefix: Sequence = (),
    annotate=None,
    backend: Optional[str] = None,
) -> EnumerationReport:
    """Collect every feasible order, or every distinct projection of one.

    ``project`` lists vertex ids or names; projections are deduplicated.
    ``annotate(order)`` is evaluated on each feasible order and its distinct
    results are counted in ``annotations``.
    """
    keep = None if project is None else _resolve(g, project)
    keep_set = None if keep is None else set(keep)
    orders = []
    seen = set()
    notes: dict = {}
    count = 0

    def visit(order):
        nonlocal count
        count += 1
        if annotate is not None:
            key = annotate(order)
            notes[key] = notes.get(key, 0) + 1
        if keep_set is None:
            orders.append(tuple(order))
        else:
            proj = tuple(v for v in order if v in keep_set)
            if proj not in seen:
                seen.add(proj)
                orders.append(proj)
        return False

    _, status, stats = _run(g, cls, budget, _resolve(g, prefix), visit, backend)
    return EnumerationReport(orders, status == _kernel.COMPLETE, count, stats, notes)


# -- independent oracle ------------------------------------------------------


def _arm_segments(p, fwd, back):
    """Quarter-unit arms for a vertex at position ``p``; mirrors ``realize``."""
    x = 4 * p
    arms = []
    if fwd is not None:
        arms.append(((x, -x), (4 * fwd + 1, -x)))
    if back is not None:
        arms.append(((x, -x), (x, -4 * back + 1)))
    return arms


def _meets(arms_u, arms_v) -> bool:
    return any(segments_meet(s, t) is not None for s in arms_u for t in arms_v)


def brute_force_oracle(g: Graph, cls: str = "stick", limit: Optional[int] = None) -> RecognitionOutcome:
    """Exhaustive check over all permutations and all discrete reaches.

    For each permutation the reach indices are chosen vertex by vertex and
    every pair is tested with the segment predicate as soon as both ends are
    chosen; abandoning a partial choice that already realizes a wrong pair
    skips only assignments that would fail anyway.
    """
    model = model_for(cls)
    if limit is None:
        limit = ORACLE_LIMITS[cls]
    if g.n > limit:
        raise RecognitionError(f"oracle limited to {limit} vertices, got {g.n}")
    if cls == "stick" and not g.bipartite:
        raise RecognitionError("stick recognition needs a graph with A/B sides")
    if cls == "biphook" and not validate_bipartition(g).is_bipartite:
        raise RecognitionError("biphook recognition needs a bipartite graph")
    t0 = time.perf_counter()
    n = g.n
    tried = 0
    for perm in itertools.permutations(range(n)):
        tried += 1
        pos = [0] * n
        for i, v in enumerate(perm):
            pos[v] = i
        choices = []
        for v in perm:
            p = pos[v]
            fwd_opts = [None]
            back_opts = [None]
            if model == HOOK or g.sides[v] == B:
                fwd_opts = list(range(p, n))
            if model == HOOK or g.sides[v] == A:
                back_opts = list(range(0, p + 1))
            choices.append([(f, b, _arm_segments(p, f, b)) for f in fwd_opts for b in back_opts])
        picked = [None] * n
        if _assign(g, perm, choices, picked, 0):
            fwd = [None] * n
            back = [None] * n
            for i, v in enumerate(perm):
                fwd[v], back[v] = picked[i][0], picked[i][1]
            reaches = Reaches(tuple(fwd), tuple(back))
            geom = realize(g, perm, reaches, model)
            check = verify_geometry(geom, g)
            if not check.match:
                raise AssertionError("oracle assembled a non-matching geometry")
            stats = SearchStats(tried, 0, time.perf_counter() - t0)
            return RecognitionOutcome(YES, Witness(tuple(perm), reaches, geom), stats)
    return RecognitionOutcome(NO, None, SearchStats(tried, 0, time.perf_counter() - t0))


def _assign(g, perm, choices, picked, i) -> bool:
    if i == len(perm):
        return True
    v = perm[i]
    for opt in choices[i]:
        ok = True
        for j in range(i):
            if _meets(picked[j][2], opt[2]) != g.adjacent(perm[j], v):
                ok = False
                break
        if ok:
            picked[i] = opt
            if _assign(g, perm, choices, picked, i + 1):
                return True
    picked[i] = None
    return False
