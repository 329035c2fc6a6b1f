"""Process-parallel recognition by splitting on the next vertex of the order.

Each top-level branch extends the prefix by one vertex and runs the ordinary
search with the full node budget, so a branch never runs out of budget where
the sequential search would have finished.  Branches are ranked exactly as
the kernel tries them; the reported witness comes from the first branch in
that ranking that has one, which is the witness a single worker finds.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .graph import Graph


def branch_order(g: Graph, prefix: Sequence[int]) -> list[int]:
    placed = 0
    for v in prefix:
        placed |= 1 << v
    rest = [v for v in range(g.n) if not placed >> v & 1]
    return sorted(rest, key=lambda v: (-bin(g.nbr[v] & placed).count("1"), v))


def _branch(args):
    from .recognizer import recognize

    g, cls, budget, prefix, backend = args
    return recognize(g, cls, budget, prefix=prefix, backend=backend)


def recognize_parallel(
    g: Graph,
    cls: str,
    budget: Optional[int],
    *,
    workers: int,
    prefix: Sequence = (),
    backend: Optional[str] = None,
):
    from .recognizer import EXHAUSTED, NO, YES, RecognitionOutcome, SearchStats, _prepare, _resolve

    _prepare(g, cls)  # validate before forking
    prefix = _resolve(g, prefix)
    branches = branch_order(g, prefix)
    if len(prefix) == g.n or len(branches) < 2:
        from .recognizer import recognize

        return recognize(g, cls, budget, prefix=prefix, backend=backend)
    jobs = [(g, cls, budget, list(prefix) + [v], backend) for v in branches]
    stats = SearchStats()
    outcomes = [None] * len(jobs)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_branch, job) for job in jobs]
        for i, fut in enumerate(futures):
            outcomes[i] = fut.result()
            out = outcomes[i]
            stats.nodes += out.stats.nodes
            stats.prunes += out.stats.prunes
            stats.seconds = max(stats.seconds, out.stats.seconds)
            if out.verdict == YES:
                for rest in futures[i + 1 :]:
                    rest.cancel()
                return RecognitionOutcome(YES, out.witness, stats)
    if any(out.verdict == EXHAUSTED for out in outcomes):
        return RecognitionOutcome(EXHAUSTED, None, stats)
    return RecognitionOutcome(NO, None, stats)
