"""Time the compiled order search against the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat N]

Each workload is a full enumeration, so both backends visit the same nodes;
the node counts are printed as a sanity check.
"""
import argparse
import time

from stickkit import _kernel, gadgets
from stickkit.graph import Graph
from stickkit.recognizer import enumerate_representations, recognize


def cube():
    edges = [(u, u ^ (1 << i)) for u in range(8) for i in range(3) if u < u ^ (1 << i)]
    sides = ["A" if bin(u).count("1") % 2 else "B" for u in range(8)]
    return Graph(8, edges, sides)


def workloads():
    clause = gadgets.clause_gadget(include_transmission=False)
    octahedron = Graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v != u + 3])
    return [
        ("cube stick", lambda b: recognize(cube(), "stick", backend=b)),
        ("octahedron mpt", lambda b: recognize(octahedron, "mpt", backend=b)),
        ("handy enumerate", lambda b: enumerate_representations(gadgets.handy_gadget(), "stick", backend=b)),
        ("clause enumerate", lambda b: enumerate_representations(
            clause, "stick", prefix=[gadgets.SENTINEL], backend=b)),
    ]


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [b for b in ("python", "cython") if b in _kernel.BACKENDS]
    if "cython" not in backends:
        print("compiled kernel not built; timing the fallback only")
    print(f"{'workload':<22}{'nodes':>10}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, run in workloads():
        row = {}
        nodes = None
        for b in backends:
            dt, out = best_of(lambda: run(b), args.repeat)
            row[b] = dt
            nodes = out.stats.nodes
        line = f"{name:<22}{nodes:>10}" + "".join(f"{row[b]:>11.3f}s" for b in backends)
        if len(backends) == 2:
            line += f"{row['python'] / row['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
