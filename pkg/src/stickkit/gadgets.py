"""Gadget tables and the small standalone gadget graphs.

The edge tables live in ``data/gadgets.json``.  Vertex names inside a gadget
are local; the reduction builder prefixes them when it assembles the full
graph.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .graph import A, B, Graph, from_named_edges

CLAUSE_PROPER = ("U", "b1", "b2", "b10", "b11", "d1", "d2", "Z", "a1", "a2", "C", "D", "W", "L", "V")
SENTINEL = "b0"


@lru_cache(maxsize=None)
def tables() -> dict:
    text = resources.files("stickkit").joinpath("data/gadgets.json").read_text()
    return json.loads(text)


def handy_table() -> dict:
    return tables()["handy"]


def block_table() -> dict:
    return tables()["clause_block"]


def _graph(edges, b_names, a_names, first=()) -> Graph:
    names = list(first) + [x for x in b_names + a_names if x not in first]
    sides = {x: B for x in b_names} | {x: A for x in a_names}
    return from_named_edges(sorted(edges), sides, names)


def handy_edges(rename=None) -> list[tuple[str, str]]:
    rename = rename or {}
    out = []
    for a, bs in handy_table()["edges"].items():
        for b in bs:
            out.append((rename.get(a, a), rename.get(b, b)))
    return out


def handy_gadget() -> Graph:
    t = handy_table()
    return _graph(handy_edges(), t["B"], t["A"])


def forced_cycle_names(k: int) -> tuple[dict, dict]:
    """Role maps ``p[i]`` (B) and ``h[i]`` (A) for the cycle of length 2k."""
    if k < 3:
        raise ValueError("forced cycle needs k >= 3")
    p = {1: "f1", k - 1: "g2", k: "f2"}
    h = {1: "T", k: "Y"}
    for i in range(2, k - 1):
        p[i] = f"p{i}"
    for i in range(2, k):
        h[i] = f"h{i}"
    return p, h


def forced_cycle(k: int, drop: tuple[str, str] | None = None) -> Graph:
    """Handy gadget closed into a cycle of order segments, plus the p'2 pins.

    ``drop`` removes one edge, given as an (A, B) name pair, for mutation runs.
    """
    p, h = forced_cycle_names(k)
    edges = set(handy_edges())
    for i in range(1, k + 1):
        edges.add((h[i], p[i]))
        edges.add((h[i % k + 1], p[i]))
    edges |= {(h[2], "p'2"), (h[3], "p'2"), ("Q", "p'2"), (h[2], "R"), (h[2], "g1")}
    if drop is not None:
        if drop not in edges:
            raise ValueError(f"no edge {drop}")
        edges.discard(drop)
    t = handy_table()
    bs = list(t["B"]) + [p[i] for i in range(2, k - 1)] + ["p'2"]
    as_ = list(t["A"]) + [h[i] for i in range(2, k)]
    return _graph(edges, bs, as_)


def block_edges(include_transmission: bool = True) -> list[tuple[str, str]]:
    t = block_table()
    keep = set(t["B"]) | set(t["A"])
    if not include_transmission:
        keep -= set(t["transmission_B"]) | set(t["transmission_A"])
    return [(a, b) for a, bs in t["edges"].items() for b in bs if a in keep and b in keep]


def clause_gadget(
    include_transmission: bool = False,
    sentinel: bool = True,
    drop_vertices: tuple[str, ...] = (),
) -> Graph:
    """Clause gadget with its own handy gadget, optionally with transmission.

    With ``sentinel`` a B-vertex ``b0`` is added as vertex 0, adjacent to the
    segments that must reach the variable gadgets on the left (``L`` and ``V``
    alone, or every support when transmission is included).
    """
    t = block_table()
    bs = [x for x in t["B"] if include_transmission or x not in t["transmission_B"]]
    as_ = [x for x in t["A"] if include_transmission or x not in t["transmission_A"]]
    edges = block_edges(include_transmission)
    if sentinel:
        reach = [s for group in t["supports"].values() for s in group] if include_transmission else t["sentinel_clause"]
        edges += [(a, SENTINEL) for a in reach]
        bs = [SENTINEL] + bs
    if drop_vertices:
        gone = set(drop_vertices)
        edges = [e for e in edges if not gone & set(e)]
        bs = [x for x in bs if x not in gone]
        as_ = [x for x in as_ if x not in gone]
    return _graph(edges, bs, as_, first=[SENTINEL] if sentinel else [])


def state_triplet(pos: dict) -> str:
    """States of x, y, z read off the probe pairs of one clause block."""
    t = lambda c: "T" if c else "F"
    return t(pos["b11"] < pos["b10"]) + t(pos["a1"] < pos["C"]) + t(pos["V"] < pos["a1"])


def handy_span_names() -> list[str]:
    t = block_table()
    handy = handy_table()
    rename = t["handy_map"]
    return [rename.get(x, x) for x in handy["B"] + handy["A"]]
