"""Graph model shared by the recognizers and the reductions.

Vertices are dense integer ids ``0..n-1``.  Human readable labels live in a
separate name table; side labels (``"A"`` for vertical, ``"B"`` for
horizontal segments) are present only for bipartite graphs.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

A = "A"
B = "B"


class GraphParseError(ValueError):
    """Raised on malformed graph text; the message names the offending line."""


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph, immutable after construction.

    ``sides`` is ``None`` for a plain graph.  When given, every edge must join
    an A-vertex to a B-vertex and the object is a bipartite graph in the
    sense used throughout the package.
    """

    __slots__ = ("n", "sides", "names", "edges", "nbr", "_name_index")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        sides: Optional[Sequence[str]] = None,
        names: Optional[Sequence[Optional[str]]] = None,
    ):
        if n < 0:
            raise GraphError("negative vertex count")
        self.n = n
        if sides is not None:
            sides = tuple(sides)
            if len(sides) != n or any(s not in (A, B) for s in sides):
                raise GraphError("sides must give A or B for every vertex")
        self.sides = sides
        if names is None:
            names = (None,) * n
        names = tuple(names)
        if len(names) != n:
            raise GraphError("name table length differs from n")
        self.names = names
        nbr = [0] * n
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in es:
                raise GraphError(f"duplicate edge {e}")
            if sides is not None and sides[u] == sides[v]:
                raise GraphError(f"same-side edge {e}")
            es.add(e)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        self.edges = frozenset(es)
        self.nbr = tuple(nbr)
        self._name_index = {s: i for i, s in enumerate(names) if s is not None}

    @property
    def bipartite(self) -> bool:
        return self.sides is not None

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.nbr[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        m = self.nbr[u]
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def degree(self, u: int) -> int:
        return bin(self.nbr[u]).count("1")

    def vertex(self, name: str) -> int:
        """Id of the vertex carrying ``name``."""
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"no vertex named {name!r}") from None

    def label(self, v: int) -> str:
        s = self.names[v]
        return s if s is not None else str(v)

    def side(self, v: int) -> str:
        if self.sides is None:
            raise GraphError("plain graph has no side labels")
        return self.sides[v]

    def side_mask(self, side: str) -> int:
        if self.sides is None:
            raise GraphError("plain graph has no side labels")
        m = 0
        for v, s in enumerate(self.sides):
            if s == side:
                m |= 1 << v
        return m

    def as_plain(self) -> "Graph":
        return Graph(self.n, self.edges, None, self.names)

    def with_sides(self, sides: Sequence[str]) -> "Graph":
        return Graph(self.n, self.edges, sides, self.names)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``vertices[i]`` becomes id ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        sides = None if self.sides is None else [self.sides[v] for v in vertices]
        return Graph(len(vertices), es, sides, [self.names[v] for v in vertices])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            m = frontier
            while m:
                low = m & -m
                reach |= self.nbr[low.bit_length() - 1]
                m ^= low
            frontier = reach & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.sides, self.names) == (
            other.n,
            other.edges,
            other.sides,
            other.names,
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.sides))

    def __repr__(self):
        kind = "bipartite" if self.bipartite else "plain"
        return f"Graph(n={self.n}, m={len(self.edges)}, {kind})"


def bipartite_graph(edges, sides, names=None) -> Graph:
    return Graph(len(sides), edges, sides, names)


def from_named_edges(
    edges: Iterable[tuple[str, str]], sides: dict[str, str] | None = None, order: Sequence[str] | None = None
) -> Graph:
    """Build a graph from name pairs.

    Vertex ids follow ``order`` when given, otherwise first appearance.
    """
    edges = list(edges)
    names: list[str] = list(order) if order is not None else []
    seen = set(names)
    for e in edges:
        for s in e:
            if s not in seen:
                if order is not None:
                    raise GraphError(f"edge mentions unknown vertex {s!r}")
                seen.add(s)
                names.append(s)
    idx = {s: i for i, s in enumerate(names)}
    side_list = None if sides is None else [sides[s] for s in names]
    return Graph(len(names), [(idx[u], idx[v]) for u, v in edges], side_list, names)


# -- serialization ---------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the line-based graph format.

    ``graph <n> bipartite|plain`` header, then ``name``, ``side`` and
    ``edge`` lines in any order.  ``#`` starts a comment.
    """
    header = None
    names: list[Optional[str]] = []
    sides: list[Optional[str]] = []
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    n = 0
    bip = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]

        def fail(msg):
            raise GraphParseError(f"line {lineno}: {msg}: {raw.strip()!r}")

        if header is None:
            if kw != "graph" or len(parts) != 3 or parts[2] not in ("bipartite", "plain"):
                fail("malformed header")
            try:
                n = int(parts[1])
            except ValueError:
                fail("malformed header")
            if n < 0:
                fail("malformed header")
            header = parts
            bip = parts[2] == "bipartite"
            names = [None] * n
            sides = [None] * n
            continue

        def vid(tok):
            try:
                v = int(tok)
            except ValueError:
                fail(f"unknown vertex {tok!r}")
            if not 0 <= v < n:
                fail(f"unknown vertex {tok!r}")
            return v

        if kw == "name":
            if len(parts) < 3:
                fail("malformed name line")
            v = vid(parts[1])
            names[v] = line.split(None, 2)[2]
        elif kw == "side":
            if len(parts) != 3 or parts[2] not in (A, B):
                fail("malformed side line")
            if not bip:
                fail("side line in plain graph")
            sides[vid(parts[1])] = parts[2]
        elif kw == "edge":
            if len(parts) != 3:
                fail("malformed edge line")
            u, v = vid(parts[1]), vid(parts[2])
            if u == v:
                fail("self-loop")
            e = (min(u, v), max(u, v))
            if e in seen_edges:
                fail("duplicate edge")
            if bip and sides[u] is not None and sides[u] == sides[v]:
                fail("same-side edge")
            seen_edges.add(e)
            edges.append((u, v))
        else:
            fail(f"unknown keyword {kw!r}")

    if header is None:
        raise GraphParseError("line 1: malformed header: missing 'graph' line")
    if bip:
        missing = [v for v in range(n) if sides[v] is None]
        if missing:
            raise GraphParseError(f"missing side for vertex {missing[0]}")
        # side lines may follow edge lines, so re-check once everything is known
        for u, v in edges:
            if sides[u] == sides[v]:
                raise GraphParseError(f"same-side edge {u} {v}")
    return Graph(n, edges, sides if bip else None, names)


def _quote_free(name: str) -> str:
    if "\n" in name or "#" in name:
        raise GraphError(f"name {name!r} cannot be serialized")
    return name


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {'bipartite' if g.bipartite else 'plain'}"]
    for v, s in enumerate(g.names):
        if s is not None:
            lines.append(f"name {v} {_quote_free(s)}")
    if g.bipartite:
        lines.extend(f"side {v} {s}" for v, s in enumerate(g.sides))
    lines.extend(f"edge {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {
        "n": g.n,
        "sides": list(g.sides) if g.sides is not None else None,
        "names": list(g.names),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_json(obj) -> Graph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = obj["n"]
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"malformed graph JSON: {exc}") from None
    try:
        return Graph(n, edges, obj.get("sides"), obj.get("names"))
    except GraphError as exc:
        raise GraphParseError(str(exc)) from None


# -- bipartition -----------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    """Result of :func:`validate_bipartition`.

    Exactly one of ``sides`` (a 2-coloring) and ``odd_cycle`` is set.
    """

    sides: Optional[tuple[str, ...]]
    odd_cycle: Optional[tuple[int, ...]]

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None

    def classes(self) -> tuple[frozenset, frozenset]:
        if self.sides is None:
            raise GraphError("graph is not bipartite")
        a = frozenset(v for v, s in enumerate(self.sides) if s == A)
        b = frozenset(v for v, s in enumerate(self.sides) if s == B)
        return a, b


def validate_bipartition(g: Graph) -> Bipartition:
    """2-color ``g`` by BFS or return an odd cycle.

    Components are processed by increasing lowest id and the lowest vertex of
    each component gets side A.
    """
    color = [None] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] is not None:
            continue
        color[root] = A
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if color[v] is None:
                    color[v] = B if color[u] == A else A
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return Bipartition(None, _odd_cycle(u, v, parent, depth))
    return Bipartition(tuple(color), None)


def _odd_cycle(u, v, parent, depth):
    # u and v are same-colored neighbours in one BFS tree; climb to the LCA
    left, right = [u], [v]
    while depth[u] > depth[v]:
        u = parent[u]
        left.append(u)
    while depth[v] > depth[u]:
        v = parent[v]
        right.append(v)
    while u != v:
        u = parent[u]
        v = parent[v]
        left.append(u)
        right.append(v)
    right.pop()
    return tuple(left + right[::-1])
