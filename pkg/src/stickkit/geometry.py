"""Explicit coordinates for Stick and hook representations.

Everything is stored in quarter units (coordinates multiplied by 4) so all
intersection predicates run on plain integers.  The ground line is
``y = -x``; the vertex at position ``i`` has its origin at ``(i, -i)``.
Horizontal arms point right, vertical arms point up.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .feasibility import HOOK, STICK, Reaches, positions
from .graph import B, Graph

Q = 4  # quarter units per unit


class GeometryError(ValueError):
    pass


class TouchingWarning(UserWarning):
    """Two segments meet only at an endpoint; counted as intersecting."""


@dataclass(frozen=True)
class Geometry:
    model: str
    origins: tuple  # (x, y) per vertex, quarter units
    htip: tuple  # x of the horizontal tip or None
    vtip: tuple  # y of the vertical tip or None
    names: tuple = ()

    @property
    def n(self) -> int:
        return len(self.origins)

    def arms(self, v: int) -> list:
        """Segments of ``v`` as ``((x1, y1), (x2, y2))`` with x1<=x2, y1<=y2."""
        x, y = self.origins[v]
        out = []
        if self.htip[v] is not None:
            out.append(((x, y), (self.htip[v], y)))
        if self.vtip[v] is not None:
            out.append(((x, y), (x, self.vtip[v])))
        return out

    def order(self) -> list[int]:
        """Vertices sorted left to right along the ground line."""
        return sorted(range(self.n), key=lambda v: self.origins[v][0])

    def to_json(self) -> dict:
        def f(c):
            return None if c is None else c / Q

        return {
            "model": self.model,
            "names": list(self.names) if self.names else None,
            "origins": [[x / Q, y / Q] for x, y in self.origins],
            "htip": [f(c) for c in self.htip],
            "vtip": [f(c) for c in self.vtip],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _quarter(value) -> Optional[int]:
    if value is None:
        return None
    scaled = value * Q
    if scaled != int(scaled):
        raise GeometryError(f"coordinate {value} is not on the quarter grid")
    return int(scaled)


def geometry_from_json(obj) -> Geometry:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        model = obj["model"]
        origins = tuple((_quarter(x), _quarter(y)) for x, y in obj["origins"])
        htip = tuple(_quarter(c) for c in obj["htip"])
        vtip = tuple(_quarter(c) for c in obj["vtip"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryError(f"malformed geometry JSON: {exc}") from None
    if model not in (STICK, HOOK):
        raise GeometryError(f"unknown model {model!r}")
    if not len(origins) == len(htip) == len(vtip):
        raise GeometryError("origins and tips differ in length")
    names = tuple(obj.get("names") or ())
    return Geometry(model, origins, htip, vtip, names)


def realize(g: Graph, order: Sequence[int], reaches: Reaches, model: str = STICK) -> Geometry:
    """Place origins at (i, -i) and end each arm a quarter past its reach."""
    pos = positions(order, g.n)
    origins = []
    htip: list = []
    vtip: list = []
    for v in range(g.n):
        p = pos[v]
        origins.append((Q * p, -Q * p))
        fwd = reaches.forward[v]
        back = reaches.back[v]
        if fwd is not None and fwd < p or back is not None and back > p:
            raise GeometryError(f"reach of vertex {v} points the wrong way")
        htip.append(None if fwd is None else Q * fwd + 1)
        vtip.append(None if back is None else -Q * back + 1)
    names = tuple(g.label(v) for v in range(g.n))
    return Geometry(model, tuple(origins), tuple(htip), tuple(vtip), names)


def segments_meet(s, t) -> Optional[bool]:
    """Intersection test for axis-parallel segments.

    Returns None when disjoint, True for a crossing through both interiors and
    False when they only touch (an endpoint lies on the other segment, or
    collinear overlap).
    """
    (ax1, ay1), (ax2, ay2) = s
    (bx1, by1), (bx2, by2) = t
    if max(ax1, bx1) > min(ax2, bx2) or max(ay1, by1) > min(ay2, by2):
        return None
    s_h = ay1 == ay2
    t_h = by1 == by2
    if s_h == t_h:
        # parallel and overlapping bounding boxes: collinear contact
        return False
    if not s_h:
        s, t = t, s
        (ax1, ay1), (ax2, ay2) = s
        (bx1, by1), (bx2, by2) = t
    # s horizontal at y=ay1, t vertical at x=bx1
    return ax1 < bx1 < ax2 and by1 < ay1 < by2


@dataclass
class GeometryCheck:
    match: bool
    missing: list = field(default_factory=list)
    spurious: list = field(default_factory=list)
    touchings: list = field(default_factory=list)


def intersection_pairs(geom: Geometry) -> tuple[set, set]:
    """All intersecting vertex pairs, plus the subset that meet only by touching."""
    seen = {}
    for v, o in enumerate(geom.origins):
        if o in seen:
            raise GeometryError(f"vertices {seen[o]} and {v} share an origin")
        seen[o] = v
    arms = [geom.arms(v) for v in range(geom.n)]
    hits = set()
    touch = set()
    for u in range(geom.n):
        for v in range(u + 1, geom.n):
            crossed = False
            touched = False
            for s in arms[u]:
                for t in arms[v]:
                    r = segments_meet(s, t)
                    if r is True:
                        crossed = True
                    elif r is False:
                        touched = True
            if crossed or touched:
                hits.add((u, v))
                if not crossed:
                    touch.add((u, v))
    return hits, touch


def verify_geometry(geom: Geometry, g: Graph) -> GeometryCheck:
    """Compare the intersection graph of ``geom`` with ``g``.

    Segments are closed: touching counts as an intersection and raises a
    :class:`TouchingWarning`.
    """
    if geom.n != g.n:
        raise GeometryError(f"geometry has {geom.n} vertices, graph has {g.n}")
    for x, y in geom.origins:
        if x != -y:
            raise GeometryError(f"origin ({x / Q}, {y / Q}) is off the ground line")
    if geom.model == STICK and g.bipartite:
        for v in range(g.n):
            want_h = g.sides[v] == B
            if (geom.htip[v] is not None) != want_h or (geom.vtip[v] is not None) == want_h:
                raise GeometryError(f"vertex {v} has arms inconsistent with side {g.sides[v]}")
    hits, touch = intersection_pairs(geom)
    missing = sorted(e for e in g.edges if e not in hits)
    spurious = sorted(e for e in hits if e not in g.edges)
    if touch:
        warnings.warn(f"{len(touch)} touching pair(s) counted as intersections", TouchingWarning, stacklevel=2)
    return GeometryCheck(not missing and not spurious, missing, spurious, sorted(touch))


def min_clearance(geom: Geometry, g: Graph) -> Optional[int]:
    """Smallest L-infinity distance (quarter units) between arms of non-adjacent pairs."""
    best = None
    arms = [geom.arms(v) for v in range(geom.n)]
    for u in range(geom.n):
        for v in range(u + 1, geom.n):
            if g.adjacent(u, v):
                continue
            for s in arms[u]:
                for t in arms[v]:
                    d = _box_distance(s, t)
                    if best is None or d < best:
                        best = d
    return best


def _box_distance(s, t) -> int:
    (ax1, ay1), (ax2, ay2) = s
    (bx1, by1), (bx2, by2) = t
    dx = max(0, bx1 - ax2, ax1 - bx2)
    dy = max(0, by1 - ay2, ay1 - by2)
    return max(dx, dy)


def render_svg(geom: Geometry, scale: int = 24, labels: bool = True, margin: int = 2) -> str:
    """SVG drawing: the ground line plus one ``<line>`` per arm."""
    xs = [x for x, _ in geom.origins] + [c for c in geom.htip if c is not None]
    ys = [y for _, y in geom.origins] + [c for c in geom.vtip if c is not None]
    if not xs:
        xs, ys = [0], [0]
    lo_x, hi_x = min(xs) - Q * margin, max(xs) + Q * margin
    lo_y, hi_y = min(ys) - Q * margin, max(ys) + Q * margin
    k = scale / Q

    def px(x):
        return f"{(x - lo_x) * k:g}"

    def py(y):
        # SVG y grows downward
        return f"{(hi_y - y) * k:g}"

    width = (hi_x - lo_x) * k
    height = (hi_y - lo_y) * k
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:g}" height="{height:g}">',
    ]
    # ground line y = -x across the whole box
    g0 = max(lo_x, -hi_y)
    g1 = min(hi_x, -lo_y)
    out.append(
        f'<line class="ground" x1="{px(g0)}" y1="{py(-g0)}" x2="{px(g1)}" y2="{py(-g1)}" '
        'stroke="#999" stroke-dasharray="4 3"/>'
    )
    for v in range(geom.n):
        for (x1, y1), (x2, y2) in geom.arms(v):
            vertical = x1 == x2
            color = "#1f5fbf" if vertical else "#c0392b"
            out.append(
                f'<line class="{"v" if vertical else "h"}" x1="{px(x1)}" y1="{py(y1)}" '
                f'x2="{px(x2)}" y2="{py(y2)}" stroke="{color}" stroke-width="2"/>'
            )
    if labels:
        for v, (x, y) in enumerate(geom.origins):
            name = geom.names[v] if geom.names else str(v)
            out.append(
                f'<text x="{px(x)}" y="{float(py(y)) + 14:g}" font-size="11" '
                f'text-anchor="middle">{escape(name)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
