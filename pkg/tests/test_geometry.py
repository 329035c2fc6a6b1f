import xml.etree.ElementTree as ET

import pytest

from stickkit.biphook import build_biphook, stick_to_hooks
from stickkit.feasibility import HOOK, Reaches, check_order
from stickkit.geometry import (
    Geometry,
    GeometryError,
    TouchingWarning,
    geometry_from_json,
    min_clearance,
    realize,
    render_svg,
    segments_meet,
    verify_geometry,
)
from stickkit.graph import A, B, Graph
from stickkit.recognizer import recognize
from corpus import cycle

K2 = Graph(2, [(0, 1)], [B, A], ["b", "a"])
SVG_NS = "{http://www.w3.org/2000/svg}"


def k2_geom():
    return realize(K2, [0, 1], Reaches((1, None), (None, 0)))


def test_realize_k2_coordinates():
    g = k2_geom()
    assert g.to_json()["origins"] == [[0, 0], [1, -1]]
    assert g.to_json()["htip"] == [1.25, None]
    assert g.to_json()["vtip"] == [None, 0.25]
    assert verify_geometry(g, K2).match


def test_isolated_vertex_has_short_arms():
    g = Graph(1, [], [B])
    geom = realize(g, [0], Reaches((0,), (None,)))
    assert geom.htip == (1,)


def test_c4_four_crossings():
    c4 = cycle(2)
    order = [0, 2, 3, 1]
    rep = check_order(c4, order)
    geom = realize(c4, order, rep.reaches)
    chk = verify_geometry(geom, c4)
    assert chk.match and not chk.touchings


def test_shortened_arm_is_missing_edge():
    g = k2_geom()
    bad = Geometry(g.model, g.origins, g.htip, (None, -3), g.names)
    chk = verify_geometry(bad, K2)
    assert not chk.match and chk.missing == [(0, 1)]


def test_touching_counts_and_warns():
    g = k2_geom()
    touch = Geometry(g.model, g.origins, g.htip, (None, 0), g.names)
    with pytest.warns(TouchingWarning):
        chk = verify_geometry(touch, K2)
    assert chk.match and chk.touchings == [(0, 1)]


def test_coincident_origins_rejected():
    g = k2_geom()
    bad = Geometry(g.model, (g.origins[0], g.origins[0]), g.htip, g.vtip, g.names)
    with pytest.raises(GeometryError):
        verify_geometry(bad, K2)


def test_off_ground_line_rejected():
    g = k2_geom()
    bad = Geometry(g.model, ((0, 0), (4, -3)), g.htip, g.vtip, g.names)
    with pytest.raises(GeometryError):
        verify_geometry(bad, K2)


def test_segments_meet_cases():
    h = ((0, 0), (8, 0))
    assert segments_meet(h, ((4, -4), (4, 4))) is True
    assert segments_meet(h, ((4, 0), (4, 4))) is False  # endpoint touch
    assert segments_meet(h, ((9, -4), (9, 4))) is None


def test_json_round_trip_and_quarter_grid():
    g = k2_geom()
    assert geometry_from_json(g.dumps()) == g
    obj = g.to_json()
    obj["htip"] = [1.1, None]
    with pytest.raises(GeometryError):
        geometry_from_json(obj)
    with pytest.raises(GeometryError):
        geometry_from_json({"model": "blob", "origins": [], "htip": [], "vtip": []})


def test_hook_layout_for_one_edge():
    art = build_biphook(K2)
    hooks = stick_to_hooks(K2, k2_geom(), art)
    assert verify_geometry(hooks, art.gamma).match
    assert hooks.model == HOOK


def _lines(svg):
    root = ET.fromstring(svg)
    return root.findall(f".//{SVG_NS}line")


def test_svg_k2_three_lines():
    svg = render_svg(k2_geom())
    assert len(_lines(svg)) == 3


def test_svg_c6_seven_lines():
    out = recognize(cycle(3), "stick")
    assert len(_lines(render_svg(out.witness.geometry))) == 7


def test_svg_hook_block_nine_lines():
    single = Graph(1, [], [B], ["u"])
    art = build_biphook(single)
    hooks = stick_to_hooks(single, realize(single, [0], Reaches((0,), (None,))), art)
    assert len(_lines(render_svg(hooks))) == 9


def test_svg_deterministic():
    g = recognize(cycle(4), "stick").witness.geometry
    assert render_svg(g) == render_svg(g)


def test_min_clearance_at_least_quarter():
    out = recognize(cycle(3), "stick")
    assert min_clearance(out.witness.geometry, cycle(3)) >= 1
