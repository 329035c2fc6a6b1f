"""Command-line driver.

Exit codes: 0 success / yes / verified, 1 no / mismatch / refuted,
2 exhausted, 64 usage error, 65 bad input data, 66 missing input,
73 cannot write output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from . import gadget_lab
from .biphook import BipHookError, build_biphook
from .geometry import GeometryError, TouchingWarning, geometry_from_json, render_svg, verify_geometry
from .graph import GraphError, GraphParseError, graph_from_json, graph_to_json, parse_graph, serialize_graph
from .recognizer import CLASSES, EXHAUSTED, YES, RecognitionError, recognize
from .reduction import (
    AssignmentError,
    DecodeError,
    InstanceError,
    artifact_from_files,
    build_reduction,
    decode_assignment,
    format_assignment,
    format_order,
    normalize_instance,
    parse_1in3,
    parse_assignment,
    parse_order,
    witness_order,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66
EXIT_CANTCREATE = 73


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _workers() -> int:
    raw = os.environ.get("STICKKIT_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise CliError(EXIT_USAGE, f"STICKKIT_WORKERS must be an integer, got {raw!r}") from None
    if n < 1:
        raise CliError(EXIT_USAGE, "STICKKIT_WORKERS must be at least 1")
    return n


def _budget(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return n


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise CliError(EXIT_NOINPUT, f"{path}: no such file") from None
    except OSError as exc:
        raise CliError(EXIT_NOINPUT, f"{path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_CANTCREATE, f"{path}: {exc.strerror}") from None


def _load_graph(path: str, fmt: str):
    text = _read(path)
    if fmt == "json":
        return graph_from_json(text)
    return parse_graph(text)


def _dump_graph(g, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(graph_to_json(g), indent=1) + "\n"
    return serialize_graph(g)


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_DATA, f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _stem(path: str) -> str:
    p = Path(path)
    return str(p.with_suffix("")) if p.suffix else str(p)


# -- subcommands -------------------------------------------------------------------


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph, args.format)
    out = recognize(g, args.cls, args.budget, workers=_workers())
    print(out.verdict)
    print(f"nodes {out.stats.nodes}", file=sys.stderr)
    if out.verdict == YES:
        geom_path = args.output or _stem(args.graph) + ".geom.json"
        _write(geom_path, out.witness.geometry.dumps() + "\n")
        print(f"witness {geom_path}", file=sys.stderr)
        if args.svg:
            _write(args.svg, render_svg(out.witness.geometry))
        return EXIT_OK
    return EXIT_EXHAUSTED if out.verdict == EXHAUSTED else EXIT_NO


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    geom = geometry_from_json(_load_json(args.geometry))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TouchingWarning)
        check = verify_geometry(geom, g)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print("match" if check.match else "mismatch")
    for u, v in check.missing:
        print(f"missing {g.label(u)} {g.label(v)}")
    for u, v in check.spurious:
        print(f"spurious {g.label(u)} {g.label(v)}")
    return EXIT_OK if check.match else EXIT_NO


def _assignment(given: str, n: int):
    text = _read(given) if Path(given).is_file() else given
    return parse_assignment(text, n)


def cmd_reduce_sat(args) -> int:
    inst = parse_1in3(_read(args.instance))
    if not inst.is_normalized():
        if not args.normalize:
            raise CliError(EXIT_DATA, "instance has repeated literals in a clause; rerun with --normalize")
        inst = normalize_instance(inst)
        print(f"normalized to {inst.n} variables, {inst.m} clauses", file=sys.stderr)
    art = build_reduction(inst)
    out = args.output or _stem(args.instance) + ".graph"
    _write(out, _dump_graph(art.graph, args.format))
    registry = args.registry or out + ".registry.json"
    _write(registry, json.dumps(art.sidecar(), indent=1, sort_keys=True) + "\n")
    print(f"graph {out}: {art.graph.n} vertices, {len(art.graph.edges)} edges", file=sys.stderr)
    if args.witness is not None:
        values = _assignment(args.witness, inst.n)
        try:
            order = witness_order(art, values)
        except AssignmentError as exc:
            print(f"rejected: {exc}", file=sys.stderr)
            return EXIT_NO
        order_path = args.order_output or _stem(out) + ".order.txt"
        _write(order_path, format_order(art.graph, order))
        print(f"order {order_path}", file=sys.stderr)
    return EXIT_OK


def cmd_reduce_biphook(args) -> int:
    g = _load_graph(args.graph, args.format)
    art = build_biphook(g, require_connected=not args.allow_disconnected)
    out = args.output or _stem(args.graph) + ".gamma.graph"
    _write(out, _dump_graph(art.gamma, args.format))
    registry = args.registry or out + ".registry.json"
    blocks = {g.label(u): dict(zip("xtyz", ids)) for u, ids in art.registry.items()}
    _write(registry, json.dumps({"blocks": blocks}, indent=1, sort_keys=True) + "\n")
    print(f"gamma {out}: {art.gamma.n} vertices, {len(art.gamma.edges)} edges", file=sys.stderr)
    return EXIT_OK


def cmd_decode(args) -> int:
    g = _load_graph(args.graph, args.format)
    art = artifact_from_files(g, _load_json(args.registry))
    order = parse_order(g, _read(args.order))
    try:
        values = decode_assignment(art, order)
    except DecodeError as exc:
        print(f"cannot decode: {exc}", file=sys.stderr)
        return EXIT_NO
    print(format_assignment(values))
    return EXIT_OK


def cmd_render(args) -> int:
    geom = geometry_from_json(_load_json(args.geometry))
    out = args.output or _stem(args.geometry) + ".svg"
    _write(out, render_svg(geom, labels=not args.no_labels))
    return EXIT_OK


def cmd_gadget_check(args) -> int:
    reports = gadget_lab.run_checks(args.name)
    for rep in reports:
        print(rep.summary())
    summary = {"reports": [r.to_json() for r in reports], "ok": all(r.ok for r in reports)}
    text = json.dumps(summary, sort_keys=True)
    if args.json:
        _write(args.json, text + "\n")
    else:
        print(text)
    if all(r.ok for r in reports):
        return EXIT_OK
    if any(r.status == gadget_lab.REFUTED for r in reports):
        return EXIT_NO
    return EXIT_EXHAUSTED


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stickkit", description="Stick graph recognition and reductions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text", help="graph file format")

    r = sub.add_parser("recognize", help="decide Stick / BipHook / MPT membership")
    r.add_argument("--class", dest="cls", choices=CLASSES, default="stick")
    r.add_argument("--budget", type=_budget, default=None, help="search node budget")
    r.add_argument("-o", "--output", help="witness geometry JSON (default <graph>.geom.json)")
    r.add_argument("--svg", help="also draw the witness")
    graph_format(r)
    r.add_argument("graph")
    r.set_defaults(func=cmd_recognize)

    v = sub.add_parser("verify", help="check a geometry against a graph")
    graph_format(v)
    v.add_argument("graph")
    v.add_argument("geometry")
    v.set_defaults(func=cmd_verify)

    red = sub.add_parser("reduce", help="build reduction artifacts")
    rsub = red.add_subparsers(dest="reduction", required=True, parser_class=_Parser)
    s = rsub.add_parser("sat2stick", help="1-in-3 instance to Stick graph")
    s.add_argument("instance")
    s.add_argument("-o", "--output")
    s.add_argument("--registry", help="sidecar path (default <output>.registry.json)")
    s.add_argument("--witness", help="assignment, inline (\"T F F\") or a file")
    s.add_argument("-o-order", "--order-output", dest="order_output", help="witness order file")
    s.add_argument("--normalize", action="store_true", help="normalize clauses with repeated literals")
    graph_format(s)
    s.set_defaults(func=cmd_reduce_sat)
    b = rsub.add_parser("stick2biphook", help="Stick graph to its 4-cycle blow-up")
    b.add_argument("graph")
    b.add_argument("-o", "--output")
    b.add_argument("--registry")
    b.add_argument("--allow-disconnected", action="store_true")
    graph_format(b)
    b.set_defaults(func=cmd_reduce_biphook)

    d = sub.add_parser("decode", help="read an assignment off a feasible order")
    graph_format(d)
    d.add_argument("graph")
    d.add_argument("registry")
    d.add_argument("order")
    d.set_defaults(func=cmd_decode)

    rd = sub.add_parser("render", help="geometry JSON to SVG")
    rd.add_argument("geometry")
    rd.add_argument("-o", "--output")
    rd.add_argument("--no-labels", action="store_true")
    rd.set_defaults(func=cmd_render)

    gc = sub.add_parser("gadget-check", help="exhaustive gadget checks")
    gc.add_argument("name", choices=gadget_lab.CHECKS + ("all",))
    gc.add_argument("--json", help="write the JSON summary here instead of stdout")
    gc.set_defaults(func=cmd_gadget_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"stickkit: {exc}", file=sys.stderr)
        return exc.code
    except (GraphParseError, GraphError, GeometryError, InstanceError, AssignmentError,
            DecodeError, BipHookError, RecognitionError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"stickkit: {msg}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
