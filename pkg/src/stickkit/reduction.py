"""Reduction from Monotone 1-in-3SAT to Stick graph recognition.

The builder assembles the full graph from four kinds of pieces:

* the order gadget ``O.*`` (a handy gadget) and the order segments ``h<d>``;
* one variable gadget ``V<t>.*`` per variable;
* one clause block ``K<p>.*`` per clause (clause gadget, its handy gadget and
  the three transmission gadgets);
* incidental edges between gadgets, read off a template layout.

Explicit edges come from the gadget tables and the connection rules below.
Incidental edges are the crossings of the template geometry between segment
pairs that no explicit rule covers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import gadgets
from .feasibility import STICK, check_order, extremal_reaches
from .graph import A, B, Graph

ALLOWED_TRIPLETS = ("TFF", "FTF", "FFT")
CASE_FOR_TRIPLET = {"TFF": "1", "FTF": "2", "FFT": "4"}
ROLES = ("x", "y", "z")


class InstanceError(ValueError):
    pass


class AssignmentError(ValueError):
    pass


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class OneInThreeInstance:
    n: int
    clauses: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(1, self.n + 1)))
        if len(self.labels) != self.n:
            raise InstanceError("one label per variable expected")
        for c in self.clauses:
            if len(c) != 3:
                raise InstanceError(f"clause {c} does not have three literals")
            for i in c:
                if not 1 <= i <= self.n:
                    raise InstanceError(f"variable index {i} out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def is_normalized(self) -> bool:
        return all(c[0] < c[1] < c[2] for c in self.clauses)

    def satisfied_by(self, values: Sequence[bool]) -> list[int]:
        """Indices (1-based) of clauses without exactly one true literal."""
        return [p for p, c in enumerate(self.clauses, 1) if sum(values[i - 1] for i in c) != 1]

    def to_json(self) -> dict:
        return {"n": self.n, "clauses": [list(c) for c in self.clauses], "labels": list(self.labels)}

    @staticmethod
    def from_json(obj) -> "OneInThreeInstance":
        return OneInThreeInstance(int(obj["n"]), tuple(tuple(c) for c in obj["clauses"]), tuple(obj.get("labels", ())))


def parse_1in3(text: str) -> OneInThreeInstance:
    """Parse ``p m1in3 <n> <m>`` followed by zero-terminated clauses."""
    n = m = None
    clauses = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None or len(parts) != 4 or parts[1] != "m1in3":
                raise InstanceError(f"line {lineno}: malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise InstanceError(f"line {lineno}: malformed header {line!r}") from None
            if n < 1 or m < 0:
                raise InstanceError(f"line {lineno}: bad sizes in header")
            continue
        if n is None:
            raise InstanceError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise InstanceError(f"line {lineno}: not an integer: {tok!r}") from None
            if lit == 0:
                if len(current) != 3:
                    raise InstanceError(f"line {lineno}: clause has {len(current)} literals, expected 3")
                clauses.append(tuple(current))
                current = []
            elif lit < 0 or lit > n:
                raise InstanceError(f"line {lineno}: variable index {lit} outside 1..{n}")
            else:
                current.append(lit)
    if n is None:
        raise InstanceError("missing header")
    if current:
        raise InstanceError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise InstanceError(f"header announces {m} clauses, found {len(clauses)}")
    return OneInThreeInstance(n, tuple(clauses))


def format_1in3(inst: OneInThreeInstance) -> str:
    lines = [f"p m1in3 {inst.n} {inst.m}"]
    lines += [f"{i} {j} {k} 0" for i, j, k in inst.clauses]
    return "\n".join(lines) + "\n"


def normalize_instance(inst: OneInThreeInstance) -> OneInThreeInstance:
    """Remove repeated literals, then sort every clause.

    ``(x,x,x)`` becomes ``(x,x,a),(x,x,b),(x,a,b)``; a clause ``(x,x,y)``
    becomes ``(x,y,u),(x,y,w),(y,u,w)``.  Fresh variables are appended after
    the existing ones and named after the original clause number; the two
    expansions coming from one tripled clause share ``u`` and ``w``.
    """
    labels = list(inst.labels)
    out: list[tuple[int, int, int]] = []

    def fresh(name):
        labels.append(name)
        return len(labels)

    for c_no, clause in enumerate(inst.clauses, 1):
        distinct = set(clause)
        if len(distinct) == 3:
            out.append(tuple(sorted(clause)))
            continue
        if len(distinct) == 1:
            x = clause[0]
            a, b = fresh(f"a@{c_no}"), fresh(f"b@{c_no}")
            doubled = [(x, a), (x, b)]
            tail = [(x, a, b)]
        else:
            x = next(v for v in distinct if clause.count(v) == 2)
            y = next(v for v in distinct if v != x)
            doubled = [(x, y)]
            tail = []
        u, w = fresh(f"u@{c_no}"), fresh(f"w@{c_no}")
        for x, y in doubled:
            out += [(x, y, u), (x, y, w), (y, u, w)]
        out += tail
    out = [tuple(sorted(c)) for c in out]
    return OneInThreeInstance(len(labels), tuple(out), tuple(labels))


def parse_assignment(text: str, n: int) -> tuple[bool, ...]:
    toks = text.replace(",", " ").split()
    table = {"T": True, "F": False, "1": True, "0": False, "TRUE": True, "FALSE": False}
    try:
        vals = tuple(table[t.upper()] for t in toks)
    except KeyError as exc:
        raise AssignmentError(f"unknown truth value {exc.args[0]!r}") from None
    if len(vals) != n:
        raise AssignmentError(f"assignment has {len(vals)} values, instance has {n} variables")
    return vals


def format_assignment(values: Sequence[bool]) -> str:
    return " ".join("T" if v else "F" for v in values)


# -- naming ----------------------------------------------------------------

ORDER_GADGET = ("f1", "g1", "R", "e1", "g2", "Q", "f2", "e2", "N", "P", "Y", "T")


def _o(x):
    return f"O.{x}"


def _h(d):
    return f"h{d}"


def _v(t, x):
    return f"V{t}.{x}"


def _copy(t, s, p):
    return f"V{t}.u{s}*K{p}"


def _k(p, x):
    return f"K{p}.{x}"


@dataclass
class ReductionArtifact:
    instance: OneInThreeInstance
    graph: Graph
    registry: dict
    aliases: dict
    probes: list
    counts: dict
    occurrences: dict = field(default_factory=dict)

    def vid(self, name: str) -> int:
        name = self.aliases.get(name, name)
        return self.registry[name]

    def sidecar(self) -> dict:
        return {
            "instance": self.instance.to_json(),
            "registry": self.registry,
            "aliases": self.aliases,
            "probes": [[list(p) for p in triple] for triple in self.probes],
            "counts": self.counts,
        }


def _occurrences(inst) -> dict:
    occ = {t: [] for t in range(1, inst.n + 1)}
    for p, c in enumerate(inst.clauses, 1):
        for t in c:
            occ[t].append(p)
    return occ


def _support_role() -> dict:
    return {s: role for role, group in gadgets.block_table()["supports"].items() for s in group}


def _vertex_sides(inst, occ) -> dict:
    sides = {}
    handy = gadgets.handy_table()
    for x in handy["B"]:
        sides[_o(x)] = B
    for x in handy["A"]:
        sides[_o(x)] = A
    k = inst.n + inst.m + 3
    for d in range(2, k):
        sides[_h(d)] = A
    for t in range(1, inst.n + 1):
        for x in ("w", "v", "u0", "u1"):
            sides[_v(t, x)] = B
        for x in ("n0", "n1"):
            sides[_v(t, x)] = A
        for p in occ[t]:
            for s in "01":
                sides[_copy(t, s, p)] = B
    block = gadgets.block_table()
    for p in range(1, inst.m + 1):
        for x in block["B"]:
            sides[_k(p, x)] = B
        for x in block["A"]:
            sides[_k(p, x)] = A
    return sides


def _variable_layout(t, occ, value: bool) -> list[str]:
    first, second = ("1", "0") if value else ("0", "1")
    out = [_v(t, "w"), _v(t, "v")]
    for s in (first, second):
        out.append(_v(t, f"u{s}"))
        out += [_copy(t, s, p) for p in occ[t]]
        out.append(_v(t, f"n{s}"))
    return out


def _layout(inst, occ, values, cases) -> list[str]:
    n, m = inst.n, inst.m
    block = gadgets.block_table()
    out = [_o("f1"), _o("g1"), _o("R"), _o("e1")]
    for t in range(1, n + 1):
        out += _variable_layout(t, occ, values[t - 1])
        out.append(_h(t + 1))
    for p in range(1, m + 1):
        out += [_k(p, x) for x in block["cases"][cases[p - 1]]["order"]]
        out.append(_h(n + 1 + p))
    out += [_o("g2"), _h(n + m + 2)]
    out += [_o(x) for x in ("Q", "f2", "e2", "N", "P", "Y", "T")]
    return out


def _variable_b(t, occ) -> list[str]:
    out = [_v(t, "w"), _v(t, "v"), _v(t, "u0"), _v(t, "u1")]
    for p in occ[t]:
        out += [_copy(t, "0", p), _copy(t, "1", p)]
    return out


def _explicit_edges(inst, occ) -> dict[str, set]:
    """Edges fixed by gadget tables and connection rules, grouped by category."""
    n, m = inst.n, inst.m
    cat: dict[str, set] = {k: set() for k in (
        "order_gadget", "order_segments", "variable", "clause_block", "support_copy", "clause_chain")}
    cat["order_gadget"] = {(_o(a), _o(b)) for a, b in gadgets.handy_edges()}
    seg = cat["order_segments"]
    # the cycle of order segments: h_d joins p_{d-1} and p_d
    seg |= {(_h(2), _o("f1")), (_h(2), _o("g1")), (_h(2), _o("R"))}
    for t in range(1, n + 1):
        for b in _variable_b(t, occ):
            seg.add((_h(t + 1), b))
        second = _h(t + 2)
        if t < n:
            seg |= {(second, b) for b in _variable_b(t, occ)}
        else:
            seg |= {(second, _v(t, "w")), (second, _v(t, "v"))}
            seg |= {(second, _copy(t, s, p)) for p in occ[t] if p > 1 for s in "01"}
        seg.add((_o("Q"), _v(t, "w")))
    for p in range(1, m + 1):
        d = n + 1 + p
        for q in (p, p - 1):
            if q >= 1:
                seg |= {(_h(d), _k(q, "b10")), (_h(d), _k(q, "b11"))}
    last = n + m + 2
    seg |= {(_h(last), _o("g2"))}
    if m:
        seg |= {(_h(last), _k(m, "b10")), (_h(last), _k(m, "b11"))}
    else:
        seg |= {(_h(last), _v(n, "v"))}
    var = cat["variable"]
    for t in range(1, n + 1):
        for s in "01":
            var.add((_v(t, f"n{s}"), _v(t, f"u{s}")))
            var |= {(_v(t, f"n{s}"), _copy(t, s, p)) for p in occ[t]}
    block = gadgets.block_table()
    local = gadgets.block_edges(True)
    supports = [s for g in block["supports"].values() for s in g]
    for p, clause in enumerate(inst.clauses, 1):
        cat["clause_block"] |= {(_k(p, a), _k(p, b)) for a, b in local}
        var_of = dict(zip(ROLES, clause))
        for sname, rule in block["copy_edges"].items():
            a = _k(p, sname)
            for role, groups in rule.items():
                if role == "long":
                    continue
                for s in groups:
                    cat["support_copy"].add((a, _copy(var_of[role], s, p)))
            for role in rule["long"]:
                t = var_of[role]
                for q in occ[t]:
                    if q > p:
                        cat["support_copy"] |= {(a, _copy(t, s, q)) for s in "01"}
        if p > 1:
            for sname in supports:
                for b in ("b10", "b11"):
                    cat["clause_chain"].add((_k(p, sname), _k(p - 1, b)))
    return cat


def _unit(name: str) -> str:
    if name[0] == "h":
        return "h"
    return name.split(".", 1)[0]


def _is_explicit_pair(a: str, b: str, inst, support_role) -> bool:
    """True when the connection rules decide this A/B pair themselves."""
    ua, ub = _unit(a), _unit(b)
    if ua == ub or "h" in (ua, ub) or "O" in (ua, ub):
        return True
    if ua.startswith("K") and ub.startswith("V"):
        p, t = int(ua[1:]), int(ub[1:])
        local = a.split(".", 1)[1]
        return local in support_role and t in inst.clauses[p - 1] and "*K" in b
    if ua.startswith("K") and ub.startswith("K"):
        p, q = int(ua[1:]), int(ub[1:])
        return q == p - 1 and b.split(".", 1)[1] in ("b10", "b11")
    return False


def _template_cases(inst) -> list[str]:
    return ["1"] * inst.m


def build_reduction(inst: OneInThreeInstance) -> ReductionArtifact:
    """Build the Stick instance for a normalized 1-in-3 instance."""
    if not inst.is_normalized():
        raise InstanceError("instance must be normalized first (distinct, sorted literals)")
    occ = _occurrences(inst)
    sides = _vertex_sides(inst, occ)
    cat = _explicit_edges(inst, occ)
    explicit = set().union(*cat.values())

    # template layout: every gadget in its slot; the shape itself does not
    # influence which incidental pairs cross
    order_names = _layout(inst, occ, [False] * inst.n, _template_cases(inst))
    assert sorted(order_names) == sorted(sides)
    names = order_names
    idx = {x: i for i, x in enumerate(names)}
    side_list = [sides[x] for x in names]
    g_exp = Graph(len(names), [(idx[a], idx[b]) for a, b in explicit], side_list, names)
    reach = extremal_reaches(g_exp, list(range(len(names))), STICK)
    support_role = _support_role()
    incidental = set()
    b_ids = [i for i, x in enumerate(names) if side_list[i] == B]
    a_ids = [i for i, x in enumerate(names) if side_list[i] == A]
    for u in b_ids:
        hi = reach.forward[u]
        for v in a_ids:
            if u < v <= hi and reach.back[v] <= u:
                a, b = names[v], names[u]
                if not _is_explicit_pair(a, b, inst, support_role):
                    incidental.add((a, b))
    cat["incidental"] = incidental
    all_edges = explicit | incidental

    # final vertex numbering: registry order, deterministic
    final_names = sorted(names, key=_name_key)
    fidx = {x: i for i, x in enumerate(final_names)}
    graph = Graph(
        len(final_names),
        sorted((fidx[a], fidx[b]) for a, b in all_edges),
        [sides[x] for x in final_names],
        final_names,
    )
    registry = {x: fidx[x] for x in final_names}
    aliases = {}
    for p in range(1, inst.m + 1):
        aliases[_k(p, "Mz1")] = _k(p, "V")
        aliases[_k(p, "e1")] = _k(p, "H")
        aliases[_k(p, "N")] = _k(p, "S")
    probes = [((_k(p, "b11"), _k(p, "b10")), (_k(p, "a1"), _k(p, "C")), (_k(p, "V"), _k(p, "a1")))
              for p in range(1, inst.m + 1)]
    counts = {"vertices": graph.n, "edges": len(graph.edges)}
    counts.update({f"edges.{k}": len(v) for k, v in sorted(cat.items())})
    art = ReductionArtifact(inst, graph, registry, aliases, probes, counts, occ)
    return art


def _name_key(name: str):
    unit = _unit(name)
    if unit == "h":
        return (1, int(name[1:]), "")
    if unit == "O":
        return (0, ORDER_GADGET.index(name[2:]), "")
    kind = 2 if unit[0] == "V" else 3
    return (kind, int(unit[1:]), name)


def expected_counts(inst: OneInThreeInstance) -> dict:
    """Closed-form sizes of the built graph, computed without building it."""
    n, m = inst.n, inst.m
    occ = _occurrences(inst)
    block = gadgets.block_table()
    block_v = len(block["B"]) + len(block["A"])
    block_e = sum(len(v) for v in block["edges"].values())
    handy_e = sum(len(v) for v in gadgets.handy_table()["edges"].values())
    r = {t: len(occ[t]) for t in occ}
    vb = {t: 4 + 2 * r[t] for t in occ}                     # B-segments of a variable gadget
    seg = 3 + sum(vb.values()) + sum(vb[t] for t in range(1, n))
    seg += 2 + 2 * sum(1 for p in occ[n] if p > 1)
    seg += n                                               # Q meets every w
    seg += (2 + 4 * (m - 1) + 3) if m else 2
    support_var = {}
    for role, group in block["supports"].items():
        for s in group:
            support_var[s] = role
    sc = 0
    for p, clause in enumerate(inst.clauses, 1):
        var_of = dict(zip(ROLES, clause))
        for s, rule in block["copy_edges"].items():
            sc += sum(len(g) for role, g in rule.items() if role != "long")
            sc += sum(2 * sum(1 for q in occ[var_of[role]] if q > p) for role in rule["long"])
    # incidental crossings, counted from the layout rules
    inc = 0
    for p, clause in enumerate(inst.clauses, 1):
        var_of = dict(zip(ROLES, clause))
        sup_vars = [var_of[support_var[s]] for s in support_var]
        inc += sum(1 for h in range(1, n + 1) for sv in sup_vars if sv < h)     # w segments
        for q in range(p + 1, m + 1):
            later = inst.clauses[q - 1]
            for h in later:
                if h in clause:
                    continue
                inc += 2 * sum(1 for sv in sup_vars if sv < h)                     # long copies
        if p == 1:
            inc += sum(1 for sv in sup_vars if sv < n)                            # last v segment
    return {
        "vertices": 12 + (n + m + 1) + sum(6 + 2 * r[t] for t in occ) + m * block_v,
        "vertices.closed_form": 13 + 7 * n + (7 + block_v) * m,
        "edges.order_gadget": handy_e,
        "edges.order_segments": seg,
        "edges.variable": 2 * n + 6 * m,
        "edges.clause_block": block_e * m,
        "edges.support_copy": sc,
        "edges.clause_chain": 2 * len(support_var) * max(m - 1, 0),
        "edges.incidental": inc,
    }


# -- witness and decoding ----------------------------------------------------


def clause_triplets(inst: OneInThreeInstance, values: Sequence[bool]) -> list[str]:
    return ["".join("T" if values[t - 1] else "F" for t in c) for c in inst.clauses]


def witness_order(art: ReductionArtifact, values: Sequence[bool], check: bool = True) -> list[int]:
    """Standard-layout vertex order for a 1-in-3 satisfying assignment."""
    inst = art.instance
    if len(values) != inst.n:
        raise AssignmentError(f"expected {inst.n} values, got {len(values)}")
    bad = inst.satisfied_by(values)
    if bad:
        p = bad[0]
        raise AssignmentError(f"clause {p} {inst.clauses[p - 1]} does not have exactly one true literal")
    cases = [CASE_FOR_TRIPLET[t] for t in clause_triplets(inst, values)]
    names = _layout(inst, art.occurrences or _occurrences(inst), list(values), cases)
    order = [art.registry[x] for x in names]
    if check:
        rep = check_order(art.graph, order, STICK)
        if not rep.feasible:
            u, v, kind = rep.violations[0]
            raise AssertionError(
                f"witness layout infeasible: {art.graph.label(u)} / {art.graph.label(v)} ({kind})")
    return order


def decode_assignment(art: ReductionArtifact, order: Sequence[int]) -> tuple[bool, ...]:
    """Read the variable values back from a feasible order."""
    g = art.graph
    if sorted(order) != list(range(g.n)):
        raise DecodeError("order is not a permutation of the graph's vertices")
    rep = check_order(g, order, STICK)
    if not rep.feasible:
        u, v, kind = rep.violations[0]
        raise DecodeError(f"order is infeasible: {g.label(u)} / {g.label(v)} ({kind})")
    pos = {v: i for i, v in enumerate(order)}
    inst = art.instance
    occ = art.occurrences or _occurrences(inst)
    values = []
    for t in range(1, inst.n + 1):
        zero = [art.registry[_v(t, "u0")]] + [art.registry[_copy(t, "0", p)] for p in occ[t]]
        one = [art.registry[_v(t, "u1")]] + [art.registry[_copy(t, "1", p)] for p in occ[t]]
        if max(pos[x] for x in one) < min(pos[x] for x in zero):
            values.append(True)
        elif max(pos[x] for x in zero) < min(pos[x] for x in one):
            values.append(False)
        else:
            raise DecodeError(f"copies of variable {t} are interleaved")
    for p, probe in enumerate(art.probes, 1):
        trip = "".join("T" if pos[art.registry[a]] < pos[art.registry[b]] else "F" for a, b in probe)
        if trip not in ALLOWED_TRIPLETS:
            raise DecodeError(f"clause {p} encodes state triplet {trip}")
        want = "".join("T" if values[t - 1] else "F" for t in inst.clauses[p - 1])
        if trip != want:
            raise DecodeError(f"clause {p} encodes {trip} but the variable gadgets say {want}")
    return tuple(values)


# -- files ---------------------------------------------------------------------


def artifact_from_files(graph: Graph, sidecar: dict) -> ReductionArtifact:
    inst = OneInThreeInstance.from_json(sidecar["instance"])
    registry = {k: int(v) for k, v in sidecar["registry"].items()}
    for name, i in registry.items():
        if not 0 <= i < graph.n or graph.label(i) != name:
            raise DecodeError(f"registry entry {name!r} does not match the graph")
    probes = [tuple(tuple(p) for p in triple) for triple in sidecar["probes"]]
    return ReductionArtifact(inst, graph, registry, dict(sidecar.get("aliases", {})), probes,
                             dict(sidecar.get("counts", {})), _occurrences(inst))


def format_order(g: Graph, order: Sequence[int]) -> str:
    return "\n".join(g.label(v) for v in order) + "\n"


def parse_order(g: Graph, text: str) -> list[int]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.split():
            out.append(g.vertex(tok))
    return out
