"""Command-line interface.

Reports are stable line-oriented ``key: value`` text; multi-line values
(matrices, functions, machines) are emitted as an indented block under the
key.  ``--json`` mirrors the same ordered key/value pairs.  Exit codes:
0 success, 1 internal contradiction, 2 malformed input or failed validation.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import actions
from . import classify
from . import cohomology as coh
from . import moves
from . import randgen
from . import transducers as tr
from .config import default_limits
from .errors import ContradictionDetected, FormatError, SftError
from .linalg import smith
from .shifts import (
    SftPresentation,
    parse_matrix_text,
    parse_point,
    validate,
    words,
)


class Report:
    def __init__(self) -> None:
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def add_rows(self, key: str, matrix) -> None:
        self.add(key, "\n".join(" ".join(str(v) for v in row) for row in matrix))

    def render(self) -> str:
        out: list[str] = []
        for key, value in self.lines:
            if "\n" in value:
                out.append(f"{key}:")
                out.extend("  " + line for line in value.splitlines())
            else:
                out.append(f"{key}: {value}")
        return "\n".join(out) + "\n"

    def render_json(self, command: str) -> str:
        return json.dumps({"command": command, "report": self.lines},
                          indent=2) + "\n"


def _load_presentation(path: str, limits) -> tuple[str, SftPresentation]:
    text = Path(path).read_text(encoding="ascii")
    kind, rows = parse_matrix_text(text)
    if kind == "rect":
        raise FormatError(f"{path}: rectangular matrices cannot present a shift")
    return Path(path).stem, validate(rows, kind, None, limits)


def _load_rect(path: str) -> tuple:
    text = Path(path).read_text(encoding="ascii")
    _kind, rows = parse_matrix_text(text)
    return rows


def _load_function(path: str, p: SftPresentation, matrix_id, limits):
    text = Path(path).read_text(encoding="ascii")
    return coh.parse_function_text(text, p, matrix_id, limits)


def _load_transducer(path: str, dom: SftPresentation, cod: SftPresentation,
                     dom_id, cod_id):
    text = Path(path).read_text(encoding="ascii")
    return tr.parse_transducer_text(text, dom, cod, dom_id, cod_id)


def _function_text(f, matrix_id: str) -> str:
    return coh.format_function_text(f, matrix_id).rstrip("\n")


def _machine_text(t, dom_id: str, cod_id: str) -> str:
    return tr.format_transducer_text(t, dom_id, cod_id).rstrip("\n")


def _add_invariants(rep: Report, prefix: str, inv) -> None:
    rep.add(f"{prefix}.bf-group", inv.bf_group.describe())
    rep.add(f"{prefix}.det-sign", inv.det_sign)
    rep.add(f"{prefix}.k0-group", inv.k0_pointed.group.describe())
    rep.add(f"{prefix}.k0-marked",
            " ".join(str(v) for v in inv.k0_pointed.marked) or "()")
    lo, hi = inv.spectral_radius_bounds
    rep.add(f"{prefix}.spectral-radius", f"[{lo}, {hi}]")


def _add_coboundary(rep: Report, res, f, name: str, matrix_id: str) -> None:
    if res.is_coboundary:
        rep.add(f"{name}", "yes")
        rep.add("witness", _function_text(res.potential, matrix_id))
    else:
        rep.add(f"{name}", "no")
        p = f.presentation
        rep.add("cycle", p.word_label(res.cycle))
        rep.add("cycle-orbit-sum", coh.orbit_sum(f, res.cycle))


# ----------------------------------------------------------- subcommands

def cmd_validate(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    rep = Report()
    rep.add("matrix", name)
    rep.add("kind", p.kind)
    rep.add("vertices", p.n_vertices)
    rep.add("symbols", p.alphabet_size)
    rep.add("irreducible", "yes")
    rep.add("non-permutation", "yes")
    return rep


def cmd_words(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    ws = words(p, args.k, limits)
    rep = Report()
    rep.add("matrix", name)
    rep.add("k", args.k)
    rep.add("count", len(ws))
    for w in ws:
        rep.add("word", p.word_label(w))
    return rep


def cmd_snf(args, limits) -> Report:
    rows = _load_rect(args.matrix)
    dec = smith(rows)
    rep = Report()
    rep.add("shape", f"{len(rows)}x{len(rows[0])}")
    rep.add("diagonal", " ".join(str(v) for v in dec.diagonal))
    rep.add_rows("u", dec.u)
    rep.add_rows("v", dec.v)
    rep.add("checked", "yes")
    return rep


def cmd_invariants(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    inv = classify.invariants(p, limits)
    rep = Report()
    rep.add("matrix", name)
    _add_invariants(rep, name, inv)
    return rep


def cmd_flow_equiv(args, limits) -> Report:
    name_a, pa = _load_presentation(args.matrix_a, limits)
    name_b, pb = _load_presentation(args.matrix_b, limits)
    res = classify.flow_equivalent(pa, pb, limits)
    rep = Report()
    rep.add("flow-equivalent", "yes" if res.verdict else "no")
    rep.add("reason", res.reason)
    _add_invariants(rep, name_a, res.a)
    _add_invariants(rep, name_b, res.b)
    return rep


def cmd_coe(args, limits) -> Report:
    name_a, pa = _load_presentation(args.matrix_a, limits)
    name_b, pb = _load_presentation(args.matrix_b, limits)
    res = classify.coe_verdict(pa, pb, limits)
    rep = Report()
    rep.add("coe", res.verdict)
    rep.add("reason", res.reason)
    if res.iso is not None and res.iso.verdict == "yes":
        if res.iso.witness:
            rep.add_rows("iso-witness", res.iso.witness)
        else:
            rep.add("iso-witness", "trivial")
    _add_invariants(rep, name_a, res.a)
    _add_invariants(rep, name_b, res.b)
    return rep


def cmd_cohom(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    rep = Report()
    rep.add("matrix", name)
    if args.mode == "class-equal":
        f = _load_function(args.f, p, name, limits)
        g = _load_function(args.g, p, name, limits)
        diff = coh.subtract(f, g, limits)
        res = coh.class_is_zero(diff, limits)
        _add_coboundary(rep, res, diff, "class-equal", name)
    elif args.mode == "positive":
        f = _load_function(args.f, p, name, limits)
        res = coh.class_is_nonnegative(f, limits)
        if res.nonnegative:
            rep.add("class-nonnegative", "yes")
            rep.add("representative", _function_text(res.representative, name))
            rep.add("potential", _function_text(res.potential, name))
        else:
            rep.add("class-nonnegative", "no")
            rep.add("cycle", p.word_label(res.cycle))
            rep.add("cycle-orbit-sum", coh.orbit_sum(f, res.cycle))
    else:
        f = _load_function(args.f, p, name, limits)
        cycle = p.parse_word(args.cycle)
        rep.add("cycle", p.word_label(cycle))
        rep.add("orbit-sum", coh.orbit_sum(f, cycle))
    return rep


def cmd_action(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    rep = Report()
    rep.add("matrix", name)
    if args.mode == "compose":
        a = actions.action(_load_function(args.f, p, name, limits))
        b = actions.action(_load_function(args.g, p, name, limits))
        out = actions.compose(a, b)
        rep.add("classifier", _function_text(out.classifier, name))
    elif args.mode == "equivalent":
        a = actions.action(_load_function(args.f, p, name, limits))
        b = actions.action(_load_function(args.g, p, name, limits))
        res = actions.equivalent(a, b, limits)
        diff = coh.subtract(a.classifier, b.classifier, limits)
        _add_coboundary(rep, res, diff, "equivalent", name)
    elif args.mode == "positive":
        a = actions.action(_load_function(args.f, p, name, limits))
        res = actions.class_nonnegative(a, limits)
        rep.add("class-nonnegative", "yes" if res.nonnegative else "no")
        if res.nonnegative:
            rep.add("representative", _function_text(res.representative, name))
        else:
            rep.add("cycle", p.word_label(res.cycle))
    else:
        a = actions.action(_load_function(args.f, p, name, limits))
        mu = p.parse_word(args.word)
        t = Fraction(args.t)
        x = parse_point(p, args.point)
        exponent = actions.phase_on_word(a, mu, limits)
        value = actions.evaluate_phase(a, mu, t, x)
        rep.add("word", p.word_label(mu))
        rep.add("t", t)
        rep.add("point", x.label())
        rep.add("exponent", _function_text(exponent.exponent, name))
        rep.add("phase", value)
    return rep


def cmd_transducer(args, limits) -> Report:
    rep = Report()
    if args.mode == "apply":
        dom_id, dom = _load_presentation(args.domain, limits)
        cod_id, cod = _load_presentation(args.codomain, limits)
        machine = _load_transducer(args.machine, dom, cod, dom_id, cod_id)
        x = parse_point(dom, args.point)
        rep.add("point", x.label())
        rep.add("image", tr.apply(machine, x).label())
    elif args.mode == "compose":
        a_id, pa = _load_presentation(args.matrix_a, limits)
        b_id, pb = _load_presentation(args.matrix_b, limits)
        c_id, pc = _load_presentation(args.matrix_c, limits)
        outer = _load_transducer(args.outer, pb, pc, b_id, c_id)
        inner = _load_transducer(args.inner, pa, pb, a_id, b_id)
        composed = tr.compose(outer, inner, limits)
        rep.add("machine", _machine_text(composed, a_id, c_id))
    elif args.mode == "equiv":
        dom_id, dom = _load_presentation(args.domain, limits)
        cod_id, cod = _load_presentation(args.codomain, limits)
        t1 = _load_transducer(args.first, dom, cod, dom_id, cod_id)
        t2 = _load_transducer(args.second, dom, cod, dom_id, cod_id)
        res = tr.equivalent_maps(t1, t2, args.delay, limits)
        rep.add("maps-equal", res.status)
        rep.add("delay-bound", res.delay_bound)
        if res.witness is not None:
            rep.add("witness", dom.word_label(res.witness))
    elif args.mode == "verify-coe":
        dom_id, dom = _load_presentation(args.domain, limits)
        cod_id, cod = _load_presentation(args.codomain, limits)
        machine = _load_transducer(args.machine, dom, cod, dom_id, cod_id)
        data = tr.OrbitData(
            k1=_load_function(args.k1, dom, dom_id, limits),
            l1=_load_function(args.l1, dom, dom_id, limits))
        res = tr.verify_orbit_relation(machine, data, limits)
        rep.add("orbit-relation", "holds" if res.holds else "fails")
        if res.witness is not None:
            rep.add("witness", dom.word_label(res.witness))
        rep.add("machine-check", res.machine_status)
        rep.add("points-checked", res.points_checked)
    else:
        dom_id, dom = _load_presentation(args.domain, limits)
        cod_id, cod = _load_presentation(args.codomain, limits)
        machine = _load_transducer(args.machine, dom, cod, dom_id, cod_id)
        data = tr.OrbitData(
            k1=_load_function(args.k1, dom, dom_id, limits),
            l1=_load_function(args.l1, dom, dom_id, limits))
        f = _load_function(args.function, cod, cod_id, limits)
        out = tr.transfer_psi(machine, data, f, limits)
        rep.add("transfer", _function_text(out, dom_id))
    return rep


def _resolve_vertex(p: SftPresentation, label: str | None) -> int:
    if label is None:
        return 0
    if label in p.vertex_labels:
        return p.vertex_labels.index(label)
    raise FormatError(f"unknown vertex label {label!r}")


def cmd_expand(args, limits) -> Report:
    name, p = _load_presentation(args.matrix, limits)
    e = moves.expand(p, _resolve_vertex(p, args.vertex), limits)
    exp_id = f"{name}.expanded"
    rep = Report()
    rep.add("matrix", name)
    rep.add("vertex", p.vertex_labels[e.vertex])
    rep.add_rows("expanded", e.expanded.adjacency)
    rep.add("split", _machine_text(e.split, name, exp_id))
    rep.add("split-k1", _function_text(e.split_data.k1, name))
    rep.add("split-l1", _function_text(e.split_data.l1, name))
    rep.add("merge", _machine_text(e.merge, exp_id, name))
    rep.add("merge-k1", _function_text(e.merge_data.k1, exp_id))
    rep.add("merge-l1", _function_text(e.merge_data.l1, exp_id))
    return rep


def cmd_elementary(args, limits) -> Report:
    c = _load_rect(args.c_file)
    d = _load_rect(args.d_file)
    ee = moves.elementary(c, d, limits)
    rep = Report()
    rep.add_rows("a", ee.a.adjacency)
    rep.add_rows("b", ee.b.adjacency)
    rep.add_rows("z", ee.z)
    for s, (ci, di) in enumerate(ee.a_pairs):
        rep.add("a-pair",
                f"{ee.a.symbols[s]} = ({ee.c_edges[ci]}, {ee.d_edges[di]})")
    for s, (di, ci) in enumerate(ee.b_pairs):
        rep.add("b-pair",
                f"{ee.b.symbols[s]} = ({ee.d_edges[di]}, {ee.c_edges[ci]})")
    return rep


def cmd_transfer(args, limits) -> Report:
    rep = Report()
    if args.mode in ("phi", "psi"):
        c = _load_rect(args.c_file)
        d = _load_rect(args.d_file)
        ee = moves.elementary(c, d, limits)
        if args.mode == "phi":
            f = _load_function(args.function, ee.a, None, limits)
            out = moves.phi(ee, f, limits)
            rep.add("transfer", _function_text(out, "B"))
        else:
            g = _load_function(args.function, ee.b, None, limits)
            out = moves.psi(ee, g, limits)
            rep.add("transfer", _function_text(out, "A"))
    else:
        name, p = _load_presentation(args.matrix, limits)
        e = moves.expand(p, _resolve_vertex(p, args.vertex), limits)
        if args.mode == "psi-xi":
            f = _load_function(args.function, e.expanded, None, limits)
            out = moves.psi_xi(e, f, limits)
            rep.add("transfer", _function_text(out, name))
        else:
            f = _load_function(args.function, p, name, limits)
            out = moves.psi_eta(e, f, limits)
            rep.add("transfer", _function_text(out, f"{name}.expanded"))
    return rep


def cmd_sse_search(args, limits) -> Report:
    _name_a, pa = _load_presentation(args.matrix_a, limits)
    _name_b, pb = _load_presentation(args.matrix_b, limits)
    res = moves.sse_search(pa.adjacency, pb.adjacency,
                           args.inner_dim, args.entry_bound, args.chain_bound,
                           limits)
    rep = Report()
    if res.found is None:
        rep.add("sse-chain", "not-found")
        rep.add("note", "bounded search only; not a proof of inequivalence")
    else:
        rep.add("sse-chain", "found")
        rep.add("length", len(res.found))
        for i, ee in enumerate(res.found):
            rep.add_rows(f"step-{i}.c", ee.c)
            rep.add_rows(f"step-{i}.d", ee.d)
    rep.add("nodes", res.nodes_explored)
    rep.add("attempts", res.attempts)
    return rep


# ------------------------------------------------------------- selftest

def _selftest_coboundary(seed: int) -> bool:
    rng = random.Random(seed)
    p = randgen.random_irreducible(rng, 6)
    b = randgen.random_function(rng, p, 3)
    cob = coh.coboundary(b)
    good = coh.class_is_zero(cob)
    if not good.is_coboundary:
        return False
    bad = coh.class_is_zero(coh.add(cob, coh.unit(p)))
    return (not bad.is_coboundary) and bad.cycle is not None


def _selftest_action(seed: int) -> bool:
    rng = random.Random(seed)
    p = randgen.random_irreducible(rng, 5)
    f = randgen.random_function(rng, p, 2)
    b = randgen.random_function(rng, p, 2)
    a1 = actions.action(f)
    a2 = actions.action(coh.add(f, coh.coboundary(b)))
    res = actions.equivalent(a1, a2)
    if not res.is_coboundary:
        return False
    gauge = actions.gauge_action(p)
    trivial = actions.trivial_action(p)
    return not actions.equivalent(gauge, trivial).is_coboundary


def _selftest_elementary(seed: int) -> bool:
    rng = random.Random(seed)
    ee = randgen.random_elementary(rng, 3, 3, 2)
    f = randgen.random_function(rng, ee.a, 2)
    g = randgen.random_function(rng, ee.b, 2)
    lhs = moves.psi(ee, moves.phi(ee, f))
    rhs = moves.phi(ee, moves.psi(ee, g))
    return (coh.subtract(lhs, coh.pullback_sigma(f)).is_zero()
            and coh.subtract(rhs, coh.pullback_sigma(g)).is_zero())


def _selftest_expansion(seed: int) -> bool:
    rng = random.Random(seed)
    p = randgen.random_irreducible(rng, 4)
    e = moves.expand(p, rng.randrange(p.n_vertices))
    f = randgen.random_function(rng, p, 2)
    ft = randgen.random_function(rng, e.expanded, 2)
    if not coh.subtract(moves.psi_xi(e, moves.psi_eta(e, f)), f).is_zero():
        return False
    diff = coh.subtract(moves.psi_eta(e, moves.psi_xi(e, ft)), ft)
    f0 = coh.multiply(ft, coh.indicator(e.expanded, (0,)))
    want = coh.subtract(coh.pullback_sigma(f0), f0)
    if not coh.subtract(diff, want).is_zero():
        return False
    via_machine = tr.transfer_psi(e.split, e.split_data, ft)
    return coh.subtract(via_machine, moves.psi_xi(e, ft)).is_zero()


def _selftest_invariance(seed: int) -> bool:
    rng = random.Random(seed)
    p = randgen.random_irreducible(rng, 5)
    e = moves.expand(p, rng.randrange(p.n_vertices))
    res = classify.flow_equivalent(p, e.expanded)
    return res.verdict


_SELFTEST_FAMILIES = (
    ("coboundary-detection", _selftest_coboundary),
    ("action-equivalence", _selftest_action),
    ("elementary-transfer", _selftest_elementary),
    ("expansion-transfer", _selftest_expansion),
    ("expansion-invariance", _selftest_invariance),
)


def cmd_selftest(args, limits) -> Report:
    rep = Report()
    rep.add("seed", args.seed)
    rep.add("count", args.count)
    total = 0
    passed = 0
    failing: list[str] = []
    for name, fn in _SELFTEST_FAMILIES:
        seeds = [args.seed * 1_000_003 + i for i in range(args.count)]
        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                results = list(pool.map(fn, seeds))
        else:
            results = [fn(s) for s in seeds]
        ok = sum(1 for r in results if r)
        rep.add(name, f"{ok}/{len(results)}")
        total += len(results)
        passed += ok
        if ok != len(results):
            failing.append(name)
    rep.add("passed", f"{passed}/{total}")
    if failing:
        sys.stderr.write(rep.render())
        raise ContradictionDetected(
            "selftest found failing identities in: " + ", ".join(failing))
    return rep


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sftlab",
        description="Exact invariants of one-sided shifts of finite type: "
                    "ordered cohomology, circle actions, transducer orbit "
                    "maps, matrix moves, and equivalence verdicts.")
    top.add_argument("--json", action="store_true",
                     help="emit the report as JSON")
    top.add_argument("--seed", type=int, default=0,
                     help="seed for randomized subcommands")
    sub = top.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a matrix file")
    s.add_argument("matrix")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("words", help="enumerate admissible words")
    s.add_argument("matrix")
    s.add_argument("k", type=int)
    s.set_defaults(fn=cmd_words)

    s = sub.add_parser("snf", help="Smith normal form of a matrix file")
    s.add_argument("matrix")
    s.set_defaults(fn=cmd_snf)

    s = sub.add_parser("invariants", help="classification invariants")
    s.add_argument("matrix")
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("flow-equiv", help="flow equivalence verdict")
    s.add_argument("matrix_a")
    s.add_argument("matrix_b")
    s.set_defaults(fn=cmd_flow_equiv)

    s = sub.add_parser("coe", help="continuous orbit equivalence verdict")
    s.add_argument("matrix_a")
    s.add_argument("matrix_b")
    s.set_defaults(fn=cmd_coe)

    s = sub.add_parser("cohom", help="cohomology class decisions")
    modes = s.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("class-equal")
    m.add_argument("matrix")
    m.add_argument("f")
    m.add_argument("g")
    m = modes.add_parser("positive")
    m.add_argument("matrix")
    m.add_argument("f")
    m = modes.add_parser("orbit-sum")
    m.add_argument("matrix")
    m.add_argument("f")
    m.add_argument("cycle")
    s.set_defaults(fn=cmd_cohom)

    s = sub.add_parser("action", help="circle action operations")
    modes = s.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("compose")
    m.add_argument("matrix")
    m.add_argument("f")
    m.add_argument("g")
    m = modes.add_parser("equivalent")
    m.add_argument("matrix")
    m.add_argument("f")
    m.add_argument("g")
    m = modes.add_parser("positive")
    m.add_argument("matrix")
    m.add_argument("f")
    m = modes.add_parser("phase")
    m.add_argument("matrix")
    m.add_argument("f")
    m.add_argument("word")
    m.add_argument("t")
    m.add_argument("point")
    s.set_defaults(fn=cmd_action)

    s = sub.add_parser("transducer", help="machine operations")
    modes = s.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("apply")
    m.add_argument("domain")
    m.add_argument("codomain")
    m.add_argument("machine")
    m.add_argument("point")
    m = modes.add_parser("compose")
    m.add_argument("matrix_a")
    m.add_argument("matrix_b")
    m.add_argument("matrix_c")
    m.add_argument("outer")
    m.add_argument("inner")
    m = modes.add_parser("equiv")
    m.add_argument("domain")
    m.add_argument("codomain")
    m.add_argument("first")
    m.add_argument("second")
    m.add_argument("--delay", type=int, default=None)
    m = modes.add_parser("verify-coe")
    m.add_argument("domain")
    m.add_argument("codomain")
    m.add_argument("machine")
    m.add_argument("k1")
    m.add_argument("l1")
    m = modes.add_parser("psi")
    m.add_argument("domain")
    m.add_argument("codomain")
    m.add_argument("machine")
    m.add_argument("k1")
    m.add_argument("l1")
    m.add_argument("function")
    s.set_defaults(fn=cmd_transducer)

    s = sub.add_parser("expand", help="vertex expansion with machines")
    s.add_argument("matrix")
    s.add_argument("--vertex", default=None, help="vertex label (default: first)")
    s.set_defaults(fn=cmd_expand)

    s = sub.add_parser("elementary", help="elementary equivalence A=CD, B=DC")
    s.add_argument("c_file")
    s.add_argument("d_file")
    s.set_defaults(fn=cmd_elementary)

    s = sub.add_parser("transfer", help="function transfer along moves")
    modes = s.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("phi")
    m.add_argument("c_file")
    m.add_argument("d_file")
    m.add_argument("function")
    m = modes.add_parser("psi")
    m.add_argument("c_file")
    m.add_argument("d_file")
    m.add_argument("function")
    m = modes.add_parser("psi-xi")
    m.add_argument("matrix")
    m.add_argument("function")
    m.add_argument("--vertex", default=None)
    m = modes.add_parser("psi-eta")
    m.add_argument("matrix")
    m.add_argument("function")
    m.add_argument("--vertex", default=None)
    s.set_defaults(fn=cmd_transfer)

    s = sub.add_parser("sse-search", help="bounded strong shift equivalence search")
    s.add_argument("matrix_a")
    s.add_argument("matrix_b")
    s.add_argument("--inner-dim", type=int, default=None)
    s.add_argument("--entry-bound", type=int, default=None)
    s.add_argument("--chain-bound", type=int, default=None)
    s.set_defaults(fn=cmd_sse_search)

    s = sub.add_parser("selftest", help="run the embedded identity suite")
    s.add_argument("--count", type=int, default=25)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(fn=cmd_selftest)

    return top


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    limits = default_limits()
    try:
        report = args.fn(args, limits)
    except ContradictionDetected as exc:
        print(f"error: contradiction: {exc}", file=sys.stderr)
        return 1
    except SftError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.render_json(args.command) if args.json else report.render()
    sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
