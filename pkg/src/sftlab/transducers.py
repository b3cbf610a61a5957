"""Deterministic finite-state word-output transducers presenting continuous
maps between one-sided shifts of finite type.

A machine reads the input point symbol by symbol from a fixed initial state
and emits a (possibly empty) output word per step.  Validation enforces the
three properties that make the machine a genuine continuous map into the
codomain shift:

* complete: a transition exists for every reachable state and admissible
  next input symbol;
* productive: every reachable cycle emits at least one output symbol, so
  images of infinite inputs are infinite;
* output-admissible: concatenated outputs along admissible inputs are
  admissible in the codomain.

On top of the machines this module implements: exact application to
eventually periodic points, composition, bounded-delay equality of the
presented maps, verification of continuous-orbit-equivalence cocycle data,
and the induced transfer operator on locally constant functions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import cohomology as coh
from .config import Limits, default_limits
from .errors import (
    ContradictionDetected,
    FormatError,
    InadmissibleOutput,
    IncompleteTransducer,
    InsufficientLookahead,
    PresentationMismatch,
    RationalNotSupported,
    Starvation,
)
from .shifts import (
    EventuallyPeriodicPoint,
    SftPresentation,
    Word,
    higher_block,
    periodic_point,
    shift_point,
    shift_point_by,
    enumerate_points,
    words,
)

Rule = tuple[int, int, int, Word]          # state, input symbol, next state, output


@dataclass(frozen=True)
class Transducer:
    domain: SftPresentation
    codomain: SftPresentation
    n_states: int
    initial: int
    rules: tuple[Rule, ...]

    def table(self) -> dict[tuple[int, int], tuple[int, Word]]:
        if not hasattr(self, "_table"):
            object.__setattr__(
                self, "_table",
                {(q, a): (q2, out) for (q, a, q2, out) in self.rules})
        return self._table

    def max_output_len(self) -> int:
        return max((len(out) for (_q, _a, _q2, out) in self.rules), default=0)


def make_transducer(domain: SftPresentation, codomain: SftPresentation,
                    rules, initial: int = 0, n_states: int | None = None,
                    check: bool = True) -> Transducer:
    """Normalize the rule set (sorted, frozen) and validate the machine."""
    normalized = []
    seen = set()
    for q, a, q2, out in rules:
        key = (int(q), int(a))
        if key in seen:
            raise FormatError(f"duplicate rule for state {q}, symbol {a}")
        seen.add(key)
        normalized.append((int(q), int(a), int(q2), tuple(int(s) for s in out)))
    normalized.sort()
    if n_states is None:
        n_states = 1 + max(
            itertools.chain((q for q, _a, _q2, _o in normalized),
                            (q2 for _q, _a, q2, _o in normalized)),
            default=-1)
        n_states = max(n_states, initial + 1)
    t = Transducer(domain=domain, codomain=codomain, n_states=n_states,
                   initial=initial, rules=tuple(normalized))
    if check:
        check_transducer(t)
    return t


def _configs(t: Transducer):
    """Reachable (state, previous input symbol) pairs; previous None only at
    the start.  Completeness is enforced along the way."""
    table = t.table()
    dom = t.domain
    start = (t.initial, None)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for (q, prev) in frontier:
            syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
            for a in syms:
                if (q, a) not in table:
                    raise IncompleteTransducer(
                        f"no rule for state {q} on symbol {dom.symbols[a]}")
                q2, _out = table[(q, a)]
                cfg = (q2, a)
                if cfg not in seen:
                    seen.add(cfg)
                    order.append(cfg)
                    nxt.append(cfg)
        frontier = nxt
    return order


def check_transducer(t: Transducer) -> None:
    """Completeness, productivity, and output admissibility."""
    table = t.table()
    dom, cod = t.domain, t.codomain
    for (q, a), (q2, out) in table.items():
        if not (0 <= q < t.n_states and 0 <= q2 < t.n_states):
            raise FormatError(f"rule ({q},{a}) references an unknown state")
        if not (0 <= a < dom.alphabet_size):
            raise FormatError(f"rule ({q},{a}) reads an unknown symbol")
        for s in out:
            if not (0 <= s < cod.alphabet_size):
                raise FormatError(f"rule ({q},{a}) emits an unknown symbol")
        if not cod.is_admissible(out):
            raise InadmissibleOutput(
                f"output {cod.word_label(out)} of rule ({q},{a}) is inadmissible")

    configs = _configs(t)
    cfg_index = {c: i for i, c in enumerate(configs)}

    # productivity: no cycle among configs using only empty-output steps
    empty_succ: list[list[int]] = [[] for _ in configs]
    for i, (q, prev) in enumerate(configs):
        syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
        for a in syms:
            q2, out = table[(q, a)]
            if not out:
                empty_succ[i].append(cfg_index[(q2, a)])
    color = [0] * len(configs)        # 0 new, 1 active, 2 done
    for root in range(len(configs)):
        if color[root]:
            continue
        stack = [(root, iter(empty_succ[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nb in it:
                if color[nb] == 1:
                    q, prev = configs[nb]
                    raise Starvation(
                        f"cycle through state {q} emits no output")
                if color[nb] == 0:
                    color[nb] = 1
                    stack.append((nb, iter(empty_succ[nb])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()

    # output admissibility across steps: track the last emitted symbol
    start = (t.initial, None, None)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for (q, prev, last) in frontier:
            syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
            for a in syms:
                q2, out = table[(q, a)]
                if out and last is not None and not cod.follow(last, out[0]):
                    raise InadmissibleOutput(
                        f"outputs {cod.symbols[last]} then {cod.symbols[out[0]]} "
                        f"cannot be concatenated (state {q}, input {dom.symbols[a]})")
                new_last = out[-1] if out else last
                cfg = (q2, a, new_last)
                if cfg not in seen:
                    seen.add(cfg)
                    nxt.append(cfg)
        frontier = nxt


def run_on_word(t: Transducer, word: Word) -> tuple[int, Word]:
    """Feed an admissible word from the initial state; returns (state, output)."""
    table = t.table()
    q = t.initial
    out: list[int] = []
    for a in word:
        try:
            q, emitted = table[(q, a)]
        except KeyError:
            raise IncompleteTransducer(
                f"no rule for state {q} on symbol {t.domain.symbols[a]}") from None
        out.extend(emitted)
    return q, tuple(out)


def apply(t: Transducer, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """Exact image of an eventually periodic point, canonicalized."""
    if x.presentation != t.domain:
        raise PresentationMismatch("point lives outside the machine's domain")
    table = t.table()
    q = t.initial
    head: list[int] = []
    for a in x.preperiod:
        q, out = table[(q, a)]
        head.extend(out)
    period = x.period
    seen: dict[tuple[int, int], int] = {}
    step_outputs: list[Word] = []
    offset = 0
    while (q, offset) not in seen:
        seen[(q, offset)] = len(step_outputs)
        q, out = table[(q, period[offset])]
        step_outputs.append(out)
        offset = (offset + 1) % len(period)
    first = seen[(q, offset)]
    for out in step_outputs[:first]:
        head.extend(out)
    tail: list[int] = []
    for out in step_outputs[first:]:
        tail.extend(out)
    if not tail:
        raise Starvation("image period is empty")
    return periodic_point(t.codomain, tuple(head), tuple(tail))


def identity_transducer(p: SftPresentation) -> Transducer:
    rules = [(0, a, 0, (a,)) for a in range(p.alphabet_size)]
    return make_transducer(p, p, rules)


def single_state_transducer(domain: SftPresentation, codomain: SftPresentation,
                            output_map: dict[int, Word]) -> Transducer:
    rules = [(0, a, 0, tuple(out)) for a, out in sorted(output_map.items())]
    return make_transducer(domain, codomain, rules)


def compose(second: Transducer, first: Transducer,
            limits: Limits | None = None) -> Transducer:
    """Machine presenting second(first(.)); built on reachable state pairs
    and re-validated."""
    if first.codomain != second.domain:
        raise PresentationMismatch(
            "codomain of the inner machine must be the domain of the outer")
    t1, t2 = first.table(), second.table()
    dom = first.domain
    start_pair = (first.initial, second.initial)
    pair_ids = {start_pair: 0}
    rules: dict[tuple[int, int], tuple[int, Word]] = {}
    seen_cfg = {(start_pair, None)}
    frontier = [(start_pair, None)]
    while frontier:
        nxt = []
        for (pair, prev) in frontier:
            q1, q2 = pair
            syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
            for a in syms:
                if (q1, a) not in t1:
                    raise IncompleteTransducer(
                        f"inner machine lacks state {q1} on {dom.symbols[a]}")
                q1n, w1 = t1[(q1, a)]
                q2n = q2
                out: list[int] = []
                for s in w1:
                    if (q2n, s) not in t2:
                        raise IncompleteTransducer(
                            f"outer machine lacks state {q2n} on "
                            f"{second.domain.symbols[s]}")
                    q2n, w2 = t2[(q2n, s)]
                    out.extend(w2)
                new_pair = (q1n, q2n)
                if new_pair not in pair_ids:
                    pair_ids[new_pair] = len(pair_ids)
                key = (pair_ids[pair], a)
                value = (pair_ids[new_pair], tuple(out))
                if key in rules:
                    assert rules[key] == value
                else:
                    rules[key] = value
                cfg = (new_pair, a)
                if cfg not in seen_cfg:
                    seen_cfg.add(cfg)
                    nxt.append(cfg)
        frontier = nxt
    rule_list = [(q, a, q2, out) for (q, a), (q2, out) in rules.items()]
    return make_transducer(dom, second.codomain, rule_list,
                           initial=0, n_states=len(pair_ids))


@dataclass(frozen=True)
class EquivalenceResult:
    """status in {"equal", "unequal", "inconclusive"}; unequal carries an
    admissible input word on which the outputs split."""

    status: str
    witness: Word | None = None
    delay_bound: int = 0


def default_delay_bound(t1: Transducer, t2: Transducer,
                        limits: Limits | None = None) -> int:
    limits = limits or default_limits()
    maxlen = max(t1.max_output_len(), t2.max_output_len(), 1)
    return t1.n_states * t2.n_states * maxlen + limits.delay_slack


def equivalent_maps(t1: Transducer, t2: Transducer,
                    delay_bound: int | None = None,
                    limits: Limits | None = None) -> EquivalenceResult:
    """Do the two machines present the same map?

    Synchronized product with output-buffer cancellation.  No reachable
    mismatch and all buffers within the delay bound means the presented maps
    agree on every point; a mismatch gives a finite input witness; a buffer
    overflow leaves the question inconclusive at this bound."""
    if t1.domain != t2.domain or t1.codomain != t2.codomain:
        raise PresentationMismatch("machines must share domain and codomain")
    if delay_bound is None:
        delay_bound = default_delay_bound(t1, t2, limits)
    tab1, tab2 = t1.table(), t2.table()
    dom = t1.domain
    start = (t1.initial, t2.initial, None, 0, ())
    parents: dict = {start: None}
    frontier = [start]
    overflow = False
    while frontier:
        nxt = []
        for cfg in frontier:
            q1, q2, prev, side, buf = cfg
            syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
            for a in syms:
                q1n, o1 = tab1[(q1, a)]
                q2n, o2 = tab2[(q2, a)]
                s1 = (buf + o1) if side == 1 else o1
                s2 = (buf + o2) if side == 2 else o2
                c = min(len(s1), len(s2))
                if s1[:c] != s2[:c]:
                    word = _trace(parents, cfg) + (a,)
                    return EquivalenceResult("unequal", word, delay_bound)
                if len(s1) > c:
                    nside, nbuf = 1, s1[c:]
                elif len(s2) > c:
                    nside, nbuf = 2, s2[c:]
                else:
                    nside, nbuf = 0, ()
                if len(nbuf) > delay_bound:
                    overflow = True
                    continue
                ncfg = (q1n, q2n, a, nside, nbuf)
                if ncfg not in parents:
                    parents[ncfg] = (cfg, a)
                    nxt.append(ncfg)
        frontier = nxt
    if overflow:
        return EquivalenceResult("inconclusive", None, delay_bound)
    return EquivalenceResult("equal", None, delay_bound)


def _trace(parents, cfg) -> Word:
    out = []
    while parents[cfg] is not None:
        cfg, a = parents[cfg]
        out.append(a)
    out.reverse()
    return tuple(out)


# ------------------------------------------------------------- orbit data

@dataclass(frozen=True)
class OrbitData:
    """Cocycle exponents (k1, l1) for a continuous map h between shifts:
    shifting the image of the shifted point k1(x) times equals shifting the
    image of the point l1(x) times.  Both are nonnegative locally constant
    integer functions on the domain."""

    k1: coh.LocallyConstantFunction
    l1: coh.LocallyConstantFunction

    def __post_init__(self):
        if self.k1.presentation != self.l1.presentation:
            raise PresentationMismatch("cocycle exponents on different presentations")
        for f in (self.k1, self.l1):
            if f.ring != coh.RING_INT:
                raise RationalNotSupported("cocycle exponents are integers")
            if f.min_value() < 0:
                raise ValueError("cocycle exponents must be nonnegative")


def conjugacy_data(p: SftPresentation) -> OrbitData:
    """k1 = 0, l1 = 1: the data of a shift-commuting map."""
    return OrbitData(coh.zero(p), coh.unit(p))


def shifted_image(h: Transducer, amount: coh.LocallyConstantFunction,
                  pre_shift: int, limits: Limits | None = None) -> Transducer:
    """Machine for x -> shift^{amount(x)}( h( shift^{pre_shift}(x) ) ).

    The input is buffered to the depth of the shift amount (cylinder
    refinement); afterwards the machine replays h with a decreasing count of
    output symbols to drop."""
    limits = limits or default_limits()
    if amount.presentation != h.domain:
        raise PresentationMismatch("shift amount must live on the machine's domain")
    if amount.ring != coh.RING_INT or amount.min_value() < 0:
        raise RationalNotSupported("shift amounts are nonnegative integers")
    depth = max(amount.depth, pre_shift, 1)
    table = h.table()

    phase_ids: dict[Word, int] = {}
    for length in range(depth):
        for w in words(h.domain, length, limits):
            phase_ids[w] = len(phase_ids)
    run_ids: dict[tuple[int, int], int] = {}
    next_id = len(phase_ids)

    def run_state(qh: int, drops: int) -> int:
        nonlocal next_id
        key = (qh, drops)
        if key not in run_ids:
            run_ids[key] = next_id
            next_id += 1
        return run_ids[key]

    rules: list[Rule] = []
    for w, sid in phase_ids.items():
        choices = range(h.domain.alphabet_size) if not w \
            else h.domain.successors(w[-1])
        for a in choices:
            full = w + (a,)
            if len(full) < depth:
                rules.append((sid, a, phase_ids[full], ()))
                continue
            qh, emitted = run_on_word(h, full[pre_shift:])
            s = amount.value_on_word(full)
            if s <= len(emitted):
                out = emitted[s:]
                drops = 0
            else:
                out = ()
                drops = s - len(emitted)
            rules.append((sid, a, run_state(qh, drops), out))

    pending = list(run_ids.keys())
    done = set()
    while pending:
        key = pending.pop(0)
        if key in done:
            continue
        done.add(key)
        qh, drops = key
        sid = run_ids[key]
        for (q, a), (q2, out) in table.items():
            if q != qh:
                continue
            cut = min(drops, len(out))
            target = run_state(q2, drops - cut)
            rules.append((sid, a, target, out[cut:]))
            if (q2, drops - cut) not in done:
                pending.append((q2, drops - cut))

    return make_transducer(h.domain, h.codomain, rules,
                           initial=phase_ids[()], n_states=next_id)


@dataclass(frozen=True)
class OrbitRelationResult:
    holds: bool
    witness: Word | None              # input word separating the two sides
    machine_status: str
    points_checked: int


def verify_orbit_relation(h: Transducer, data: OrbitData,
                          limits: Limits | None = None) -> OrbitRelationResult:
    """Decide the cocycle relation for h and (k1, l1).

    Machine check: the transducers for both sides of the relation are
    compared for map equality with the default delay bound.  On "equal" the
    relation is additionally cross-checked on all eventually periodic points
    within the configured preperiod/period bounds; disagreement there would
    contradict the machine verdict and trips ContradictionDetected."""
    limits = limits or default_limits()
    if data.k1.presentation != h.domain:
        raise PresentationMismatch("cocycle data must live on the machine's domain")
    lhs = shifted_image(h, data.k1, 1, limits)
    rhs = shifted_image(h, data.l1, 0, limits)
    verdict = equivalent_maps(lhs, rhs, None, limits)
    if verdict.status == "unequal":
        return OrbitRelationResult(False, verdict.witness, verdict.status, 0)
    if verdict.status == "inconclusive":
        raise InsufficientLookahead(
            f"delay bound {verdict.delay_bound} too small for the machine check")
    checked = 0
    for x in enumerate_points(h.domain, limits.point_check_preperiod,
                              limits.point_check_period, limits):
        kv = data.k1.value_at_point(x)
        lv = data.l1.value_at_point(x)
        left = shift_point_by(apply(h, shift_point(x)), kv)
        right = shift_point_by(apply(h, x), lv)
        if left != right:
            raise ContradictionDetected(
                f"machine check passed but point {x.label()} separates the sides")
        checked += 1
    return OrbitRelationResult(True, None, "equal", checked)


# ------------------------------------------------------------ transfer map

def _min_output_lengths(h: Transducer, limits: Limits):
    """Generator of (input length m, min output length over admissible
    m-words from the initial state)."""
    table = h.table()
    dom = h.domain
    layer = {(h.initial, None): 0}
    m = 0
    while True:
        m += 1
        nxt: dict = {}
        for (q, prev), best in layer.items():
            syms = range(dom.alphabet_size) if prev is None else dom.successors(prev)
            for a in syms:
                q2, out = table[(q, a)]
                cfg = (q2, a)
                cand = best + len(out)
                if cfg not in nxt or cand < nxt[cfg]:
                    nxt[cfg] = cand
        layer = nxt
        yield m, min(layer.values())


def transfer_psi(h: Transducer, data: OrbitData, f: coh.LocallyConstantFunction,
             limits: Limits | None = None) -> coh.LocallyConstantFunction:
    """Transfer of a locally constant function on the codomain through the
    orbit map: at x, the sum of f over the first l1(x) shifts of h(x) minus
    the sum over the first k1(x) shifts of h(shift x).

    The result is computed on cylinders of a depth D chosen so that every
    admissible input of length D - 1 forces enough output symbols from h."""
    limits = limits or default_limits()
    if f.presentation != h.codomain:
        raise PresentationMismatch("function must live on the machine's codomain")
    if data.k1.presentation != h.domain:
        raise PresentationMismatch("cocycle data must live on the machine's domain")
    df = f.depth
    need = data.l1.max_value() + data.k1.max_value() + df
    cap = (need + 1) * (h.n_states * h.domain.alphabet_size + 2) + \
        data.k1.depth + data.l1.depth
    depth = None
    for m, shortest in _min_output_lengths(h, limits):
        if shortest >= need:
            depth = m + 1
            break
        if m > cap:
            raise InsufficientLookahead(
                f"no input depth below {cap} forces {need} output symbols")
    depth = max(depth, data.k1.depth, data.l1.depth)

    values = []
    for w in words(h.domain, depth, limits):
        lv = data.l1.value_on_word(w)
        kv = data.k1.value_on_word(w)
        _q, out1 = run_on_word(h, w)
        total = sum(f.value_on_word(out1[i: i + df]) for i in range(lv))
        if kv:
            _q, out2 = run_on_word(h, w[1:])
            total -= sum(f.value_on_word(out2[j: j + df]) for j in range(kv))
        values.append(total)
    return coh.function(h.domain, depth, values, f.ring, limits)


@dataclass(frozen=True)
class ConjugacyVerdict:
    verdict: bool
    forward_unit_image: coh.LocallyConstantFunction
    backward_unit_image: coh.LocallyConstantFunction | None


def is_eventual_conjugacy(h: Transducer, data: OrbitData,
                          h_back: Transducer | None = None,
                          data_back: OrbitData | None = None,
                          limits: Limits | None = None) -> ConjugacyVerdict:
    """Eventual conjugacy detector: the transfer of the constant 1 must be
    the constant 1 exactly, in both directions when an inverse is given."""
    c1 = transfer_psi(h, data, coh.unit(h.codomain), limits)
    ok = coh.subtract(c1, coh.unit(h.domain), limits).is_zero()
    c1_back = None
    if h_back is not None:
        if data_back is None:
            raise ValueError("inverse machine needs its own cocycle data")
        c1_back = transfer_psi(h_back, data_back, coh.unit(h_back.codomain), limits)
        ok = ok and coh.subtract(c1_back, coh.unit(h_back.domain), limits).is_zero()
    return ConjugacyVerdict(ok, c1, c1_back)


@dataclass(frozen=True)
class StrongCoeVerdict:
    verdict: bool
    unit_image: coh.LocallyConstantFunction
    comparison: coh.CoboundaryResult


def is_strong_coe(h: Transducer, data: OrbitData,
                  limits: Limits | None = None) -> StrongCoeVerdict:
    """Strong continuous orbit equivalence detector on this side: the class
    of the transferred constant 1 must equal the class of the constant 1."""
    c1 = transfer_psi(h, data, coh.unit(h.codomain), limits)
    comparison = coh.class_equal(c1, coh.unit(h.domain), limits)
    return StrongCoeVerdict(comparison.is_coboundary, c1, comparison)


# ------------------------------------------------------- block conjugacies

@dataclass(frozen=True)
class BlockConjugacy:
    """Recoding of a shift over its (k+1)-blocks and its inverse, with the
    cocycle data of shift-commuting maps."""

    forward: Transducer
    backward: Transducer
    forward_data: OrbitData
    backward_data: OrbitData


def block_conjugacy(p: SftPresentation, k: int,
                    limits: Limits | None = None) -> BlockConjugacy:
    """Conjugacy onto the higher-block presentation with block length k:
    the i-th output symbol is the (k+1)-block starting at position i."""
    limits = limits or default_limits()
    hb = higher_block(p, k, limits)
    target = hb.presentation
    sym_of_word = hb.symbol_of_word

    ids: dict[Word, int] = {}
    for length in range(k):
        for w in words(p, length, limits):
            ids[w] = len(ids)
    # states of length k hold the last k symbols; transitions emit blocks
    full_words = words(p, k, limits)
    full_index = {w: i for i, w in enumerate(full_words)}
    base = len(ids)
    rules: list[Rule] = []
    for w, sid in ids.items():
        choices = range(p.alphabet_size) if not w else p.successors(w[-1])
        for a in choices:
            full = w + (a,)
            if len(full) < k:
                rules.append((sid, a, ids[full], ()))
            else:
                rules.append((sid, a, base + full_index[full], ()))
    for w, i in full_index.items():
        for a in p.successors(w[-1]):
            block = w + (a,)
            rules.append((base + i, a, base + full_index[block[1:]],
                          (sym_of_word[block],)))
    forward = make_transducer(p, target, rules, initial=ids[()],
                              n_states=base + len(full_words))

    back_rules = [(0, s, 0, (hb.word_of_symbol[s][0],))
                  for s in range(target.alphabet_size)]
    backward = make_transducer(target, p, back_rules)

    return BlockConjugacy(
        forward=forward, backward=backward,
        forward_data=conjugacy_data(p),
        backward_data=conjugacy_data(target))


# ------------------------------------------------------------------ file I/O

def parse_transducer_text(text: str, domain: SftPresentation,
                          codomain: SftPresentation,
                          domain_id: str | None = None,
                          codomain_id: str | None = None) -> Transducer:
    """Parse the transducer file format.

    Header ``transducer <domain-id> <codomain-id> states=<m> initial=<q0>``;
    each following line is ``q a -> q' w`` with ``-`` for the empty output
    word."""
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise FormatError("empty transducer file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "transducer":
        raise FormatError("transducer file must start with "
                          "'transducer <domain-id> <codomain-id> states=<m> initial=<q0>'")
    if domain_id is not None and head[1] != domain_id:
        raise FormatError(f"transducer domain is {head[1]!r}, expected {domain_id!r}")
    if codomain_id is not None and head[2] != codomain_id:
        raise FormatError(f"transducer codomain is {head[2]!r}, expected {codomain_id!r}")
    if not head[3].startswith("states=") or not head[4].startswith("initial="):
        raise FormatError(f"bad transducer header {lines[0]!r}")
    try:
        n_states = int(head[3][len("states="):])
        initial = int(head[4][len("initial="):])
    except ValueError:
        raise FormatError(f"bad numbers in header {lines[0]!r}") from None
    if not (0 <= initial < n_states):
        raise FormatError("initial state out of range")
    rules = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 5 or parts[2] != "->":
            raise FormatError(f"bad rule line {line!r}")
        try:
            q, q2 = int(parts[0]), int(parts[3])
        except ValueError:
            raise FormatError(f"bad state in rule {line!r}") from None
        sym_tok = parts[1]
        if sym_tok not in domain._label_index:
            raise FormatError(f"unknown input symbol {sym_tok!r}")
        a = domain._label_index[sym_tok]
        out = () if parts[4] == "-" else codomain.parse_word(parts[4])
        rules.append((q, a, q2, out))
    return make_transducer(domain, codomain, rules, initial=initial,
                           n_states=n_states)


def format_transducer_text(t: Transducer, domain_id: str, codomain_id: str) -> str:
    lines = [f"transducer {domain_id} {codomain_id} "
             f"states={t.n_states} initial={t.initial}"]
    for (q, a, q2, out) in t.rules:
        out_txt = t.codomain.word_label(out) if out else "-"
        lines.append(f"{q} {t.domain.symbols[a]} -> {q2} {out_txt}")
    return "\n".join(lines) + "\n"


def load_transducer_file(path, domain: SftPresentation, codomain: SftPresentation,
                         domain_id: str | None = None,
                         codomain_id: str | None = None) -> Transducer:
    with open(path, "r", encoding="ascii") as fh:
        return parse_transducer_text(fh.read(), domain, codomain,
                                     domain_id, codomain_id)
