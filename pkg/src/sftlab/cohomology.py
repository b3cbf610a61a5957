"""Locally constant integer (or rational) functions on a shift space and the
ordered first cohomology of the shift map.

A function of depth k is a table over the admissible k-words in the frozen
lexicographic order.  The cohomology class of f is f modulo coboundaries
b - b(shift .); the operational order structure is decided on the potential
graph: vertices B_{d-1}, edges B_d (d = max(depth, 2)), edge weights given
by f.  Cycles of this graph are exactly the periodic orbits, so

* f is a coboundary  iff  every cycle has weight sum zero, and
* the class of f has a pointwise nonnegative representative  iff  every
  cycle has nonnegative weight sum (difference constraints, decided by
  shortest-path relaxation).

Both decisions return re-checked witnesses: a potential b with coboundary
b == f, or an explicit cyclically admissible word whose orbit sum violates
the claim.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import Limits, default_limits
from .errors import (
    FormatError,
    MismatchedInput,
    NotCyclicallyAdmissible,
    PresentationMismatch,
    RationalNotSupported,
)
from .shifts import SftPresentation, Word, word_index, words

RING_INT = "Z"
RING_RAT = "Q"


@dataclass(frozen=True)
class LocallyConstantFunction:
    """Depth-k table over B_k in frozen lexicographic order, normalized so
    that no smaller depth realizes the same function."""

    presentation: SftPresentation
    depth: int
    table: tuple
    ring: str

    def value_on_word(self, w: Word):
        """Value on the cylinder of any admissible word extending w[:depth]."""
        if len(w) < self.depth:
            raise MismatchedInput(
                f"need at least {self.depth} symbols, got {len(w)}")
        prefix = tuple(w[: self.depth])
        idx = word_index(self.presentation, self.depth)
        try:
            return self.table[idx[prefix]]
        except KeyError:
            raise MismatchedInput(
                f"word {self.presentation.word_label(prefix)} not admissible") from None

    def value_at_point(self, x) -> int | Fraction:
        if x.presentation != self.presentation:
            raise PresentationMismatch("point lives on a different presentation")
        return self.value_on_word(x.prefix(self.depth))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.table)

    def min_value(self):
        return min(self.table)

    def max_value(self):
        return max(self.table)


def _coerce(value, ring: str):
    if ring == RING_INT:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise FormatError(f"value {value} is not an integer")
            return int(value)
        return int(value)
    return Fraction(value)


def function(p: SftPresentation, depth: int, values, ring: str = RING_INT,
             limits: Limits | None = None) -> LocallyConstantFunction:
    """Build and normalize a locally constant function from a value table
    aligned with words(p, depth)."""
    limits = limits or default_limits()
    if ring not in (RING_INT, RING_RAT):
        raise FormatError(f"unknown ring {ring!r}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    table = tuple(_coerce(v, ring) for v in values)
    expected = len(words(p, depth, limits))
    if len(table) != expected:
        raise MismatchedInput(
            f"table has {len(table)} entries, B_{depth} has {expected}")
    depth, table = _normalize(p, depth, table)
    return LocallyConstantFunction(p, depth, table, ring)


def _normalize(p: SftPresentation, depth: int, table: tuple) -> tuple[int, tuple]:
    """Reduce the depth while the value depends only on a proper prefix."""
    while depth > 1:
        shorter = words(p, depth - 1)
        sidx = word_index(p, depth - 1)
        candidate: list = [None] * len(shorter)
        ok = True
        for w, v in zip(words(p, depth), table):
            i = sidx[w[:-1]]
            if candidate[i] is None:
                candidate[i] = v
            elif candidate[i] != v:
                ok = False
                break
        if not ok:
            break
        depth -= 1
        table = tuple(candidate)
    return depth, table


def constant(p: SftPresentation, value, ring: str = RING_INT) -> LocallyConstantFunction:
    return function(p, 1, [value] * p.alphabet_size, ring)


def unit(p: SftPresentation) -> LocallyConstantFunction:
    """The constant function 1; its class is the order unit of interest."""
    return constant(p, 1)


def zero(p: SftPresentation) -> LocallyConstantFunction:
    return constant(p, 0)


def indicator(p: SftPresentation, word: Word,
              limits: Limits | None = None) -> LocallyConstantFunction:
    """Indicator of the cylinder set of the given admissible word."""
    p.check_admissible(tuple(word))
    k = max(1, len(word))
    table = [1 if w[: len(word)] == tuple(word) else 0 for w in words(p, k, limits)]
    return function(p, k, table, RING_INT, limits)


def _common(f: LocallyConstantFunction, g: LocallyConstantFunction):
    if f.presentation != g.presentation:
        raise PresentationMismatch("functions live on different presentations")
    ring = RING_RAT if RING_RAT in (f.ring, g.ring) else RING_INT
    depth = max(f.depth, g.depth)
    return depth, ring


def lift_table(f: LocallyConstantFunction, depth: int,
               limits: Limits | None = None) -> tuple:
    """Value table of f at a (possibly) larger depth."""
    if depth == f.depth:
        return f.table
    assert depth > f.depth
    idx = word_index(f.presentation, f.depth, limits)
    return tuple(f.table[idx[w[: f.depth]]]
                 for w in words(f.presentation, depth, limits))


def add(f: LocallyConstantFunction, g: LocallyConstantFunction,
        limits: Limits | None = None) -> LocallyConstantFunction:
    depth, ring = _common(f, g)
    ft, gt = lift_table(f, depth, limits), lift_table(g, depth, limits)
    return function(f.presentation, depth, [x + y for x, y in zip(ft, gt)],
                    ring, limits)


def subtract(f: LocallyConstantFunction, g: LocallyConstantFunction,
             limits: Limits | None = None) -> LocallyConstantFunction:
    depth, ring = _common(f, g)
    ft, gt = lift_table(f, depth, limits), lift_table(g, depth, limits)
    return function(f.presentation, depth, [x - y for x, y in zip(ft, gt)],
                    ring, limits)


def multiply(f: LocallyConstantFunction, g: LocallyConstantFunction,
             limits: Limits | None = None) -> LocallyConstantFunction:
    """Pointwise product; cuts a function to a cylinder when g is an
    indicator."""
    depth, ring = _common(f, g)
    ft, gt = lift_table(f, depth, limits), lift_table(g, depth, limits)
    return function(f.presentation, depth, [x * y for x, y in zip(ft, gt)],
                    ring, limits)


def negate(f: LocallyConstantFunction) -> LocallyConstantFunction:
    return LocallyConstantFunction(f.presentation, f.depth,
                                   tuple(-v for v in f.table), f.ring)


def scale(f: LocallyConstantFunction, c) -> LocallyConstantFunction:
    if isinstance(c, Fraction) and c.denominator != 1:
        ring = RING_RAT
    else:
        ring = f.ring
        c = int(c) if ring == RING_INT else Fraction(c)
    return function(f.presentation, f.depth, [c * v for v in f.table], ring)


def pullback_sigma(f: LocallyConstantFunction,
                   limits: Limits | None = None) -> LocallyConstantFunction:
    """f composed with the shift map; raises the depth by one."""
    p = f.presentation
    idx = word_index(p, f.depth, limits)
    table = [f.table[idx[w[1:]]] for w in words(p, f.depth + 1, limits)]
    return function(p, f.depth + 1, table, f.ring, limits)


def partial_sum(f: LocallyConstantFunction, n: int,
                limits: Limits | None = None) -> LocallyConstantFunction:
    """Sum of f over the first n shift iterates (the n-step cocycle)."""
    if n < 0:
        raise ValueError("partial sums need n >= 0")
    acc = zero(f.presentation)
    if f.ring == RING_RAT:
        acc = function(f.presentation, 1, [Fraction(0)] * f.presentation.alphabet_size,
                       RING_RAT, limits)
    cur = f
    for _ in range(n):
        acc = add(acc, cur, limits)
        cur = pullback_sigma(cur, limits)
    return acc


def coboundary(b: LocallyConstantFunction,
               limits: Limits | None = None) -> LocallyConstantFunction:
    """b - b(shift .); always a function of zero class."""
    return subtract(b, pullback_sigma(b, limits), limits)


def orbit_sum(f: LocallyConstantFunction, cycle: Word,
              limits: Limits | None = None):
    """Sum of f along the periodic orbit of the cyclically admissible word."""
    p = f.presentation
    cyc = tuple(cycle)
    if not cyc:
        raise NotCyclicallyAdmissible("empty cycle")
    if not p.is_admissible(cyc) or not p.follow(cyc[-1], cyc[0]):
        raise NotCyclicallyAdmissible(
            f"word {p.word_label(cyc)} is not cyclically admissible")
    reps = 1
    while reps * len(cyc) < len(cyc) + f.depth:
        reps += 1
    stream = cyc * reps
    return sum(f.value_on_word(stream[i: i + f.depth]) for i in range(len(cyc)))


# ------------------------------------------------------ the potential graph

@dataclass(frozen=True)
class PotentialGraph:
    """Vertices B_{d-1}, edges B_d; edge w runs w[:-1] -> w[1:].  Cycles
    correspond exactly to periodic orbits of the shift."""

    presentation: SftPresentation
    depth: int
    vertex_words: tuple[Word, ...]
    edge_words: tuple[Word, ...]
    sources: tuple[int, ...]
    targets: tuple[int, ...]


def potential_graph(p: SftPresentation, depth: int,
                    limits: Limits | None = None) -> PotentialGraph:
    d = max(depth, 2)
    verts = words(p, d - 1, limits)
    vidx = word_index(p, d - 1, limits)
    edges = words(p, d, limits)
    return PotentialGraph(
        presentation=p, depth=d, vertex_words=verts, edge_words=edges,
        sources=tuple(vidx[w[:-1]] for w in edges),
        targets=tuple(vidx[w[1:]] for w in edges))


def _negative_cycle(n: int, sources, targets, weights) -> list[int] | None:
    """Bellman-Ford with zero initialization (implicit super source); returns
    the edge indices of a negative-weight cycle, or None."""
    dist = [0] * n
    parent = [-1] * n
    relaxed = -1
    for _ in range(n):
        relaxed = -1
        for ei in range(len(sources)):
            u, v, w = sources[ei], targets[ei], weights[ei]
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                parent[v] = ei
                relaxed = v
        if relaxed == -1:
            return None
    x = relaxed
    for _ in range(n):
        x = sources[parent[x]]
    cycle = []
    cur = x
    while True:
        ei = parent[cur]
        cycle.append(ei)
        cur = sources[ei]
        if cur == x:
            break
    cycle.reverse()
    return cycle


def _cycle_word(graph: PotentialGraph, cycle_edges: list[int]) -> Word:
    return tuple(graph.edge_words[ei][0] for ei in cycle_edges)


@dataclass(frozen=True)
class CoboundaryResult:
    is_coboundary: bool
    potential: LocallyConstantFunction | None   # b with coboundary(b) == f
    cycle: Word | None                          # cyclic word with nonzero sum

    def __iter__(self):
        yield self.is_coboundary
        yield self.potential if self.is_coboundary else self.cycle

    def __bool__(self):
        return self.is_coboundary


def class_is_zero(f: LocallyConstantFunction,
                  limits: Limits | None = None) -> CoboundaryResult:
    """Zero-class test.  A witness potential b of depth d-1 is rebuilt from a
    spanning arborescence and re-verified; failure yields an explicit cycle
    with nonzero orbit sum (found by negative-cycle detection on f and -f)."""
    limits = limits or default_limits()
    p = f.presentation
    graph = potential_graph(p, f.depth, limits)
    table = lift_table(f, graph.depth, limits)
    nverts = len(graph.vertex_words)

    out_edges: list[list[int]] = [[] for _ in range(nverts)]
    for ei, u in enumerate(graph.sources):
        out_edges[u].append(ei)

    b: list = [None] * nverts
    b[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for ei in out_edges[u]:
                v = graph.targets[ei]
                if b[v] is None:
                    b[v] = b[u] - table[ei]
                    nxt.append(v)
        frontier = nxt
    assert all(x is not None for x in b), "potential graph not strongly connected"

    consistent = all(
        table[ei] == b[graph.sources[ei]] - b[graph.targets[ei]]
        for ei in range(len(graph.edge_words)))
    if consistent:
        witness = function(p, graph.depth - 1, b, f.ring, limits)
        check = coboundary(witness, limits)
        diff = subtract(check, f, limits)
        assert diff.is_zero(), "is_coboundary: witness failed re-verification"
        return CoboundaryResult(True, witness, None)

    cyc = _negative_cycle(nverts, graph.sources, graph.targets, table)
    if cyc is None:
        neg = tuple(-w for w in table)
        cyc = _negative_cycle(nverts, graph.sources, graph.targets, neg)
    assert cyc is not None, "inconsistent potential but no signed cycle found"
    word = _cycle_word(graph, cyc)
    assert orbit_sum(f, word, limits) != 0
    return CoboundaryResult(False, None, word)


def class_equal(f: LocallyConstantFunction, g: LocallyConstantFunction,
                 limits: Limits | None = None) -> CoboundaryResult:
    """Class equality: is f - g a coboundary?"""
    return class_is_zero(subtract(f, g, limits), limits)


@dataclass(frozen=True)
class PositivityResult:
    nonnegative: bool
    representative: LocallyConstantFunction | None  # cohomologous to f, >= 0
    potential: LocallyConstantFunction | None       # b with f + coboundary(b) >= 0
    cycle: Word | None                              # cycle with negative sum

    def __iter__(self):
        yield self.nonnegative
        yield self.representative if self.nonnegative else self.cycle

    def __bool__(self):
        return self.nonnegative


def class_is_nonnegative(f: LocallyConstantFunction,
                               limits: Limits | None = None) -> PositivityResult:
    """Decide whether the class of f contains a pointwise nonnegative function.

    Difference constraints b(target) - b(source) <= f(edge) on the potential
    graph, solved by shortest-path relaxation; infeasibility is certified by
    a cycle with negative orbit sum.  Integer-valued functions only."""
    limits = limits or default_limits()
    if f.ring != RING_INT:
        raise RationalNotSupported("positivity is decided over integer values")
    p = f.presentation
    graph = potential_graph(p, f.depth, limits)
    table = lift_table(f, graph.depth, limits)
    nverts = len(graph.vertex_words)

    cyc = _negative_cycle(nverts, graph.sources, graph.targets, table)
    if cyc is not None:
        word = _cycle_word(graph, cyc)
        assert orbit_sum(f, word, limits) < 0
        return PositivityResult(False, None, None, word)

    dist = _relaxed_potentials(graph, table)
    rep_table = [table[ei] + dist[graph.sources[ei]] - dist[graph.targets[ei]]
                 for ei in range(len(graph.edge_words))]
    assert all(v >= 0 for v in rep_table)
    potential = function(p, graph.depth - 1, dist, RING_INT, limits)
    rep = function(p, graph.depth, rep_table, RING_INT, limits)
    check = subtract(rep, add(f, coboundary(potential, limits), limits), limits)
    assert check.is_zero(), "nonnegative representative is not cohomologous to f"
    return PositivityResult(True, rep, potential, None)


def _relaxed_potentials(graph: PotentialGraph, table) -> list:
    """Shortest-path potentials from an implicit super source; only valid
    once the graph is known to have no negative cycle."""
    dist = [0] * len(graph.vertex_words)
    changed = True
    while changed:
        changed = False
        for ei in range(len(graph.edge_words)):
            u, v = graph.sources[ei], graph.targets[ei]
            if dist[u] + table[ei] < dist[v]:
                dist[v] = dist[u] + table[ei]
                changed = True
    return dist


def order_unit_check(f: LocallyConstantFunction,
                     limits: Limits | None = None) -> bool:
    """Order-unit test: every periodic orbit sum of f is strictly positive.

    Decided exactly in two stages: no negative cycle (shortest-path
    feasibility), then no zero-sum cycle.  The reduced weights under a
    feasible potential are nonnegative and telescope around cycles, so a
    zero-sum cycle uses reduced-weight-zero edges only; it remains to find a
    cycle in that edge subset."""
    limits = limits or default_limits()
    if f.ring != RING_INT:
        raise RationalNotSupported("order unit test needs integer values")
    graph = potential_graph(f.presentation, f.depth, limits)
    table = lift_table(f, graph.depth, limits)
    nverts = len(graph.vertex_words)
    if _negative_cycle(nverts, graph.sources, graph.targets, table) is not None:
        return False
    dist = _relaxed_potentials(graph, table)
    tight = [[] for _ in range(nverts)]
    for ei in range(len(graph.edge_words)):
        if table[ei] + dist[graph.sources[ei]] - dist[graph.targets[ei]] == 0:
            tight[graph.sources[ei]].append(graph.targets[ei])
    color = [0] * nverts                   # 0 unseen, 1 on stack, 2 done
    for start in range(nverts):
        if color[start]:
            continue
        color[start] = 1
        stack = [(start, iter(tight[start]))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == 1:
                    return False           # zero-sum cycle found
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(tight[nxt])))
                    break
            else:
                color[node] = 2
                stack.pop()
    return True


@dataclass(frozen=True)
class CohomologyClass:
    """Thin wrapper deciding class-level questions through a representative."""

    representative: LocallyConstantFunction

    def equal(self, other: "CohomologyClass", limits: Limits | None = None) -> bool:
        return class_equal(self.representative, other.representative,
                            limits).is_coboundary

    def is_zero(self, limits: Limits | None = None) -> bool:
        return class_is_zero(self.representative, limits).is_coboundary

    def is_nonnegative(self, limits: Limits | None = None) -> bool:
        return class_is_nonnegative(self.representative, limits).nonnegative


# ------------------------------------------------------------------ file I/O

def format_value(v) -> str:
    return str(v)


def parse_value(token: str, ring: str):
    try:
        if ring == RING_INT:
            return int(token)
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad {ring} value {token!r}") from None


def parse_function_text(text: str, p: SftPresentation,
                        matrix_id: str | None = None,
                        limits: Limits | None = None) -> LocallyConstantFunction:
    """Parse the function file format.

    Header ``function <matrix-id> depth=<k> ring=<Z|Q>``, then exactly one
    ``<word> <value>`` line per admissible word of length k, in the frozen
    enumeration order.  Missing, duplicate, or out-of-order entries are
    errors."""
    limits = limits or default_limits()
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise FormatError("empty function file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "function":
        raise FormatError(
            "function file must start with 'function <matrix-id> depth=<k> ring=<Z|Q>'")
    file_id = head[1]
    if matrix_id is not None and file_id != matrix_id:
        raise FormatError(
            f"function is declared for matrix {file_id!r}, expected {matrix_id!r}")
    if not head[2].startswith("depth=") or not head[3].startswith("ring="):
        raise FormatError(f"bad function header {lines[0]!r}")
    try:
        depth = int(head[2][len("depth="):])
    except ValueError:
        raise FormatError(f"bad depth in {lines[0]!r}") from None
    ring = head[3][len("ring="):]
    if ring not in (RING_INT, RING_RAT):
        raise FormatError(f"ring must be Z or Q, got {ring!r}")
    if depth < 1:
        raise FormatError("depth must be at least 1")

    expected = words(p, depth, limits)
    body = lines[1:]
    if len(body) != len(expected):
        raise FormatError(
            f"expected {len(expected)} entries for depth {depth}, found {len(body)}")
    values = []
    for line, want in zip(body, expected):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"bad function line {line!r}")
        got = p.parse_word(parts[0])
        if got != want:
            raise FormatError(
                f"word {parts[0]!r} out of order; expected {p.word_label(want)}")
        values.append(parse_value(parts[1], ring))
    return function(p, depth, values, ring, limits)


def format_function_text(f: LocallyConstantFunction, matrix_id: str,
                         limits: Limits | None = None) -> str:
    p = f.presentation
    lines = [f"function {matrix_id} depth={f.depth} ring={f.ring}"]
    for w, v in zip(words(p, f.depth, limits), f.table):
        lines.append(f"{p.word_label(w)} {format_value(v)}")
    return "\n".join(lines) + "\n"


def load_function_file(path, p: SftPresentation, matrix_id: str | None = None,
                       limits: Limits | None = None) -> LocallyConstantFunction:
    with open(path, "r", encoding="ascii") as fh:
        return parse_function_text(fh.read(), p, matrix_id, limits)
