"""Presentations of one-sided shifts of finite type and their word combinatorics.

A presentation is a square nonnegative integer matrix read in one of two ways:

* ``vertex`` kind: a 0-1 matrix; symbols are the vertices and a word is a
  path in the directed graph.
* ``edge`` kind: arbitrary nonnegative integer entries; symbols are the
  edges of the multigraph and a word is a sequence of composable edges.

Symbols are handled as 0-based indices everywhere; human-readable labels are
kept alongside for parsing and printing.  Word enumeration order is the
lexicographic order on symbol indices and is frozen: function tables index
into it.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .config import Limits, default_limits
from .errors import (
    EnvelopeExceeded,
    FormatError,
    Inadmissible,
    NegativeEntry,
    NotIrreducible,
    NotZeroOne,
    PermutationMatrix,
)

Matrix = tuple[tuple[int, ...], ...]
Word = tuple[int, ...]


def freeze_matrix(rows) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SftPresentation:
    """A validated matrix presentation of a one-sided shift of finite type."""

    kind: str                              # "vertex" | "edge"
    adjacency: Matrix                      # vertex-level matrix
    vertex_labels: tuple[str, ...]
    symbols: tuple[str, ...]               # alphabet labels, one per symbol
    edges: tuple[tuple[int, int, int], ...] | None = None  # edge kind: (src, tgt, par)
    # spanning in/out trees from vertex 0, recorded by the irreducibility check
    certificate: tuple[tuple[int, ...], tuple[int, ...]] | None = field(
        default=None, compare=False, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.adjacency)

    @property
    def alphabet_size(self) -> int:
        return len(self.symbols)

    @functools.cached_property
    def _successors(self) -> tuple[tuple[int, ...], ...]:
        """For each symbol, the symbols allowed to follow it (ascending)."""
        if self.kind == "vertex":
            n = self.n_vertices
            return tuple(
                tuple(j for j in range(n) if self.adjacency[i][j])
                for i in range(n))
        out_of: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for s, (src, _tgt, _par) in enumerate(self.edges):
            out_of[src].append(s)
        return tuple(tuple(out_of[tgt]) for (_src, tgt, _par) in self.edges)

    @functools.cached_property
    def _successor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self._successors)

    @functools.cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.symbols)}

    def successors(self, a: int) -> tuple[int, ...]:
        return self._successors[a]

    def follow(self, a: int, b: int) -> bool:
        """True when symbol b may follow symbol a."""
        return b in self._successor_sets[a]

    def is_admissible(self, word: Word) -> bool:
        m = self.alphabet_size
        if any(not (0 <= s < m) for s in word):
            return False
        return all(self.follow(a, b) for a, b in zip(word, word[1:]))

    def check_admissible(self, word: Word) -> None:
        if not self.is_admissible(word):
            raise Inadmissible(f"word {self.word_label(word)} is not admissible")

    def symbol_matrix(self) -> Matrix:
        """0-1 transition matrix over symbols (equals adjacency for vertex kind)."""
        m = self.alphabet_size
        return tuple(
            tuple(1 if self.follow(a, b) else 0 for b in range(m))
            for a in range(m))

    def word_label(self, word: Word) -> str:
        labels = [self.symbols[s] for s in word]
        if all(len(lab) == 1 for lab in self.symbols):
            return "".join(labels)
        return ".".join(labels)

    def parse_word(self, token: str) -> Word:
        """Parse a word token: one label, dot-separated labels, or, when every
        symbol label is a single character, a plain concatenation."""
        if token == "":
            return ()
        idx = self._label_index
        if token in idx:
            return (idx[token],)
        if "." in token:
            parts = token.split(".")
        elif all(len(lab) == 1 for lab in self.symbols):
            parts = list(token)
        else:
            raise FormatError(f"cannot parse word token {token!r}: "
                              "multi-character labels require dot separation")
        word = []
        for part in parts:
            if part not in idx:
                raise FormatError(f"unknown symbol {part!r} in word {token!r}")
            word.append(idx[part])
        return tuple(word)


def _reachable(n: int, succ) -> tuple[list[bool], list[int]]:
    """BFS from vertex 0; returns (seen flags, parent vertices, -1 at root)."""
    seen = [False] * n
    parent = [-1] * n
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in succ(u):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    return seen, parent


def validate(matrix, kind: str = "vertex", vertex_labels=None,
             limits: Limits | None = None) -> SftPresentation:
    """Check a matrix presentation and build the symbol table.

    Requirements: square, nonnegative, irreducible, not a permutation matrix;
    vertex kind additionally 0-1.  The irreducibility certificate (spanning
    in/out trees from vertex 0) is stored on the result.
    """
    limits = limits or default_limits()
    if kind not in ("vertex", "edge"):
        raise FormatError(f"unknown presentation kind {kind!r}")
    rows = freeze_matrix(matrix)
    n = len(rows)
    if n == 0:
        raise FormatError("empty matrix")
    if any(len(row) != n for row in rows):
        raise FormatError("matrix is not square")
    if n > limits.max_vertices:
        raise EnvelopeExceeded(
            f"matrix has {n} vertices, supported maximum is {limits.max_vertices}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v < 0:
                raise NegativeEntry(f"entry ({i + 1},{j + 1}) = {v} is negative")
            if kind == "vertex" and v not in (0, 1):
                raise NotZeroOne(f"entry ({i + 1},{j + 1}) = {v}; vertex kind needs 0-1")

    for i in range(n):
        if all(v == 0 for v in rows[i]):
            raise NotIrreducible(f"row {i + 1} is zero")
        if all(rows[j][i] == 0 for j in range(n)):
            raise NotIrreducible(f"column {i + 1} is zero")

    if all(sum(row) == 1 for row in rows) and \
            all(sum(rows[i][j] for i in range(n)) == 1 for j in range(n)):
        raise PermutationMatrix("matrix is a permutation matrix")

    def out(u):
        return [v for v in range(n) if rows[u][v] > 0]

    def into(u):
        return [v for v in range(n) if rows[v][u] > 0]

    fwd_seen, fwd_parent = _reachable(n, out)
    if not all(fwd_seen):
        bad = fwd_seen.index(False)
        raise NotIrreducible(f"vertex {bad + 1} unreachable from vertex 1")
    bwd_seen, bwd_parent = _reachable(n, into)
    if not all(bwd_seen):
        bad = bwd_seen.index(False)
        raise NotIrreducible(f"vertex 1 unreachable from vertex {bad + 1}")

    if vertex_labels is None:
        vertex_labels = tuple(str(i + 1) for i in range(n))
    else:
        vertex_labels = tuple(str(lab) for lab in vertex_labels)
        if len(vertex_labels) != n or len(set(vertex_labels)) != n:
            raise FormatError("vertex labels must be distinct and match the size")

    if kind == "vertex":
        symbols = vertex_labels
        edges = None
    else:
        edge_list = []
        labels = []
        for i in range(n):
            for j in range(n):
                for k in range(rows[i][j]):
                    edge_list.append((i, j, k))
                    base = f"{vertex_labels[i]}>{vertex_labels[j]}"
                    labels.append(base if rows[i][j] == 1 else f"{base}~{k}")
        edges = tuple(edge_list)
        symbols = tuple(labels)

    return SftPresentation(kind=kind, adjacency=rows, vertex_labels=vertex_labels,
                           symbols=symbols, edges=edges,
                           certificate=(tuple(fwd_parent), tuple(bwd_parent)))


# ------------------------------------------------------------------ counting

def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    return tuple(
        tuple(sum(a[i][k] * bt[j][k] for k in range(m)) for j in range(p))
        for i in range(n))


def _mat_pow_sum(m: Matrix, e: int) -> int:
    """Sum of all entries of m**e, exact."""
    n = len(m)
    acc: Matrix = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    base = m
    while e:
        if e & 1:
            acc = _mat_mul(acc, base)
        e >>= 1
        if e:
            base = _mat_mul(base, base)
    return sum(sum(row) for row in acc)


def count_words(p: SftPresentation, k: int) -> int:
    """|B_k| without enumeration: path counts from the adjacency matrix."""
    if k < 0:
        raise ValueError("word length must be nonnegative")
    if k == 0:
        return 1
    if p.kind == "vertex":
        return _mat_pow_sum(p.adjacency, k - 1)
    return _mat_pow_sum(p.adjacency, k)


@functools.lru_cache(maxsize=256)
def _word_list(p: SftPresentation, k: int) -> tuple[Word, ...]:
    result: list[Word] = []
    m = p.alphabet_size
    stack: list[int] = []

    def extend() -> None:
        if len(stack) == k:
            result.append(tuple(stack))
            return
        choices = range(m) if not stack else p.successors(stack[-1])
        for s in choices:
            stack.append(s)
            extend()
            stack.pop()

    extend()
    return tuple(result)


@functools.lru_cache(maxsize=256)
def _word_index(p: SftPresentation, k: int) -> dict[Word, int]:
    return {w: i for i, w in enumerate(_word_list(p, k))}


def words(p: SftPresentation, k: int, limits: Limits | None = None) -> tuple[Word, ...]:
    """All admissible words of length k, in frozen lexicographic order."""
    limits = limits or default_limits()
    count = count_words(p, k)
    if count > limits.max_words:
        raise EnvelopeExceeded(
            f"|B_{k}| = {count} exceeds the word cap {limits.max_words}")
    return _word_list(p, k)


def word_index(p: SftPresentation, k: int, limits: Limits | None = None) -> dict[Word, int]:
    words(p, k, limits)      # envelope check
    return _word_index(p, k)


# ------------------------------------------------------- eventually periodic

@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """Point u v v v ... in canonical form: primitive period, preperiod
    greedily minimized from the right."""

    presentation: SftPresentation
    preperiod: Word
    period: Word

    def prefix(self, m: int) -> Word:
        """First m symbols of the point."""
        out = list(self.preperiod[:m])
        i = 0
        per = self.period
        while len(out) < m:
            out.append(per[i % len(per)])
            i += 1
        return tuple(out)

    def label(self) -> str:
        p = self.presentation
        return f"{p.word_label(self.preperiod)}:{p.word_label(self.period)}"


def _primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    raise AssertionError("unreachable")


def periodic_point(p: SftPresentation, preperiod, period,
                   validate_word: bool = True) -> EventuallyPeriodicPoint:
    """Canonicalize u v^inf: primitive period, then absorb matching symbols
    from the right end of the preperiod by rotating the period."""
    pre = tuple(preperiod)
    per = tuple(period)
    if not per:
        raise Inadmissible("period must be nonempty")
    if validate_word:
        p.check_admissible(pre + per + per)
    per = _primitive_root(per)
    pre = list(pre)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return EventuallyPeriodicPoint(p, tuple(pre), per)


def parse_point(p: SftPresentation, token: str) -> EventuallyPeriodicPoint:
    """Parse "<preperiod>:<period>"; the preperiod part may be empty."""
    if ":" not in token:
        raise FormatError(f"point token {token!r} needs the form pre:period")
    pre_txt, per_txt = token.split(":", 1)
    return periodic_point(p, p.parse_word(pre_txt), p.parse_word(per_txt))


def shift_point(x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """Drop the first symbol."""
    if x.preperiod:
        return periodic_point(x.presentation, x.preperiod[1:], x.period,
                              validate_word=False)
    per = x.period
    return periodic_point(x.presentation, (), per[1:] + per[:1],
                          validate_word=False)


def shift_point_by(x: EventuallyPeriodicPoint, n: int) -> EventuallyPeriodicPoint:
    for _ in range(n):
        x = shift_point(x)
    return x


shift = shift_point


def enumerate_points(p: SftPresentation, max_preperiod: int, max_period: int,
                     limits: Limits | None = None) -> list[EventuallyPeriodicPoint]:
    """All canonical eventually periodic points with preperiod length up to
    max_preperiod and period length up to max_period, deduplicated, in a
    deterministic order."""
    limits = limits or default_limits()
    seen: dict[tuple[Word, Word], EventuallyPeriodicPoint] = {}
    prefixes: list[Word] = [()]
    for k in range(1, max_preperiod + 1):
        prefixes.extend(words(p, k, limits))
    for plen in range(1, max_period + 1):
        for per in words(p, plen, limits):
            if not p.follow(per[-1], per[0]):
                continue
            for pre in prefixes:
                if pre and not p.follow(pre[-1], per[0]):
                    continue
                x = periodic_point(p, pre, per, validate_word=False)
                seen.setdefault((x.preperiod, x.period), x)
    return [seen[key] for key in sorted(seen)]


# --------------------------------------------------------------- recodings

@dataclass(frozen=True)
class HigherBlockRecoding:
    """Edge-kind presentation on the k-block graph plus the symbol dictionaries.

    Vertices of the new graph are the admissible k-words, edges are the
    (k+1)-words; edge symbol i corresponds to word_of_symbol[i].
    """

    presentation: SftPresentation
    block_length: int                      # k
    vertex_words: tuple[Word, ...]         # B_k, lex order
    word_of_symbol: tuple[Word, ...]       # B_{k+1}, lex order
    symbol_of_word: dict[Word, int]


def _bracket_label(p: SftPresentation, w: Word) -> str:
    return "[" + p.word_label(w) + "]"


def higher_block(p: SftPresentation, k: int,
                 limits: Limits | None = None) -> HigherBlockRecoding:
    """Graph on B_k with edges B_{k+1}; overlap determines adjacency."""
    limits = limits or default_limits()
    if k < 1:
        raise ValueError("block length must be at least 1")
    verts = words(p, k, limits)
    vidx = word_index(p, k, limits)
    n = len(verts)
    adj = [[0] * n for _ in range(n)]
    edge_words = words(p, k + 1, limits)
    for w in edge_words:
        adj[vidx[w[:-1]]][vidx[w[1:]]] = 1
    labels = tuple(_bracket_label(p, w) for w in verts)
    pres = validate(adj, kind="edge", vertex_labels=labels, limits=limits)
    # validate() enumerates edges in lex (src, tgt) order, which coincides
    # with the lex order on the underlying (k+1)-words
    assert pres.alphabet_size == len(edge_words)
    relabeled = SftPresentation(
        kind="edge", adjacency=pres.adjacency, vertex_labels=labels,
        symbols=tuple(_bracket_label(p, w) for w in edge_words),
        edges=pres.edges, certificate=pres.certificate)
    return HigherBlockRecoding(
        presentation=relabeled, block_length=k, vertex_words=verts,
        word_of_symbol=edge_words,
        symbol_of_word=dict(_word_index(p, k + 1)))


@dataclass(frozen=True)
class EdgeForm:
    """Edge-kind presentation of a vertex-kind shift, with the symbol map."""

    presentation: SftPresentation
    pair_of_symbol: tuple[Word, ...]       # new symbol -> (i, j) vertex pair
    symbol_of_pair: dict[Word, int]


def to_edge_form(p: SftPresentation, limits: Limits | None = None) -> EdgeForm:
    """Recode a vertex-kind presentation over its edges; identity on edge kind."""
    limits = limits or default_limits()
    if p.kind == "edge":
        idents = tuple((s,) for s in range(p.alphabet_size))
        return EdgeForm(p, idents, {w: i for i, w in enumerate(idents)})
    pres = validate(p.adjacency, kind="edge", vertex_labels=p.vertex_labels,
                    limits=limits)
    pairs = tuple((src, tgt) for (src, tgt, _par) in pres.edges)
    return EdgeForm(pres, pairs, {pair: i for i, pair in enumerate(pairs)})


# ------------------------------------------------------------------ file I/O

def parse_matrix_text(text: str):
    """Parse the matrix file format.

    Line 1: ``matrix <kind> <n>`` (kind vertex|edge) or ``matrix rect <r> <c>``
    for plain rectangular integer matrices; following lines hold the rows.
    Lines starting with ``#`` and blank lines are ignored.
    Returns (kind, rows) where rows is a tuple of int tuples.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if not head or head[0] != "matrix":
        raise FormatError("matrix file must start with 'matrix <kind> <n>'")
    if len(head) == 3 and head[1] in ("vertex", "edge"):
        kind = head[1]
        try:
            n = int(head[2])
        except ValueError:
            raise FormatError(f"bad size {head[2]!r} in matrix header") from None
        r, c = n, n
    elif len(head) == 4 and head[1] == "rect":
        kind = "rect"
        try:
            r, c = int(head[2]), int(head[3])
        except ValueError:
            raise FormatError("bad sizes in rect matrix header") from None
    else:
        raise FormatError(f"bad matrix header {lines[0]!r}")
    if len(lines) - 1 != r:
        raise FormatError(f"expected {r} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != c:
            raise FormatError(f"row {line!r} has {len(parts)} entries, expected {c}")
        try:
            rows.append(tuple(int(v) for v in parts))
        except ValueError:
            raise FormatError(f"non-integer entry in row {line!r}") from None
    return kind, tuple(rows)


def format_matrix_text(kind: str, rows: Matrix) -> str:
    if kind == "rect":
        head = f"matrix rect {len(rows)} {len(rows[0])}"
    else:
        head = f"matrix {kind} {len(rows)}"
    body = "\n".join(" ".join(str(v) for v in row) for row in rows)
    return head + "\n" + body + "\n"


def load_matrix_file(path, limits: Limits | None = None) -> SftPresentation:
    with open(path, "r", encoding="ascii") as fh:
        kind, rows = parse_matrix_text(fh.read())
    if kind == "rect":
        raise FormatError("rect matrices do not present shifts; use vertex or edge")
    return validate(rows, kind=kind, limits=limits)
