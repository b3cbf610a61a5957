"""Matrix moves between shifts of finite type and their function transfer.

Two move families are implemented exactly:

* the state-splitting expansion of a 0-1 matrix at a chosen vertex, with the
  symbol-splitting map (split), the symbol-erasing map (merge), their cocycle
  data, and the induced pull/push operators on locally constant functions;
* elementary equivalences A = CD, B = DC over nonnegative integer matrices,
  with canonical edge-pair bijections and the induced transfer operators on
  functions of the two edge shifts, plus a bounded search for chains of
  elementary equivalences.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import cohomology as coh
from .config import Limits, default_limits
from .errors import (
    FormatError,
    InvalidResult,
    NotVertexKind,
    PresentationMismatch,
    SftError,
)
from .linalg import mat_mul
from .shifts import Matrix, SftPresentation, Word, validate, words
from .transducers import OrbitData, Transducer, make_transducer


# ------------------------------------------------------------- expansion

@dataclass(frozen=True)
class Expansion:
    """Vertex expansion of a 0-1 matrix.

    The expanded matrix has one extra vertex, listed first: its row is a copy
    of the chosen vertex's old row, the chosen vertex keeps a single edge to
    the new vertex, and every other row is unchanged.  split sends a point of
    the base shift to the expanded one by doubling the chosen symbol
    (v becomes v 0); merge erases the new symbol."""

    base: SftPresentation
    expanded: SftPresentation
    vertex: int
    split: Transducer
    merge: Transducer
    split_data: OrbitData
    merge_data: OrbitData

    def new_symbol(self) -> int:
        return 0

    def old_symbol(self, a: int) -> int:
        """Index of base symbol a inside the expanded presentation."""
        return a + 1


def expand(p: SftPresentation, vertex: int = 0,
           limits: Limits | None = None) -> Expansion:
    limits = limits or default_limits()
    if p.kind != "vertex":
        raise NotVertexKind("expansion needs a 0-1 vertex presentation")
    n = p.n_vertices
    if not (0 <= vertex < n):
        raise FormatError(f"vertex index {vertex} out of range")
    old = p.adjacency
    rows = [(0,) + old[vertex]]
    for i in range(n):
        if i == vertex:
            rows.append((1,) + (0,) * n)
        else:
            rows.append((0,) + old[i])
    fresh = "0"
    while fresh in p.vertex_labels:
        fresh = fresh + "'"
    labels = (fresh,) + p.vertex_labels
    expanded = validate(tuple(rows), "vertex", labels, limits)

    split_rules = []
    for a in range(n):
        out = (a + 1, 0) if a == vertex else (a + 1,)
        split_rules.append((0, a, 0, out))
    split = make_transducer(p, expanded, split_rules)

    merge_rules = [(0, 0, 0, ())]
    merge_rules += [(0, a + 1, 0, (a,)) for a in range(n)]
    merge = make_transducer(expanded, p, merge_rules)

    split_data = OrbitData(
        k1=coh.zero(p),
        l1=coh.function(p, 1, [2 if a == vertex else 1 for a in range(n)],
                        limits=limits))
    merge_data = OrbitData(
        k1=coh.zero(expanded),
        l1=coh.function(expanded, 1, [0] + [1] * n, limits=limits))
    return Expansion(base=p, expanded=expanded, vertex=vertex,
                     split=split, merge=merge,
                     split_data=split_data, merge_data=merge_data)


def _split_word(e: Expansion, w: Word) -> Word:
    out: list[int] = []
    for a in w:
        out.append(a + 1)
        if a == e.vertex:
            out.append(0)
    return tuple(out)


def psi_xi(e: Expansion, f_exp: coh.LocallyConstantFunction,
           limits: Limits | None = None) -> coh.LocallyConstantFunction:
    """Pull a function on the expanded shift back to the base shift along
    split: value at x is f(split x), plus f(shift(split x)) when x starts
    with the expanded vertex (the split image spends two steps there)."""
    limits = limits or default_limits()
    if f_exp.presentation != e.expanded:
        raise PresentationMismatch("function must live on the expanded shift")
    k = f_exp.depth
    depth = max(k, 1)
    values = []
    for w in words(e.base, depth, limits):
        img = _split_word(e, w)
        total = f_exp.value_on_word(img[:k])
        if w[0] == e.vertex:
            total = total + f_exp.value_on_word(img[1:k + 1])
        values.append(total)
    return coh.function(e.base, depth, values, f_exp.ring, limits)


def psi_eta(e: Expansion, f: coh.LocallyConstantFunction,
            limits: Limits | None = None) -> coh.LocallyConstantFunction:
    """Push a function on the base shift to the expanded shift along merge:
    zero on the cylinder of the new symbol, f(merge x) elsewhere.

    The new symbol is never followed by itself, so a word of length 2k-1
    always leaves at least k symbols after erasure."""
    limits = limits or default_limits()
    if f.presentation != e.base:
        raise PresentationMismatch("function must live on the base shift")
    k = f.depth
    depth = max(2 * k - 1, 1)
    values = []
    for w in words(e.expanded, depth, limits):
        if w[0] == 0:
            values.append(0)
            continue
        merged = tuple(a - 1 for a in w if a != 0)
        values.append(f.value_on_word(merged[:k]))
    return coh.function(e.expanded, depth, values, f.ring, limits)


# --------------------------------------------------- elementary equivalence

@dataclass(frozen=True)
class ElementaryEquivalence:
    """A = CD and B = DC with canonical edge bijections.

    Edges of the graph of A from i to j are matched with pairs
    (edge of C from i to k, edge of D from k to j) in lexicographic order of
    (k, C-copy, D-copy); symmetrically for B with (D-edge, C-edge) pairs."""

    c: Matrix
    d: Matrix
    a: SftPresentation                       # edge kind for CD
    b: SftPresentation                       # edge kind for DC
    z: Matrix                                # [[0, C], [D, 0]]
    c_edges: tuple[tuple[int, int, int], ...]
    d_edges: tuple[tuple[int, int, int], ...]
    a_pairs: tuple[tuple[int, int], ...]     # A-edge -> (C-edge, D-edge)
    b_pairs: tuple[tuple[int, int], ...]     # B-edge -> (D-edge, C-edge)

    def a_pair_index(self) -> dict[tuple[int, int], int]:
        if not hasattr(self, "_a_pair_index"):
            object.__setattr__(
                self, "_a_pair_index",
                {pair: s for s, pair in enumerate(self.a_pairs)})
        return self._a_pair_index

    def b_pair_index(self) -> dict[tuple[int, int], int]:
        if not hasattr(self, "_b_pair_index"):
            object.__setattr__(
                self, "_b_pair_index",
                {pair: s for s, pair in enumerate(self.b_pairs)})
        return self._b_pair_index


def _enumerate_bipartite(m: Matrix) -> tuple[tuple[int, int, int], ...]:
    out = []
    for i, row in enumerate(m):
        for j, entry in enumerate(row):
            for copy in range(entry):
                out.append((i, j, copy))
    return tuple(out)


def elementary(c, d, limits: Limits | None = None) -> ElementaryEquivalence:
    limits = limits or default_limits()
    c = tuple(tuple(int(v) for v in row) for row in c)
    d = tuple(tuple(int(v) for v in row) for row in d)
    n = len(c)
    m = len(d)
    if n == 0 or m == 0 or any(len(row) != m for row in c) \
            or any(len(row) != n for row in d):
        raise FormatError("need C of shape n x m and D of shape m x n")
    if any(v < 0 for row in itertools.chain(c, d) for v in row):
        raise InvalidResult("factor matrices must be nonnegative")
    a_mat = mat_mul(c, d)
    b_mat = mat_mul(d, c)
    try:
        a = validate(a_mat, "edge", None, limits)
        b = validate(b_mat, "edge", None, limits)
    except SftError as exc:
        raise InvalidResult(f"product is not a valid presentation: {exc}") from exc

    z = tuple(((0,) * n + c[i]) if i < n else (d[i - n] + (0,) * m)
              for i in range(n + m))
    zz = mat_mul(z, z)
    for i in range(n + m):
        for j in range(n + m):
            want = 0
            if i < n and j < n:
                want = a_mat[i][j]
            elif i >= n and j >= n:
                want = b_mat[i - n][j - n]
            assert zz[i][j] == want, "block square identity failed"

    c_edges = _enumerate_bipartite(c)
    d_edges = _enumerate_bipartite(d)
    c_index = {e: s for s, e in enumerate(c_edges)}
    d_index = {e: s for s, e in enumerate(d_edges)}

    a_pairs = []
    through: list[tuple[int, int]] = []
    for (i, j, p) in a.edges:
        if p == 0:
            through = [
                (c_index[(i, k, ci)], d_index[(k, j, di)])
                for k in range(m)
                for ci in range(c[i][k])
                for di in range(d[k][j])]
            assert len(through) == a_mat[i][j]
        a_pairs.append(through[p])
    b_pairs = []
    through = []
    for (k, l, q) in b.edges:
        if q == 0:
            through = [
                (d_index[(k, j, di)], c_index[(j, l, ci)])
                for j in range(n)
                for di in range(d[k][j])
                for ci in range(c[j][l])]
            assert len(through) == b_mat[k][l]
        b_pairs.append(through[q])

    return ElementaryEquivalence(
        c=c, d=d, a=a, b=b, z=z,
        c_edges=c_edges, d_edges=d_edges,
        a_pairs=tuple(a_pairs), b_pairs=tuple(b_pairs))


def phi(ee: ElementaryEquivalence, f: coh.LocallyConstantFunction,
        limits: Limits | None = None) -> coh.LocallyConstantFunction:
    """Transfer a function on the edge shift of A = CD to the edge shift of
    B = DC: decompose each B-edge as (D-edge, C-edge) and reassemble the
    interleaved (C-edge, D-edge) pairs into A-edges, one step later."""
    limits = limits or default_limits()
    if f.presentation != ee.a:
        raise PresentationMismatch("function must live on the edge shift of CD")
    k = f.depth
    index = ee.a_pair_index()
    values = []
    for w in words(ee.b, k + 1, limits):
        pairs = [ee.b_pairs[s] for s in w]
        a_word = tuple(
            index[(pairs[t][1], pairs[t + 1][0])] for t in range(k))
        values.append(f.value_on_word(a_word))
    return coh.function(ee.b, k + 1, values, f.ring, limits)


def psi(ee: ElementaryEquivalence, g: coh.LocallyConstantFunction,
        limits: Limits | None = None) -> coh.LocallyConstantFunction:
    """Transfer in the other direction, from the edge shift of B = DC to the
    edge shift of A = CD."""
    limits = limits or default_limits()
    if g.presentation != ee.b:
        raise PresentationMismatch("function must live on the edge shift of DC")
    k = g.depth
    index = ee.b_pair_index()
    values = []
    for w in words(ee.a, k + 1, limits):
        pairs = [ee.a_pairs[s] for s in w]
        b_word = tuple(
            index[(pairs[t][1], pairs[t + 1][0])] for t in range(k))
        values.append(g.value_on_word(b_word))
    return coh.function(ee.a, k + 1, values, g.ring, limits)


# ------------------------------------------------------------- SSE search

def _solve_factor_column(c: Matrix, target: tuple[int, ...], bound: int,
                         cap: int) -> list[tuple[int, ...]]:
    """All d in [0, bound]^m with C d = target, lexicographic, at most cap."""
    n = len(c)
    m = len(c[0])
    solutions: list[tuple[int, ...]] = []
    partial = [0] * m

    def place(pos: int, rest: tuple[int, ...]) -> None:
        if len(solutions) >= cap:
            return
        if pos == m:
            if all(v == 0 for v in rest):
                solutions.append(tuple(partial))
            return
        col = tuple(c[i][pos] for i in range(n))
        for v in range(bound + 1):
            nrest = tuple(rest[i] - col[i] * v for i in range(n))
            if any(x < 0 for x in nrest):
                break        # entries are nonnegative, larger v only worsens
            partial[pos] = v
            place(pos + 1, nrest)
        partial[pos] = 0

    place(0, target)
    return solutions


@dataclass(frozen=True)
class SseSearchResult:
    """found is None when no chain within the bounds was encountered; that
    outcome does not certify the absence of a strong shift equivalence."""

    found: tuple[ElementaryEquivalence, ...] | None
    nodes_explored: int
    attempts: int


def sse_search(a_matrix, b_matrix, inner_dim_bound: int | None = None,
               entry_bound: int | None = None, chain_bound: int | None = None,
               limits: Limits | None = None) -> SseSearchResult:
    """Breadth-first search for a chain of elementary equivalences from A to
    B.  Every factorization A' = C D with inner dimension and entries within
    the bounds yields the neighbour D C.  Exponential in the bounds."""
    limits = limits or default_limits()
    if inner_dim_bound is None:
        inner_dim_bound = limits.sse_inner_dim
    if entry_bound is None:
        entry_bound = limits.sse_entry_bound
    if chain_bound is None:
        chain_bound = limits.sse_chain_bound
    budget = limits.sse_node_budget

    start = tuple(tuple(int(v) for v in row) for row in a_matrix)
    goal = tuple(tuple(int(v) for v in row) for row in b_matrix)
    parents: dict[Matrix, tuple[Matrix, ElementaryEquivalence] | None] = {start: None}
    frontier = [start]
    depth = 0
    nodes = 0
    attempts = 0

    def chain_to(node: Matrix) -> tuple[ElementaryEquivalence, ...]:
        steps = []
        while parents[node] is not None:
            node, ee = parents[node]
            steps.append(ee)
        steps.reverse()
        return tuple(steps)

    if start == goal:
        return SseSearchResult((), 0, 0)

    while frontier and depth < chain_bound and attempts <= budget:
        nxt = []
        for node in frontier:
            nodes += 1
            n = len(node)
            for m in range(1, inner_dim_bound + 1):
                for flat in itertools.product(range(entry_bound + 1), repeat=n * m):
                    attempts += 1
                    if attempts > budget:
                        return SseSearchResult(None, nodes, attempts)
                    c = tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(n))
                    if any(all(v == 0 for v in row) for row in c):
                        continue
                    per_column = []
                    feasible = True
                    for j in range(n):
                        target = tuple(node[i][j] for i in range(n))
                        sols = _solve_factor_column(c, target, entry_bound, 16)
                        if not sols:
                            feasible = False
                            break
                        per_column.append(sols)
                    if not feasible:
                        continue
                    for combo in itertools.product(*per_column):
                        attempts += 1
                        if attempts > budget:
                            return SseSearchResult(None, nodes, attempts)
                        d = tuple(tuple(combo[j][i] for j in range(n))
                                  for i in range(m))
                        try:
                            ee = elementary(c, d, limits)
                        except (InvalidResult, SftError):
                            continue
                        neighbour = ee.b.adjacency
                        if neighbour in parents:
                            continue
                        parents[neighbour] = (node, ee)
                        if neighbour == goal:
                            return SseSearchResult(chain_to(neighbour),
                                                   nodes, attempts)
                        nxt.append(neighbour)
        frontier = nxt
        depth += 1
    return SseSearchResult(None, nodes, attempts)
