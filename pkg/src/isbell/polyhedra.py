"""Witness polyhedra ``Cell(Y)`` via difference constraints.

With ``x_c = f(c)`` and ``y_d = -g(d)`` every Isbell inequality
``f(c) + g(d) <= M(c, d)`` reads ``x_c - y_d <= M(c, d)``, an arc ``d -> c`` of
weight ``M(c, d)``; an equality on ``(c, d)`` adds the reverse arc ``c -> d`` of
weight ``-M(c, d)``.  Feasibility is the absence of a negative cycle, and all
exact geometry of a cell is read off the all-pairs shortest-path table.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CapExceededError, InputError, UnsupportedError
from .extreal import ext
from .gap import Pair, witness_relation
from .profunctor import NucleusPoint, Potential, Profunctor

DEFAULT_CAP = 20
MAX_PERMUTATION_N = 8


@dataclass(frozen=True)
class GaugeSlice:
    """Pins ``f(base_row) = 0`` in all polyhedral computations."""

    base_row: str

    @classmethod
    def default(cls, M: Profunctor) -> GaugeSlice:
        return cls(M.rows[0])


@dataclass(frozen=True)
class CellDescriptor:
    """A closed admissible witness set with its dimension and a relative-interior point."""

    tight_set: frozenset[Pair]
    dimension: int
    interior_point: NucleusPoint

    def sort_key(self):
        M = self.interior_point.profunctor
        return (self.dimension, sorted_pairs(M, self.tight_set))


def sorted_pairs(M: Profunctor, pairs: Iterable[Pair]) -> list[Pair]:
    """Pairs in matrix (row-major) order."""
    return sorted(pairs, key=lambda p: (M.row_index(p[0]), M.col_index(p[1])))


def _require_finite(M: Profunctor) -> list[list[Fraction]]:
    if not M.is_finite:
        raise UnsupportedError("polyhedral computations need a matrix with finite entries")
    return M.fractions()


def _scaled(M: Profunctor) -> tuple[list[list[int]], int]:
    """Integer matrix ``L * M`` with ``L`` the common denominator (integers are fast)."""
    A = _require_finite(M)
    L = math.lcm(*(x.denominator for row in A for x in row))
    return [[int(x * L) for x in row] for row in A], L


def _index_pairs(M: Profunctor, Y: Iterable[Pair]) -> set[tuple[int, int]]:
    return {(M.row_index(c), M.col_index(d)) for c, d in Y}


def _label_pairs(M: Profunctor, Y: Iterable[tuple[int, int]]) -> frozenset[Pair]:
    return frozenset((M.rows[i], M.cols[j]) for i, j in Y)


class _Graph:
    """Constraint graph on ``C + D`` with a cached all-pairs shortest-path table."""

    def __init__(self, A: list[list[int]], Y: set[tuple[int, int]],
                 shrink: dict[tuple[int, int], int] | None = None):
        self.A = A
        self.m, self.n = len(A), len(A[0])
        N = self.m + self.n
        INF = None
        dist = [[INF] * N for _ in range(N)]
        for v in range(N):
            dist[v][v] = 0
        shrink = shrink or {}
        for i in range(self.m):
            for j in range(self.n):
                w = A[i][j] - shrink.get((i, j), 0)
                d_node, c_node = self.m + j, i
                if dist[d_node][c_node] is None or w < dist[d_node][c_node]:
                    dist[d_node][c_node] = w
        for i, j in Y:
            w = -A[i][j]
            c_node, d_node = i, self.m + j
            if dist[c_node][d_node] is None or w < dist[c_node][d_node]:
                dist[c_node][d_node] = w
        for k in range(N):
            dk = dist[k]
            for u in range(N):
                duk = dist[u][k]
                if duk is None:
                    continue
                du = dist[u]
                for v in range(N):
                    dkv = dk[v]
                    if dkv is None:
                        continue
                    cand = duk + dkv
                    if du[v] is None or cand < du[v]:
                        du[v] = cand
        self.dist = dist
        self.feasible = all(dist[v][v] >= 0 for v in range(N))

    def c_to_d(self, i: int, j: int) -> int | None:
        return self.dist[i][self.m + j]

    def potentials(self) -> tuple[list[int], list[int]]:
        """Shortest-path potentials from a virtual zero source, gauged so ``x_0 = 0``.

        Returns ``(f, g)`` in the graph's integer scale.
        """
        N = self.m + self.n
        pot = [min(0, *(self.dist[u][v] for u in range(N)
                        if self.dist[u][v] is not None))
               for v in range(N)]
        x0 = pot[0]
        f = [pot[i] - x0 for i in range(self.m)]
        g = [x0 - pot[self.m + j] for j in range(self.n)]
        return f, g


def _forced(graph: _Graph, Y: set[tuple[int, int]]) -> set[tuple[int, int]]:
    out = set(Y)
    for i in range(graph.m):
        for j in range(graph.n):
            d = graph.c_to_d(i, j)
            if d is not None and d == -graph.A[i][j]:
                out.add((i, j))
    return out


def cell_feasible(M: Profunctor, Y: Iterable[Pair]) -> bool:
    """Whether ``Cell(Y)`` is nonempty (no negative cycle in the constraint graph)."""
    A, _ = _scaled(M)
    return _Graph(A, _index_pairs(M, Y)).feasible


def tight_closure(M: Profunctor, Y: Iterable[Pair]) -> frozenset[Pair]:
    """All pairs that are tight at every point of ``Cell(Y)``."""
    A, _ = _scaled(M)
    Yi = _index_pairs(M, Y)
    graph = _Graph(A, Yi)
    if not graph.feasible:
        raise InputError("Cell(Y) is empty; tight closure is undefined")
    return _label_pairs(M, _forced(graph, Yi))


def covers(M: Profunctor, Y: Iterable[Pair]) -> bool:
    Y = list(Y)
    return {c for c, _ in Y} == set(M.rows) and {d for _, d in Y} == set(M.cols)


def in_cell(M: Profunctor, Y: Iterable[Pair], f: Potential, g: Potential,
            base_row: str | None = None) -> bool:
    """Direct membership test: all inequalities, the ``Y`` equalities and the gauge."""
    A = _require_finite(M)
    if not (f.is_finite and g.is_finite):
        return False
    fv = [v.value for v in f.values]
    gv = [v.value for v in g.values]
    base = M.row_index(base_row if base_row is not None else M.rows[0])
    if fv[base] != 0:
        return False
    for i in range(len(fv)):
        for j in range(len(gv)):
            if fv[i] + gv[j] > A[i][j]:
                return False
    return all(fv[i] + gv[j] == A[i][j] for i, j in _index_pairs(M, Y))


def _point(M: Profunctor, f: list[Fraction], g: list[Fraction]) -> NucleusPoint:
    return NucleusPoint(
        M,
        Potential.presheaf(M, [ext(x) for x in f]),
        Potential.copresheaf(M, [ext(x) for x in g]),
    )


def _regauge(f, g, base: int):
    s = f[base]
    return [x - s for x in f], [y + s for y in g]


def interior_point(M: Profunctor, Y: Iterable[Pair], base_row: str | None = None) -> NucleusPoint:
    """A point of ``Cell(Y)`` whose witness relation is exactly ``Y``.

    ``Y`` must be closed under :func:`tight_closure` and cover both sides.  The
    result is the average of one strictly-slack witness per non-forced pair.
    """
    A, L = _scaled(M)
    Yi = _index_pairs(M, Y)
    if not covers(M, Y):
        raise InputError("Y must cover every row and every column")
    graph = _Graph(A, Yi)
    if not graph.feasible:
        raise InputError("Cell(Y) is empty")
    if _forced(graph, Yi) != Yi:
        raise InputError("Y is not closed; call tight_closure first")
    base = M.row_index(base_row) if base_row is not None else 0
    m, n = graph.m, graph.n
    # doubled scale keeps the half-slack (dist + M) / 2 integral
    A2 = [[2 * x for x in row] for row in A]
    witnesses = []
    for i in range(m):
        for j in range(n):
            if (i, j) in Yi:
                continue
            d = graph.c_to_d(i, j)
            eps2 = 2 if d is None else d + A[i][j]
            sub = _Graph(A2, Yi, shrink={(i, j): eps2})
            witnesses.append(_regauge(*sub.potentials(), base))
    if not witnesses:
        f0, g0 = graph.potentials()
        witnesses.append(_regauge([2 * x for x in f0], [2 * y for y in g0], base))
    denom = 2 * L * len(witnesses)
    f = [Fraction(sum(w[0][i] for w in witnesses), denom) for i in range(m)]
    g = [Fraction(sum(w[1][j] for w in witnesses), denom) for j in range(n)]
    return _point(M, f, g)


def cell_dimension(M: Profunctor, Y: Iterable[Pair]) -> int:
    """Connected components of the bipartite graph ``(C + D, Y)`` minus one."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in M.rows:
        parent[("c", c)] = ("c", c)
    for d in M.cols:
        parent[("d", d)] = ("d", d)
    for c, d in Y:
        a, b = find(("c", c)), find(("d", d))
        if a != b:
            parent[a] = b
    return len({find(x) for x in parent}) - 1


def _check_cap(M: Profunctor, cap: int):
    size = len(M.rows) * len(M.cols)
    if size > cap:
        raise CapExceededError(
            f"|C|*|D| = {size} exceeds the enumeration cap {cap}; cell enumeration is "
            "exponential in the number of matrix entries.  Pass a larger cap "
            "explicitly if you accept the cost."
        )


def closed_sets_bruteforce(M: Profunctor, cap: int = DEFAULT_CAP) -> set[frozenset[Pair]]:
    """Closed admissible sets by trying every covering subset of ``C x D``."""
    A, _ = _scaled(M)
    _check_cap(M, cap)
    m, n = len(A), len(A[0])
    cells = list(itertools.product(range(m), range(n)))
    found = set()
    for mask in range(1 << len(cells)):
        Y = {cells[k] for k in range(len(cells)) if mask >> k & 1}
        if {i for i, _ in Y} != set(range(m)) or {j for _, j in Y} != set(range(n)):
            continue
        graph = _Graph(A, Y)
        if graph.feasible:
            found.add(frozenset(_forced(graph, Y)))
    return {_label_pairs(M, Y) for Y in found}


def closed_sets_search(M: Profunctor, cap: int = DEFAULT_CAP) -> set[frozenset[Pair]]:
    """Closed admissible sets by walking the face lattice of the Isbell polyhedron.

    Starting from the closure of the empty set, each closed set is extended by
    one pair at a time and re-closed; every closed feasible set is reached.
    """
    A, _ = _scaled(M)
    _check_cap(M, cap)
    m, n = len(A), len(A[0])
    start = frozenset(_forced(_Graph(A, set()), set()))
    seen = {start}
    stack = [start]
    while stack:
        S = stack.pop()
        for i in range(m):
            for j in range(n):
                if (i, j) in S:
                    continue
                Y = set(S) | {(i, j)}
                graph = _Graph(A, Y)
                if not graph.feasible:
                    continue
                T = frozenset(_forced(graph, Y))
                if T not in seen:
                    seen.add(T)
                    stack.append(T)
    out = set()
    for S in seen:
        if {i for i, _ in S} == set(range(m)) and {j for _, j in S} == set(range(n)):
            out.add(_label_pairs(M, S))
    return out


def enumerate_cells(M: Profunctor, cap: int = DEFAULT_CAP, method: str = "search",
                    base_row: str | None = None) -> list[CellDescriptor]:
    """Every cell of the witness complex, sorted by dimension then tight set.

    ``method="brute"`` tries all covering subsets; ``"search"`` (default) walks
    the face lattice and returns the same family.
    """
    if method == "brute":
        closed = closed_sets_bruteforce(M, cap)
    elif method == "search":
        closed = closed_sets_search(M, cap)
    else:
        raise InputError(f"unknown enumeration method {method!r}")
    cells = [
        CellDescriptor(Y, cell_dimension(M, Y), interior_point(M, Y, base_row))
        for Y in closed
    ]
    cells.sort(key=CellDescriptor.sort_key)
    return cells


def face_poset(cells: list[CellDescriptor]) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` of cell indices with cell ``a`` a proper face of cell ``b``."""
    out = []
    for a, ca in enumerate(cells):
        for b, cb in enumerate(cells):
            if a != b and cb.tight_set < ca.tight_set:
                out.append((a, b))
    return out


def cell_containing(cells: list[CellDescriptor], p: NucleusPoint) -> CellDescriptor:
    Z = witness_relation(p)
    for cell in cells:
        if cell.tight_set == Z:
            return cell
    raise InputError("no enumerated cell has this point's witness relation")


# ---------------------------------------------------------------------------
# square matrices and permutation cells

Permutation = tuple[str, ...]


def _square(M: Profunctor) -> list[list[Fraction]]:
    A = _require_finite(M)
    if len(M.rows) != len(M.cols):
        raise InputError(f"need a square matrix, got {len(M.rows)}x{len(M.cols)}")
    if len(M.rows) > MAX_PERMUTATION_N:
        raise CapExceededError(
            f"n = {len(M.rows)} > {MAX_PERMUTATION_N}; brute force over n! permutations refused"
        )
    return A


def tropical_value(M: Profunctor) -> tuple[Fraction, set[Permutation]]:
    """``val(M) = min_sigma sum_c M(c, sigma(c))`` and all minimizing permutations.

    A permutation is the tuple of column labels assigned to the rows in order.
    """
    A = _square(M)
    n = len(A)
    best = None
    argmin: set[Permutation] = set()
    for perm in itertools.permutations(range(n)):
        cost = sum(A[i][perm[i]] for i in range(n))
        if best is None or cost < best:
            best, argmin = cost, {perm}
        elif cost == best:
            argmin.add(perm)
    return best, {tuple(M.cols[j] for j in p) for p in argmin}


def permutation_graph(M: Profunctor, sigma: Permutation) -> frozenset[Pair]:
    return frozenset(zip(M.rows, sigma))


def permutation_witness(M: Profunctor, sigma: Permutation,
                        base_row: str | None = None) -> NucleusPoint:
    """A point of ``Cell(graph of sigma)`` from shortest paths on the row graph.

    Arc ``c -> c'`` has weight ``M(c', sigma(c)) - M(c, sigma(c))``; ``f`` is the
    distance from the base row and ``g(sigma(c)) = M(c, sigma(c)) - f(c)``.
    Raises :class:`InputError` when a negative cycle shows ``sigma`` is not optimal.
    """
    A = _square(M)
    n = len(A)
    s = [M.col_index(d) for d in sigma]
    if sorted(s) != list(range(n)):
        raise InputError(f"{sigma!r} is not a permutation of the columns")
    base = M.row_index(base_row) if base_row is not None else 0
    dist: list[Fraction | None] = [None] * n
    dist[base] = Fraction(0)
    for _ in range(n):
        changed = False
        for c in range(n):
            if dist[c] is None:
                continue
            for c2 in range(n):
                w = A[c2][s[c]] - A[c][s[c]]
                if dist[c2] is None or dist[c] + w < dist[c2]:
                    dist[c2] = dist[c] + w
                    changed = True
        if not changed:
            break
    else:
        raise InputError(f"negative cycle: permutation {sigma!r} is not optimal")
    f = dist
    g = [Fraction(0)] * n
    for c in range(n):
        g[s[c]] = A[c][s[c]] - f[c]
    return _point(M, f, g)


def admissible_permutations(M: Profunctor) -> set[Permutation]:
    """Permutations whose graph is an admissible witness set.

    These are the optimal assignments; each is confirmed by a feasibility check
    and an explicit witness point.
    """
    _, optimal = tropical_value(M)
    for sigma in optimal:
        Y = permutation_graph(M, sigma)
        if not cell_feasible(M, Y):
            raise AssertionError(f"optimal permutation {sigma} has an empty cell")
        p = permutation_witness(M, sigma)
        if not in_cell(M, Y, p.f, p.g):
            raise AssertionError(f"witness for {sigma} is not in its cell")
    return optimal
