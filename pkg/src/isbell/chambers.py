"""Order chambers: regions of a witness cell where the preorder of gap values is constant.

Inside a closed witness cell every gap entry is an affine function of the
cell's free coordinates.  Each connected component of the bipartite witness
graph carries one translation parameter ``t_k`` (the component of the base
row is pinned), and

    delta(c, d) = delta_0(c, d) - t[comp(c)] + t[comp(d)].

Ties ``delta_p = delta_q`` are therefore hyperplanes, and the chambers of a
cell are the chambers of that arrangement restricted to the open cell.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Sequence

from .errors import InputError, UnsupportedError
from .extreal import ExtReal, ext
from .gap import Pair, gap_matrix
from .linear import Constraint, eq, linear_feasible, lt
from .polyhedra import CellDescriptor, enumerate_cells, sorted_pairs
from .profunctor import NucleusPoint, Potential, Profunctor


@dataclass(frozen=True, eq=False)
class OrderSignature:
    """Ordered partition ``E_0 < E_1 < ... < E_m`` of ``C x D`` by gap value.

    Identity is the sequence of blocks as sets; ``block_values`` is diagnostic.
    """

    blocks: tuple[tuple[Pair, ...], ...]
    block_values: tuple[ExtReal, ...] = ()

    def _key(self):
        return tuple(frozenset(b) for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, OrderSignature):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def witnesses(self) -> frozenset[Pair]:
        return frozenset(self.blocks[0])

    def rank(self) -> dict[Pair, int]:
        return {p: k for k, block in enumerate(self.blocks) for p in block}

    def is_strict(self) -> bool:
        """True when every block past the witness block is a single pair."""
        return all(len(b) == 1 for b in self.blocks[1:])

    def merge(self, i: int) -> OrderSignature:
        """Tie blocks ``i`` and ``i + 1``."""
        if not 0 <= i < len(self.blocks) - 1:
            raise InputError(f"no adjacent blocks at {i}")
        merged = self.blocks[i] + self.blocks[i + 1]
        blocks = self.blocks[:i] + (merged,) + self.blocks[i + 2:]
        return OrderSignature(blocks)

    def swap(self, i: int) -> OrderSignature:
        """Exchange the order of blocks ``i`` and ``i + 1``."""
        b = list(self.blocks)
        b[i], b[i + 1] = b[i + 1], b[i]
        return OrderSignature(tuple(b))


def signature_at(M: Profunctor, p: NucleusPoint) -> OrderSignature:
    """Blocks of equal gap values in ascending order (exact ties)."""
    if not p.is_finite:
        raise UnsupportedError("signatures need finite-valued nucleus points")
    gap = gap_matrix(M, p)
    order = {pair: k for k, pair in enumerate(gap.pairs())}
    items = sorted(gap.items(), key=lambda kv: (kv[1], order[kv[0]]))
    blocks, values = [], []
    for value, grp in groupby(items, key=lambda kv: kv[1]):
        blocks.append(tuple(pair for pair, _ in grp))
        values.append(value)
    return OrderSignature(tuple(blocks), tuple(values))


class CellChart:
    """Affine coordinates ``t`` on one witness cell around a base point."""

    def __init__(self, M: Profunctor, cell: CellDescriptor):
        if not M.is_finite:
            raise UnsupportedError("chambers need a matrix with finite entries")
        self.M = M
        self.cell = cell
        p0 = cell.interior_point
        self.f0 = [v.value for v in p0.f.values]
        self.g0 = [v.value for v in p0.g.values]
        gap = gap_matrix(M, p0)
        self.delta0 = {pair: v.value for pair, v in gap.items()}
        # components of the witness graph; the base row's component is pinned
        comp: dict[tuple[str, str], int] = {}
        adj: dict[tuple[str, str], list] = {("c", c): [] for c in M.rows}
        adj.update({("d", d): [] for d in M.cols})
        for c, d in cell.tight_set:
            adj[("c", c)].append(("d", d))
            adj[("d", d)].append(("c", c))
        order = [("c", M.rows[0])] + [("c", c) for c in M.rows[1:]] + [("d", d) for d in M.cols]
        k = 0
        for start in order:
            if start in comp:
                continue
            comp[start] = k
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v not in comp:
                        comp[v] = k
                        queue.append(v)
            k += 1
        self.comp = comp
        self.dim = k - 1
        self.free_pairs = [p for p in gap.pairs() if p not in cell.tight_set]

    def _unit(self, node) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        k = self.comp[node]
        if k > 0:
            v[k - 1] = Fraction(1)
        return v

    def gap_form(self, pair: Pair) -> tuple[tuple[Fraction, ...], Fraction]:
        """``delta(pair)`` as ``(coeffs, const)`` in the chart coordinates."""
        c, d = pair
        uc, ud = self._unit(("c", c)), self._unit(("d", d))
        return tuple(b - a for a, b in zip(uc, ud)), self.delta0[pair]

    def tie_form(self, p: Pair, q: Pair) -> tuple[tuple[Fraction, ...], Fraction]:
        """``delta(p) - delta(q)`` in the chart coordinates."""
        a, ca = self.gap_form(p)
        b, cb = self.gap_form(q)
        return tuple(x - y for x, y in zip(a, b)), ca - cb

    def point(self, t: Sequence[Fraction]) -> NucleusPoint:
        def shift(node):
            k = self.comp[node]
            return Fraction(0) if k == 0 else Fraction(t[k - 1])

        M = self.M
        f = [self.f0[i] + shift(("c", c)) for i, c in enumerate(M.rows)]
        g = [self.g0[j] - shift(("d", d)) for j, d in enumerate(M.cols)]
        return NucleusPoint(
            M,
            Potential.presheaf(M, [ext(x) for x in f]),
            Potential.copresheaf(M, [ext(x) for x in g]),
        )

    def open_cell(self) -> list[Constraint]:
        """Strict positivity of every non-witness gap: the relative interior."""
        out = []
        for p in self.free_pairs:
            a, c = self.gap_form(p)
            out.append(lt(tuple(-x for x in a), -c))
        return out

    def closed_cell(self) -> list[Constraint]:
        return [Constraint(c.coeffs, c.const, "<=") for c in self.open_cell()]

    def signature_constraints(self, sig: OrderSignature) -> list[Constraint]:
        """Exact region of ``sig`` inside this cell (ties as equalities, order strict)."""
        if sig.witnesses != self.cell.tight_set:
            raise InputError("signature's witness block differs from the cell's tight set")
        out = []
        blocks = sig.blocks
        for block in blocks[1:]:
            rep = block[0]
            for q in block[1:]:
                a, c = self.tie_form(q, rep)
                out.append(eq(a, c))
        if len(blocks) > 1:
            a, c = self.gap_form(blocks[1][0])
            out.append(lt(tuple(-x for x in a), -c))
        for b1, b2 in zip(blocks[1:], blocks[2:]):
            a, c = self.tie_form(b1[0], b2[0])
            out.append(lt(a, c))
        return out


@dataclass(frozen=True)
class Hyperplane:
    """A nontrivial tie ``delta_p = delta_q`` normalized to a leading coefficient of 1."""

    coeffs: tuple[Fraction, ...]
    const: Fraction
    ties: tuple[tuple[Pair, Pair], ...] = field(compare=False, hash=False, default=())

    def value(self, t) -> Fraction:
        return sum((a * x for a, x in zip(self.coeffs, t)), self.const)


def _hyperplanes(chart: CellChart) -> list[Hyperplane]:
    found: dict[tuple, list] = {}
    pairs = chart.free_pairs
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            a, c = chart.tie_form(p, q)
            lead = next((x for x in a if x != 0), None)
            if lead is None:
                continue
            key = (tuple(x / lead for x in a), c / lead)
            found.setdefault(key, []).append((p, q))
    return [Hyperplane(k[0], k[1], tuple(v)) for k, v in sorted(found.items())]


def _sign_constraints(hps: list[Hyperplane], signs: Sequence[int],
                      skip: int | None = None) -> list[Constraint]:
    out = []
    for k, (h, s) in enumerate(zip(hps, signs)):
        if k == skip:
            out.append(eq(h.coeffs, h.const))
        elif s > 0:
            out.append(lt(tuple(-x for x in h.coeffs), -h.const))
        else:
            out.append(lt(h.coeffs, h.const))
    return out


def _signs(hps: list[Hyperplane], t) -> tuple[int, ...]:
    out = []
    for h in hps:
        v = h.value(t)
        if v == 0:
            raise AssertionError("sample point lies on a chamber wall")
        out.append(1 if v > 0 else -1)
    return tuple(out)


def _generic_start(chart: CellChart, hps: list[Hyperplane]) -> tuple[Fraction, ...]:
    """Nudge the cell's interior point off every tie hyperplane."""
    t0 = (Fraction(0),) * chart.dim
    cell_forms = [chart.gap_form(p) for p in chart.free_pairs]
    for attempt in range(1, 50):
        v = tuple(Fraction(1, (attempt + 1) ** (i + 1) + i) for i in range(chart.dim))
        slopes = [sum(a * x for a, x in zip(h.coeffs, v)) for h in hps]
        if any(h.value(t0) == 0 and s == 0 for h, s in zip(hps, slopes)):
            continue
        limit = None
        for h, s in zip(hps, slopes):
            val = h.value(t0)
            if val != 0 and s != 0 and (val > 0) != (s > 0):
                r = abs(val / s)
                limit = r if limit is None else min(limit, r)
        for a, c in cell_forms:
            s = sum(x * y for x, y in zip(a, v))
            if s < 0:
                r = c / -s
                limit = r if limit is None else min(limit, r)
        step = Fraction(1) if limit is None else limit / 2
        t = tuple(x + step * y for x, y in zip(t0, v))
        if all(h.value(t) != 0 for h in hps):
            return t
    raise AssertionError("could not find a generic point in the cell")


@dataclass(frozen=True)
class Chamber:
    signature: OrderSignature
    point: NucleusPoint
    coords: tuple[Fraction, ...]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class Wall:
    """A shared facet between chambers ``a`` and ``b`` (indices into the chamber list)."""

    a: int
    b: int
    hyperplane: Hyperplane


@dataclass
class CellChambers:
    cell: CellDescriptor
    chart: CellChart
    hyperplanes: list[Hyperplane]
    chambers: list[Chamber]
    walls: list[Wall]

    def index_of(self, sig: OrderSignature) -> int:
        for k, ch in enumerate(self.chambers):
            if ch.signature == sig:
                return k
        raise KeyError(sig)

    def signatures(self) -> set[OrderSignature]:
        return {ch.signature for ch in self.chambers}


def enumerate_chambers(M: Profunctor, cell: CellDescriptor) -> CellChambers:
    """All full-dimensional chambers of a cell by breadth-first wall crossing."""
    chart = CellChart(M, cell)
    hps = _hyperplanes(chart)
    open_cell = chart.open_cell()
    if linear_feasible(open_cell, chart.dim) is None:
        raise InputError("cell has an empty relative interior")
    if chart.dim == 0 or not hps:
        t = (Fraction(0),) * chart.dim
        p = chart.point(t)
        ch = Chamber(signature_at(M, p), p, t, tuple(1 for _ in hps))
        return CellChambers(cell, chart, hps, [ch], [])

    t0 = _generic_start(chart, hps)
    chambers: list[Chamber] = []
    by_signs: dict[tuple[int, ...], int] = {}
    walls: list[Wall] = []
    seen_walls = set()

    def add(t) -> int:
        s = _signs(hps, t)
        if s in by_signs:
            return by_signs[s]
        p = chart.point(t)
        chambers.append(Chamber(signature_at(M, p), p, tuple(t), s))
        by_signs[s] = len(chambers) - 1
        return by_signs[s]

    queue = deque([add(t0)])
    hp_index = {h: k for k, h in enumerate(hps)}
    while queue:
        a = queue.popleft()
        ch = chambers[a]
        blocks = ch.signature.blocks
        candidates = set()
        for b1, b2 in zip(blocks[1:], blocks[2:]):
            coeffs, const = chart.tie_form(b1[0], b2[0])
            lead = next((x for x in coeffs if x != 0), None)
            if lead is None:
                continue
            candidates.add(hp_index[Hyperplane(tuple(x / lead for x in coeffs), const / lead)])
        for k in sorted(candidates):
            wall_sys = open_cell + _sign_constraints(hps, ch.signs, skip=k)
            if linear_feasible(wall_sys, chart.dim) is None:
                continue
            flipped = list(ch.signs)
            flipped[k] = -flipped[k]
            t = linear_feasible(open_cell + _sign_constraints(hps, flipped), chart.dim)
            if t is None:
                raise AssertionError("a facet wall has no chamber on its far side")
            before = len(chambers)
            b = add(t)
            if len(chambers) > before:
                queue.append(b)
            key = (min(a, b), max(a, b), k)
            if key not in seen_walls:
                seen_walls.add(key)
                walls.append(Wall(min(a, b), max(a, b), hps[k]))
    return CellChambers(cell, chart, hps, chambers, walls)


@dataclass
class ChamberGraph:
    """Chamber adjacency with a 2-coloring, or an odd cycle when none exists."""

    nodes: list[tuple[int, int]]
    edges: list[tuple[tuple[int, int], tuple[int, int]]]
    coloring: dict[tuple[int, int], int] | None
    odd_cycle: list[tuple[int, int]] | None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None


def _two_color(nodes, edges):
    adj = {v: [] for v in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    color: dict = {}
    parent: dict = {}
    for root in nodes:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return None, _odd_cycle(parent, u, v)
    return color, None


def _odd_cycle(parent, u, v):
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pv = path(u), path(v)
    common = next(x for x in pu if x in set(pv))
    left = pu[: pu.index(common) + 1]
    right = pv[: pv.index(common)]
    return left + list(reversed(right))


def chamber_adjacency(M: Profunctor, cells: Iterable) -> ChamberGraph:
    """Adjacency of chambers across recorded walls, cell by cell.

    ``cells`` may hold :class:`CellDescriptor` or already computed
    :class:`CellChambers`.  Nodes are ``(cell index, chamber index)``.
    """
    results = [c if isinstance(c, CellChambers) else enumerate_chambers(M, c) for c in cells]
    nodes, edges = [], []
    for ci, res in enumerate(results):
        nodes.extend((ci, k) for k in range(len(res.chambers)))
        edges.extend(((ci, w.a), (ci, w.b)) for w in res.walls)
    coloring, cycle = _two_color(nodes, edges)
    return ChamberGraph(nodes, edges, coloring, cycle)


def all_chambers(M: Profunctor, cells: list[CellDescriptor] | None = None) -> list[CellChambers]:
    cells = enumerate_cells(M) if cells is None else cells
    return [enumerate_chambers(M, c) for c in cells]


def describe_signature(M: Profunctor, sig: OrderSignature) -> list[list[Pair]]:
    return [sorted_pairs(M, b) for b in sig.blocks]
