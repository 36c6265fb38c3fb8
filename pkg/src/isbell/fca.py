"""Boolean relations, concept lattices, transport maps and towers of lattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceededError, InputError
from .extreal import ext
from .gap import GapMatrix, Pair, gap_matrix
from .profunctor import NucleusPoint, Profunctor

DEFAULT_CAP = 16

EXT, INT = "ext", "int"


@dataclass(frozen=True)
class BoolRelation:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    incidences: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "incidences", frozenset(self.incidences))
        rs, cs = set(self.rows), set(self.cols)
        for c, d in self.incidences:
            if c not in rs or d not in cs:
                raise InputError(f"incidence {(c, d)} outside {self.rows} x {self.cols}")

    @classmethod
    def full(cls, rows, cols) -> BoolRelation:
        return cls(rows, cols, frozenset((c, d) for c in rows for d in cols))

    def __contains__(self, pair) -> bool:
        return pair in self.incidences

    def __le__(self, other: BoolRelation) -> bool:
        return self._same_shape(other) and self.incidences <= other.incidences

    def __lt__(self, other: BoolRelation) -> bool:
        return self._same_shape(other) and self.incidences < other.incidences

    def _same_shape(self, other: BoolRelation) -> bool:
        return self.rows == other.rows and self.cols == other.cols

    def with_pairs(self, pairs: Iterable[Pair]) -> BoolRelation:
        return BoolRelation(self.rows, self.cols, self.incidences | set(pairs))

    def sorted_incidences(self) -> list[Pair]:
        ri = {c: i for i, c in enumerate(self.rows)}
        ci = {d: j for j, d in enumerate(self.cols)}
        return sorted(self.incidences, key=lambda p: (ri[p[0]], ci[p[1]]))


def _check(labels: Iterable[str], allowed: Sequence[str], side: str) -> frozenset[str]:
    s = frozenset(labels)
    bad = s - set(allowed)
    if bad:
        raise InputError(f"unknown {side} labels: {sorted(bad)}")
    return s


def derive_up(R: BoolRelation, F: Iterable[str]) -> frozenset[str]:
    """Columns related to every row of ``F``."""
    F = _check(F, R.rows, "row")
    return frozenset(d for d in R.cols if all((c, d) in R.incidences for c in F))


def derive_down(R: BoolRelation, G: Iterable[str]) -> frozenset[str]:
    """Rows related to every column of ``G``."""
    G = _check(G, R.cols, "column")
    return frozenset(c for c in R.rows if all((c, d) in R.incidences for d in G))


def close_extent(R: BoolRelation, F: Iterable[str]) -> frozenset[str]:
    return derive_down(R, derive_up(R, F))


def close_intent(R: BoolRelation, G: Iterable[str]) -> frozenset[str]:
    return derive_up(R, derive_down(R, G))


@dataclass(frozen=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]

    def __le__(self, other: Concept) -> bool:
        return self.extent <= other.extent

    def describe(self, R: BoolRelation) -> tuple[list[str], list[str]]:
        return ([c for c in R.rows if c in self.extent],
                [d for d in R.cols if d in self.intent])


def concept_of_extent(R: BoolRelation, F: Iterable[str]) -> Concept:
    G = derive_up(R, F)
    return Concept(derive_down(R, G), G)


def concept_of_intent(R: BoolRelation, G: Iterable[str]) -> Concept:
    F = derive_down(R, G)
    return Concept(F, derive_up(R, F))


def is_concept(R: BoolRelation, x: Concept) -> bool:
    return derive_up(R, x.extent) == x.intent and derive_down(R, x.intent) == x.extent


@dataclass
class ConceptLattice:
    relation: BoolRelation
    concepts: list[Concept]
    _index: dict[Concept, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.concepts)}

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x: Concept) -> int:
        return self._index[x]

    @property
    def top(self) -> Concept:
        return concept_of_extent(self.relation, self.relation.rows)

    @property
    def bottom(self) -> Concept:
        return concept_of_intent(self.relation, self.relation.cols)

    def meet(self, xs: Iterable[Concept]) -> Concept:
        F = frozenset(self.relation.rows)
        for x in xs:
            F &= x.extent
        return concept_of_extent(self.relation, F)

    def join(self, xs: Iterable[Concept]) -> Concept:
        G = frozenset(self.relation.cols)
        for x in xs:
            G &= x.intent
        return concept_of_intent(self.relation, G)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs ``(i, j)`` with concept ``i`` directly below ``j``."""
        xs = self.concepts
        out = []
        for i, a in enumerate(xs):
            for j, b in enumerate(xs):
                if i == j or not a.extent < b.extent:
                    continue
                if not any(a.extent < m.extent < b.extent for m in xs):
                    out.append((i, j))
        return out

    def is_chain(self) -> bool:
        return all(a <= b or b <= a for a, b in combinations(self.concepts, 2))


def _sort_key(R: BoolRelation):
    pos = {c: i for i, c in enumerate(R.rows)}

    def key(x: Concept):
        return (len(x.extent), sorted(pos[c] for c in x.extent))

    return key


def _cap(R: BoolRelation, cap: int):
    if len(R.rows) > cap:
        raise CapExceededError(f"{len(R.rows)} rows exceed the lattice cap of {cap}")


def concept_lattice(R: BoolRelation, cap: int = DEFAULT_CAP) -> ConceptLattice:
    """All concepts, found by closing extents in lectic order."""
    _cap(R, cap)
    rows = R.rows
    n = len(rows)
    found = []
    A = close_extent(R, ())
    while True:
        found.append(Concept(A, derive_up(R, A)))
        nxt = None
        for i in range(n - 1, -1, -1):
            if rows[i] in A:
                continue
            head = {c for c in A if rows.index(c) < i}
            B = close_extent(R, head | {rows[i]})
            if all(rows.index(c) >= i for c in B - head):
                nxt = B
                break
        if nxt is None:
            break
        A = nxt
    found.sort(key=_sort_key(R))
    return ConceptLattice(R, found)


def concept_lattice_bruteforce(R: BoolRelation, cap: int = DEFAULT_CAP) -> ConceptLattice:
    """Close every subset of rows and deduplicate."""
    _cap(R, cap)
    seen = set()
    for k in range(len(R.rows) + 1):
        for F in combinations(R.rows, k):
            seen.add(concept_of_extent(R, F))
    return ConceptLattice(R, sorted(seen, key=_sort_key(R)))


def _check_inclusion(R: BoolRelation, R2: BoolRelation):
    if not R._same_shape(R2):
        raise InputError("relations live on different index sets")
    if not R.incidences <= R2.incidences:
        extra = sorted(R.incidences - R2.incidences)
        raise InputError(f"transport needs R inside R'; missing {extra}")


def transport_ext(R: BoolRelation, R2: BoolRelation, x: Concept) -> Concept:
    """Least concept of ``R2`` whose extent contains the extent of ``x``."""
    _check_inclusion(R, R2)
    return concept_of_extent(R2, x.extent)


def transport_int(R: BoolRelation, R2: BoolRelation, x: Concept) -> Concept:
    """Greatest concept of ``R2`` whose intent contains the intent of ``x``."""
    _check_inclusion(R, R2)
    return concept_of_intent(R2, x.intent)


def transport(kind: str, R: BoolRelation, R2: BoolRelation, x: Concept) -> Concept:
    if kind == EXT:
        return transport_ext(R, R2, x)
    if kind == INT:
        return transport_int(R, R2, x)
    raise InputError(f"unknown transport {kind!r}")


def threshold_relation(gap: GapMatrix, eps) -> BoolRelation:
    eps = ext(eps)
    if eps < ext(0):
        raise InputError("threshold must be nonnegative")
    M = gap.profunctor
    return BoolRelation(M.rows, M.cols, frozenset(p for p, v in gap.items() if v <= eps))


@dataclass
class Tower:
    """Strictly increasing relations with their lattices and both transport families.

    ``maps[kind][k]`` sends each concept of level ``k`` to level ``k + 1``.
    ``levels`` labels each level (a threshold, or a block index for chambers).
    """

    relations: list[BoolRelation]
    lattices: list[ConceptLattice]
    maps: dict[str, list[dict[Concept, Concept]]]
    levels: list = field(default_factory=list)

    def __len__(self):
        return len(self.relations)

    def composite(self, kind: str, i: int, j: int, x: Concept) -> Concept:
        for k in range(i, j):
            x = self.maps[kind][k][x]
        return x


def build_tower(relations: Sequence[BoolRelation], levels: Sequence | None = None,
                cap: int = DEFAULT_CAP) -> Tower:
    relations = list(relations)
    for a, b in zip(relations, relations[1:]):
        if not a < b:
            raise InputError("tower relations must increase strictly")
    lattices = [concept_lattice(R, cap) for R in relations]
    maps: dict[str, list[dict[Concept, Concept]]] = {EXT: [], INT: []}
    for k in range(len(relations) - 1):
        R, R2 = relations[k], relations[k + 1]
        for kind in (EXT, INT):
            maps[kind].append({x: transport(kind, R, R2, x) for x in lattices[k]})
    return Tower(relations, lattices, maps, list(levels) if levels is not None else list(range(len(relations))))


def point_tower(M: Profunctor, p: NucleusPoint, cap: int = DEFAULT_CAP) -> Tower:
    """Threshold relations at every distinct gap value of ``p``."""
    gap = gap_matrix(M, p)
    values = sorted({v for _, v in gap.items()})
    return build_tower([threshold_relation(gap, v) for v in values], values, cap)


def chamber_tower(sig, M: Profunctor | None = None, cap: int = DEFAULT_CAP) -> Tower:
    """Cumulative unions of the blocks of an order signature."""
    if M is not None:
        rows, cols = M.rows, M.cols
    else:
        pairs = [p for b in sig.blocks for p in b]
        rows = tuple(dict.fromkeys(c for c, _ in sorted(pairs)))
        cols = tuple(dict.fromkeys(d for _, d in sorted(pairs, key=lambda p: p[1])))
    acc: set[Pair] = set()
    relations = []
    for block in sig.blocks:
        acc |= set(block)
        relations.append(BoolRelation(rows, cols, frozenset(acc)))
    return build_tower(relations, list(range(len(relations))), cap)


@dataclass(frozen=True)
class LevelCheck:
    """One map of the coarse tower against the composite of fine maps it replaces."""

    coarse_level: int
    fine_from: int
    fine_to: int
    ext_ok: bool
    int_ok: bool

    @property
    def ok(self) -> bool:
        return self.ext_ok and self.int_ok


def specialize_to_face(fine: Tower, coarse: Tower) -> list[LevelCheck]:
    """Check that every map of ``coarse`` composes from the skipped maps of ``fine``."""
    pos = {R.incidences: k for k, R in enumerate(fine.relations)}
    idx = []
    for R in coarse.relations:
        if R.incidences not in pos:
            raise InputError("coarse tower is not obtained by merging consecutive blocks")
        idx.append(pos[R.incidences])
    if idx[0] != 0 or idx[-1] != len(fine) - 1:
        raise InputError("coarse tower must share the first and last level")
    out = []
    for k, (a, b) in enumerate(zip(idx, idx[1:])):
        verdict = {}
        for kind in (EXT, INT):
            verdict[kind] = all(
                coarse.maps[kind][k][x] == fine.composite(kind, a, b, x)
                for x in coarse.lattices[k]
            )
        out.append(LevelCheck(k, a, b, verdict[EXT], verdict[INT]))
    return out


@dataclass(frozen=True)
class DiamondVerdict:
    kind: str
    ok: bool
    failures: tuple[Concept, ...]


def diamond(bottom: BoolRelation, left: BoolRelation, right: BoolRelation,
            top: BoolRelation) -> list[DiamondVerdict]:
    """Compare the direct map ``bottom -> top`` with both two-step routes."""
    lat = concept_lattice(bottom)
    out = []
    for kind in (EXT, INT):
        bad = []
        for x in lat:
            direct = transport(kind, bottom, top, x)
            via_l = transport(kind, left, top, transport(kind, bottom, left, x))
            via_r = transport(kind, right, top, transport(kind, bottom, right, x))
            if not direct == via_l == via_r:
                bad.append(x)
        out.append(DiamondVerdict(kind, not bad, tuple(bad)))
    return out
