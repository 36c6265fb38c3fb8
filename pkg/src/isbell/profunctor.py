"""Matrices as extended-real profunctors and their Isbell conjugates.

A :class:`Profunctor` is a labelled matrix ``M(c, d)``.  Presheaves live on the
row labels and copresheaves on the column labels; both are :class:`Potential`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, NondegeneracyError
from .extreal import NEG_INF, ZERO, ExtReal, add, ext, residuate

PRESHEAF = "presheaf"
COPRESHEAF = "copresheaf"
SIDES = (PRESHEAF, COPRESHEAF)


def _check_labels(labels: Sequence[str], what: str) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise InputError(f"{what} labels must be nonempty")
    if len(set(labels)) != len(labels):
        raise InputError(f"{what} labels must be unique: {list(labels)}")
    return labels


@dataclass(frozen=True)
class Profunctor:
    """A ``|rows| x |cols|`` matrix of extended reals with labelled sides."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[ExtReal, ...], ...]
    _row_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _col_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        rows = _check_labels(self.rows, "row")
        cols = _check_labels(self.cols, "column")
        entries = tuple(tuple(ext(x) for x in row) for row in self.entries)
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise InputError(
                f"entries must be a {len(rows)}x{len(cols)} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_row_index", {c: i for i, c in enumerate(rows)})
        object.__setattr__(self, "_col_index", {d: j for j, d in enumerate(cols)})

    @classmethod
    def from_rows(cls, entries, rows=None, cols=None) -> Profunctor:
        """Build from a nested list, defaulting labels to ``c0..`` and ``d1..``."""
        entries = [list(r) for r in entries]
        if rows is None:
            rows = [f"c{i}" for i in range(len(entries))]
        if cols is None:
            cols = [f"d{j + 1}" for j in range(len(entries[0]) if entries else 0)]
        return cls(tuple(rows), tuple(cols), tuple(tuple(r) for r in entries))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def row_index(self, c: str) -> int:
        try:
            return self._row_index[c]
        except KeyError:
            raise InputError(f"unknown row label {c!r}") from None

    def col_index(self, d: str) -> int:
        try:
            return self._col_index[d]
        except KeyError:
            raise InputError(f"unknown column label {d!r}") from None

    def __call__(self, c: str, d: str) -> ExtReal:
        return self.entries[self.row_index(c)][self.col_index(d)]

    @property
    def is_finite(self) -> bool:
        return all(x.is_finite for row in self.entries for x in row)

    def fractions(self) -> list[list[Fraction]]:
        """Entries as rationals; only valid when :attr:`is_finite`."""
        return [[x.value for x in row] for row in self.entries]

    def select_cols(self, cols: Iterable[str]) -> Profunctor:
        cols = tuple(cols)
        idx = [self.col_index(d) for d in cols]
        return Profunctor(
            self.rows, cols, tuple(tuple(row[j] for j in idx) for row in self.entries)
        )

    def transpose(self) -> Profunctor:
        return Profunctor(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(len(self.rows)))
                  for j in range(len(self.cols))),
        )

    def labels(self, side: str) -> tuple[str, ...]:
        return self.rows if side == PRESHEAF else self.cols


@dataclass(frozen=True)
class Potential:
    """A presheaf on the rows or a copresheaf on the columns.

    ``labels`` fixes the iteration order; ``values`` is aligned with it.
    """

    side: str
    labels: tuple[str, ...]
    values: tuple[ExtReal, ...]

    def __post_init__(self):
        if self.side not in SIDES:
            raise InputError(f"side must be one of {SIDES}, got {self.side!r}")
        labels = tuple(self.labels)
        values = tuple(ext(v) for v in self.values)
        if len(labels) != len(values):
            raise InputError("potential labels and values differ in length")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @classmethod
    def on(cls, M: Profunctor, side: str, values) -> Potential:
        """Potential on one side of ``M`` from a sequence or a label mapping."""
        labels = M.labels(side)
        if isinstance(values, Mapping):
            missing = set(labels) - set(values)
            extra = set(values) - set(labels)
            if missing or extra:
                raise InputError(
                    f"{side} values must cover exactly {list(labels)}; "
                    f"missing {sorted(missing)}, unknown {sorted(extra)}"
                )
            values = [values[x] for x in labels]
        values = list(values)
        if len(values) != len(labels):
            raise InputError(
                f"{side} needs {len(labels)} values, got {len(values)}"
            )
        return cls(side, labels, tuple(values))

    @classmethod
    def presheaf(cls, M: Profunctor, values) -> Potential:
        return cls.on(M, PRESHEAF, values)

    @classmethod
    def copresheaf(cls, M: Profunctor, values) -> Potential:
        return cls.on(M, COPRESHEAF, values)

    def __getitem__(self, label: str) -> ExtReal:
        try:
            return self.values[self.labels.index(label)]
        except ValueError:
            raise InputError(f"unknown label {label!r}") from None

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def as_dict(self) -> dict[str, ExtReal]:
        return dict(zip(self.labels, self.values))

    @property
    def finite_somewhere(self) -> bool:
        return any(v.is_finite for v in self.values)

    @property
    def is_finite(self) -> bool:
        return all(v.is_finite for v in self.values)

    def translate(self, lam) -> Potential:
        """Add the finite constant ``lam`` at every coordinate."""
        lam = ext(lam)
        if not lam.is_finite:
            raise InputError("translation constant must be finite")
        return Potential(self.side, self.labels, tuple(add(v, lam) for v in self.values))

    def minus(self, other: Potential) -> Potential:
        """Coordinatewise residuation ``self - other`` (same side and labels)."""
        _same_index(self, other)
        return Potential(
            self.side, self.labels,
            tuple(residuate(a, b) for a, b in zip(self.values, other.values)),
        )

    def normalized(self, base: str | None = None) -> Potential:
        """Representative with value 0 at ``base`` (default: first finite label)."""
        if base is None:
            for lab, v in zip(self.labels, self.values):
                if v.is_finite:
                    base = lab
                    break
            else:
                raise InputError("cannot normalize a potential with no finite value")
        v = self[base]
        if not v.is_finite:
            raise InputError(f"gauge label {base!r} has non-finite value {v}")
        return self.translate(-v.value)

    def __le__(self, other: Potential) -> bool:
        _same_index(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: Potential) -> bool:
        return other <= self

    def __str__(self):
        inner = ", ".join(str(v) for v in self.values)
        return f"({inner})"


def _same_index(a: Potential, b: Potential) -> None:
    if a.side != b.side or a.labels != b.labels:
        raise InputError("potentials live on different index sets")


def _expect_side(M: Profunctor, p: Potential, side: str) -> None:
    if p.side != side:
        raise InputError(f"expected a {side}, got a {p.side}")
    if p.labels != M.labels(side):
        raise InputError(
            f"{side} labels {list(p.labels)} do not match {list(M.labels(side))}"
        )


def isbell_upper(M: Profunctor, f: Potential) -> Potential:
    """``(M^* f)(d) = min_c (M(c, d) - f(c))`` with residuated subtraction."""
    _expect_side(M, f, PRESHEAF)
    out = []
    for j in range(len(M.cols)):
        out.append(min(residuate(M.entries[i][j], f.values[i]) for i in range(len(M.rows))))
    return Potential(COPRESHEAF, M.cols, tuple(out))


def isbell_lower(M: Profunctor, g: Potential) -> Potential:
    """``(M_* g)(c) = min_d (M(c, d) - g(d))`` with residuated subtraction."""
    _expect_side(M, g, COPRESHEAF)
    out = []
    for row in M.entries:
        out.append(min(residuate(m, gv) for m, gv in zip(row, g.values)))
    return Potential(PRESHEAF, M.rows, tuple(out))


def closure_presheaf(M: Profunctor, f: Potential) -> Potential:
    return isbell_lower(M, isbell_upper(M, f))


def closure_copresheaf(M: Profunctor, g: Potential) -> Potential:
    return isbell_upper(M, isbell_lower(M, g))


def transform(M: Profunctor, p: Potential) -> Potential:
    """Apply whichever Isbell conjugate matches the side of ``p``."""
    return isbell_upper(M, p) if p.side == PRESHEAF else isbell_lower(M, p)


def closure(M: Profunctor, p: Potential) -> Potential:
    return closure_presheaf(M, p) if p.side == PRESHEAF else closure_copresheaf(M, p)


@dataclass(frozen=True)
class NucleusCheck:
    """Outcome of :func:`is_nucleus_point`; falsy when any coordinate fails."""

    ok: bool
    violations: tuple[tuple[str, str, ExtReal, ExtReal], ...] = ()

    def __bool__(self):
        return self.ok


def is_nucleus_point(M: Profunctor, f: Potential, g: Potential) -> NucleusCheck:
    """Check ``g = M^* f`` and ``f = M_* g`` exactly.

    Violations are reported as ``(side, label, given, expected)``.
    """
    _expect_side(M, f, PRESHEAF)
    _expect_side(M, g, COPRESHEAF)
    bad = []
    g_exp = isbell_upper(M, f)
    for lab, got, want in zip(g.labels, g.values, g_exp.values):
        if got != want:
            bad.append((COPRESHEAF, lab, got, want))
    f_exp = isbell_lower(M, g)
    for lab, got, want in zip(f.labels, f.values, f_exp.values):
        if got != want:
            bad.append((PRESHEAF, lab, got, want))
    return NucleusCheck(not bad, tuple(bad))


@dataclass(frozen=True)
class NucleusPoint:
    """A fixed point ``(f, g)`` of the Isbell adjunction of ``profunctor``.

    Validated on construction; use :func:`make_nucleus_point` to build one from
    an arbitrary seed.
    """

    profunctor: Profunctor
    f: Potential
    g: Potential

    def __post_init__(self):
        check = is_nucleus_point(self.profunctor, self.f, self.g)
        if not check:
            side, lab, got, want = check.violations[0]
            raise InputError(
                f"not a nucleus point: {side} value at {lab!r} is {got}, expected {want}"
            )

    @property
    def is_finite(self) -> bool:
        return self.f.is_finite and self.g.is_finite

    def translate(self, lam) -> NucleusPoint:
        """The point ``(f + lam, g - lam)`` of the same projective class."""
        lam = ext(lam)
        return NucleusPoint(self.profunctor, self.f.translate(lam),
                            self.g.translate(-lam.value))

    def normalized(self, base_row: str | None = None) -> NucleusPoint:
        """Representative with ``f(base_row) = 0`` (default: the first row)."""
        base_row = self.profunctor.rows[0] if base_row is None else base_row
        v = self.f[base_row]
        if not v.is_finite:
            raise InputError(f"f({base_row}) is not finite")
        return self.translate(-v.value)


def make_nucleus_point(M: Profunctor, seed: Potential) -> NucleusPoint:
    """Close a seed: ``(cl f, M^* f)`` for a presheaf, ``(M_* g, cl g)`` for a copresheaf."""
    if not seed.finite_somewhere:
        raise NondegeneracyError("seed must be finite somewhere")
    if seed.side == PRESHEAF:
        _expect_side(M, seed, PRESHEAF)
        g = isbell_upper(M, seed)
        f = isbell_lower(M, g)
    else:
        _expect_side(M, seed, COPRESHEAF)
        f = isbell_lower(M, seed)
        g = isbell_upper(M, f)
    for name, p in (("presheaf", f), ("copresheaf", g)):
        if not p.finite_somewhere:
            raise NondegeneracyError(
                f"the {name} side of the closed point has no finite value; "
                "the profunctor is degenerate on this seed"
            )
    return NucleusPoint(M, f, g)


def gauge_transform(M: Profunctor, u, v) -> Profunctor:
    """``M(c, d) - u(c) - v(d)`` for finite row and column potentials."""
    u = _finite_weights(M, PRESHEAF, u)
    v = _finite_weights(M, COPRESHEAF, v)
    entries = tuple(
        tuple(residuate(residuate(M.entries[i][j], u[i]), v[j]) for j in range(len(M.cols)))
        for i in range(len(M.rows))
    )
    return Profunctor(M.rows, M.cols, entries)


def _finite_weights(M: Profunctor, side: str, w) -> tuple[ExtReal, ...]:
    if isinstance(w, Potential):
        _expect_side(M, w, side)
        vals = w.values
    else:
        vals = Potential.on(M, side, w).values
    if not all(x.is_finite for x in vals):
        raise InputError("gauge weights must be finite")
    return vals


def anchor(M: Profunctor, d: str) -> Potential:
    """The column presheaf ``A_d = M(-, d)``."""
    j = M.col_index(d)
    return Potential(PRESHEAF, M.rows, tuple(row[j] for row in M.entries))


def represented_copresheaf(M: Profunctor, d: str) -> Potential:
    """The delta copresheaf: 0 at ``d`` and ``-inf`` elsewhere."""
    M.col_index(d)
    return Potential(COPRESHEAF, M.cols, tuple(ZERO if x == d else NEG_INF for x in M.cols))


def represented_presheaf(M: Profunctor, c: str) -> Potential:
    """The delta presheaf: 0 at ``c`` and ``-inf`` elsewhere."""
    M.row_index(c)
    return Potential(PRESHEAF, M.rows, tuple(ZERO if x == c else NEG_INF for x in M.rows))


def hom(a: Potential, b: Potential) -> ExtReal:
    """Enriched hom ``[a, b] = min_x (b(x) - a(x))``."""
    _same_index(a, b)
    return min(residuate(y, x) for x, y in zip(a.values, b.values))
