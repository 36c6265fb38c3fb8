"""Gap matrices and witness relations of nucleus points."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InputError, UnsupportedError
from .extreal import ZERO, ExtReal, add, residuate
from .profunctor import (
    COPRESHEAF,
    PRESHEAF,
    NucleusPoint,
    Potential,
    Profunctor,
    _expect_side,
    isbell_upper,
)

Pair = tuple[str, str]


@dataclass(frozen=True)
class GapMatrix:
    """``delta(c, d) = M(c, d) - (f(c) + g(d))`` and its zero set."""

    profunctor: Profunctor
    f: Potential
    g: Potential
    entries: tuple[tuple[ExtReal, ...], ...]
    zero_set: frozenset[Pair]

    def __call__(self, c: str, d: str) -> ExtReal:
        M = self.profunctor
        return self.entries[M.row_index(c)][M.col_index(d)]

    def pairs(self) -> list[Pair]:
        """All ``(c, d)`` in matrix order."""
        M = self.profunctor
        return [(c, d) for c in M.rows for d in M.cols]

    def items(self):
        M = self.profunctor
        for i, c in enumerate(M.rows):
            for j, d in enumerate(M.cols):
                yield (c, d), self.entries[i][j]

    def radii(self) -> list[ExtReal]:
        """All entries sorted ascending, ties kept."""
        return sorted(x for _, x in self.items())

    def radius_multiplicities(self) -> list[tuple[ExtReal, int]]:
        counts = Counter(x for _, x in self.items())
        return sorted(counts.items())

    def rows_have_zero(self) -> bool:
        return all(any(x == ZERO for x in row) for row in self.entries)

    def cols_have_zero(self) -> bool:
        return all(
            any(row[j] == ZERO for row in self.entries)
            for j in range(len(self.profunctor.cols))
        )


def _gap_entries(M: Profunctor, f: Potential, g: Potential):
    return tuple(
        tuple(residuate(M.entries[i][j], add(f.values[i], g.values[j]))
              for j in range(len(M.cols)))
        for i in range(len(M.rows))
    )


def gap_matrix(M: Profunctor, f, g: Potential | None = None) -> GapMatrix:
    """Gap matrix of a presheaf ``f`` with ``g = M^* f``.

    ``f`` may be a :class:`NucleusPoint`.  If ``g`` is given it must equal
    ``M^* f``; free ``(f, g)`` pairs are refused.
    """
    if isinstance(f, NucleusPoint):
        if f.profunctor != M:
            raise InputError("nucleus point belongs to a different profunctor")
        f, g = f.f, f.g
    _expect_side(M, f, PRESHEAF)
    expected = isbell_upper(M, f)
    if g is None:
        g = expected
    else:
        _expect_side(M, g, COPRESHEAF)
        for lab, got, want in zip(g.labels, g.values, expected.values):
            if got != want:
                raise InputError(
                    f"g is not M^*f: column {lab!r} has {got}, expected {want}"
                )
    entries = _gap_entries(M, f, g)
    zeros = frozenset(
        (c, d)
        for i, c in enumerate(M.rows)
        for j, d in enumerate(M.cols)
        if entries[i][j] == ZERO
    )
    return GapMatrix(M, f, g, entries, zeros)


def witness_relation(p: NucleusPoint) -> frozenset[Pair]:
    """Zero set of the gap matrix at a finite-valued nucleus point."""
    if not p.is_finite:
        raise UnsupportedError("witness relations need finite-valued nucleus points")
    return gap_matrix(p.profunctor, p).zero_set


def is_fixed_by_rows(M: Profunctor, f: Potential) -> bool:
    """True iff every row of the gap matrix of ``f`` has a zero."""
    return gap_matrix(M, f).rows_have_zero()
