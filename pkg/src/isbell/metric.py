"""Max-spread (tropical Hilbert) distances on projective potentials."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IsbellError, InputError
from .extreal import POS_INF, ZERO, ExtReal, ext, residuate
from .profunctor import PRESHEAF, NucleusPoint, Potential, Profunctor, anchor


@dataclass(frozen=True)
class ProjectiveClass:
    """A translation class ``[f]`` of a finite-somewhere potential."""

    representative: Potential

    def __post_init__(self):
        if not self.representative.finite_somewhere:
            raise InputError("projective classes need a finite-somewhere representative")

    def __eq__(self, other):
        if not isinstance(other, ProjectiveClass):
            return NotImplemented
        a, b = self.representative, other.representative
        if a.side != b.side or a.labels != b.labels:
            return False
        return proj_dist(self, other) == ZERO

    def __hash__(self):
        r = self.representative
        # hash an infinity pattern plus normalized finite coordinates
        norm = r.normalized()
        return hash((r.side, r.labels, norm.values))


def _as_potential(x) -> Potential:
    return x.representative if isinstance(x, ProjectiveClass) else x


def proj_dist(a, b) -> ExtReal:
    """Oscillation ``sup(a - b) - inf(a - b)`` over coordinates not jointly infinite.

    Accepts :class:`ProjectiveClass` or bare :class:`Potential` arguments.
    Returns ``inf`` when either extremum is not finite.
    """
    f, g = _as_potential(a), _as_potential(b)
    if f.side != g.side or f.labels != g.labels:
        raise InputError("proj_dist needs potentials on the same index set")
    diffs = []
    for x, y in zip(f.values, g.values):
        if x == y and not x.is_finite:
            continue
        diffs.append(residuate(x, y))
    if not diffs:
        # every coordinate jointly infinite: only possible for non-finite-somewhere input
        raise InputError("proj_dist needs finite-somewhere potentials")
    hi, lo = max(diffs), min(diffs)
    if not (hi.is_finite and lo.is_finite):
        return POS_INF
    return ext(hi.value - lo.value)


def proj_dist_nucleus(p: NucleusPoint, q: NucleusPoint, *, check: bool = True) -> ExtReal:
    """Distance on the projective nucleus: the max of both side distances.

    The two sides agree on nucleus points; with ``check`` a disagreement is an
    internal-consistency failure.
    """
    if p.profunctor != q.profunctor:
        raise InputError("nucleus points belong to different profunctors")
    df = proj_dist(p.f, q.f)
    dg = proj_dist(p.g, q.g)
    if check and df != dg:
        raise IsbellError(
            f"isometry violated: presheaf distance {df} != copresheaf distance {dg}"
        )
    return max(df, dg)


def profunctor_norm(M: Profunctor) -> ExtReal:
    """``||M||``, the largest distance from ``[0]`` to an anchor class."""
    zero = Potential(PRESHEAF, M.rows, tuple(ZERO for _ in M.rows))
    best = ZERO
    for d in M.cols:
        a = anchor(M, d)
        if not a.finite_somewhere:
            return POS_INF
        best = max(best, proj_dist(a, zero))
    return best
