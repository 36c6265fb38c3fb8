"""Event loci: moving a nucleus point until a chosen pair becomes a witness."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, UnsupportedError
from .extreal import ZERO, ExtReal, ext
from .gap import Pair, gap_matrix
from .profunctor import NucleusPoint, Potential, Profunctor, closure_presheaf, isbell_upper


@dataclass(frozen=True)
class EventTarget:
    pair: Pair
    radius: ExtReal

    def __post_init__(self):
        if self.radius < ZERO:
            raise InputError(f"negative event radius {self.radius}")


def event_target(M: Profunctor, p: NucleusPoint, pair: Pair) -> EventTarget:
    c, d = pair
    return EventTarget((c, d), gap_matrix(M, p)(c, d))


def event_distance(M: Profunctor, p: NucleusPoint, pair: Pair) -> ExtReal:
    """Distance from ``p`` to the locus where ``pair`` is a witness: its gap entry."""
    if not p.is_finite:
        raise UnsupportedError("event distances need finite-valued nucleus points")
    return event_target(M, p, pair).radius


def event_construct(M: Profunctor, p: NucleusPoint, pair: Pair) -> NucleusPoint:
    """Nearest-point construction on the event locus of ``pair``, in closed form."""
    if not p.is_finite:
        raise UnsupportedError("event construction needs a finite-valued nucleus point")
    ci, _ = pair
    gap = gap_matrix(M, p)
    lam = gap(*pair)
    if lam == ZERO:
        return p
    if not lam.is_finite:
        raise UnsupportedError(f"gap entry at {pair} is infinite")
    lam = lam.value
    bump = {d: max(lam - gap(ci, d).value, 0) for d in M.cols}
    g_new = [p.g[d].value - bump[d] for d in M.cols]
    f_new = [
        p.f[c].value + min(gap(c, d).value + bump[d] for d in M.cols)
        for c in M.rows
    ]
    return NucleusPoint(
        M,
        Potential.presheaf(M, [ext(x) for x in f_new]),
        Potential.copresheaf(M, [ext(x) for x in g_new]),
    )


def bumped_presheaf(M: Profunctor, p: NucleusPoint, pair: Pair) -> Potential:
    """``f`` raised by the gap entry at the target's row and left unclosed."""
    ci, _ = pair
    lam = gap_matrix(M, p)(*pair)
    return Potential.presheaf(
        M, [v + lam if c == ci else v for c, v in zip(M.rows, p.f.values)]
    )


def event_construct_two_step(M: Profunctor, p: NucleusPoint, pair: Pair) -> NucleusPoint:
    """Bump then close; slower route to the same point as :func:`event_construct`."""
    f = closure_presheaf(M, bumped_presheaf(M, p, pair))
    return NucleusPoint(M, f, isbell_upper(M, f))


def event_report(M: Profunctor, p: NucleusPoint, base_row: str | None = None) -> list[dict]:
    """Every positive finite gap entry with its boundary point and new witnesses."""
    gap = gap_matrix(M, p)
    out = []
    for pair, value in gap.items():
        if value == ZERO or not value.is_finite:
            continue
        q = event_construct(M, p, pair).normalized(base_row)
        out.append({"pair": pair, "radius": value, "point": q,
                    "witnesses": gap_matrix(M, q).zero_set})
    return out
