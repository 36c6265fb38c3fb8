"""Exact feasibility of small systems of affine relations (Fourier-Motzkin).

A :class:`Constraint` states ``coeffs . x + const REL 0`` with ``REL`` one of
``"<="``, ``"<"`` or ``"=="``.  Strict inequalities are tracked through the
elimination, so open polyhedra (chambers, relative interiors) are decided
exactly.  Intended for a handful of variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

LE, LT, EQ = "<=", "<", "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    rel: str = LE

    def __post_init__(self):
        if self.rel not in (LE, LT, EQ):
            raise ValueError(f"bad relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x)), self.const)

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        if self.rel == LE:
            return v <= 0
        if self.rel == LT:
            return v < 0
        return v == 0


def le(coeffs, const=0) -> Constraint:
    return Constraint(tuple(coeffs), const, LE)


def lt(coeffs, const=0) -> Constraint:
    return Constraint(tuple(coeffs), const, LT)


def eq(coeffs, const=0) -> Constraint:
    return Constraint(tuple(coeffs), const, EQ)


def _normalize(c: Constraint) -> Constraint:
    lead = next((abs(a) for a in c.coeffs if a != 0), None)
    if lead is None or lead == 1:
        return c
    return Constraint(tuple(a / lead for a in c.coeffs), c.const / lead, c.rel)


def _prune(cons: list[Constraint]) -> list[Constraint] | None:
    """Drop duplicates and dominated parallel inequalities; ``None`` on a trivial contradiction."""
    best: dict[tuple, Constraint] = {}
    for c in cons:
        if all(a == 0 for a in c.coeffs):
            if c.rel == LE and c.const > 0:
                return None
            if c.rel == LT and c.const >= 0:
                return None
            continue
        c = _normalize(c)
        prev = best.get(c.coeffs)
        # larger const is tighter; strict beats non-strict at equal const
        if (prev is None or c.const > prev.const
                or (c.const == prev.const and c.rel == LT)):
            best[c.coeffs] = c
    return list(best.values())


def linear_feasible(constraints: Sequence[Constraint], nvars: int | None = None
                    ) -> tuple[Fraction, ...] | None:
    """A rational point satisfying every constraint, or ``None`` if there is none."""
    constraints = list(constraints)
    if nvars is None:
        nvars = len(constraints[0].coeffs) if constraints else 0
    for c in constraints:
        if len(c.coeffs) != nvars:
            raise ValueError("constraints disagree on the number of variables")

    # substitute equalities away; each record is (var, expression coeffs, const)
    subs: list[tuple[int, tuple[Fraction, ...], Fraction]] = []
    ineqs = [c for c in constraints if c.rel != EQ]
    eqs = [c for c in constraints if c.rel == EQ]
    while eqs:
        e = eqs.pop()
        k = next((i for i, a in enumerate(e.coeffs) if a != 0), None)
        if k is None:
            if e.const != 0:
                return None
            continue
        a = e.coeffs[k]
        # x_k = -(sum_{i != k} a_i x_i + const) / a
        expr = tuple(Fraction(0) if i == k else -ai / a for i, ai in enumerate(e.coeffs))
        cst = -e.const / a
        subs.append((k, expr, cst))

        def apply(c: Constraint) -> Constraint:
            ak = c.coeffs[k]
            if ak == 0:
                return c
            new = tuple(
                Fraction(0) if i == k else ai + ak * expr[i]
                for i, ai in enumerate(c.coeffs)
            )
            return Constraint(new, c.const + ak * cst, c.rel)

        eqs = [apply(c) for c in eqs]
        ineqs = [apply(c) for c in ineqs]

    eliminated = {k for k, _, _ in subs}
    free = [i for i in range(nvars) if i not in eliminated]

    stages: list[tuple[int, list[Constraint]]] = []
    current = _prune(ineqs)
    if current is None:
        return None
    for k in reversed(free):
        involved = [c for c in current if c.coeffs[k] != 0]
        rest = [c for c in current if c.coeffs[k] == 0]
        stages.append((k, involved))
        upper = [c for c in involved if c.coeffs[k] > 0]
        lower = [c for c in involved if c.coeffs[k] < 0]
        combos = []
        for p in upper:
            for q in lower:
                ap, aq = p.coeffs[k], -q.coeffs[k]
                coeffs = tuple(aq * x + ap * y for x, y in zip(p.coeffs, q.coeffs))
                rel = LT if LT in (p.rel, q.rel) else LE
                combos.append(Constraint(coeffs, aq * p.const + ap * q.const, rel))
        current = _prune(rest + combos)
        if current is None:
            return None
    # only constant constraints can remain and _prune has checked them

    x = [Fraction(0)] * nvars
    for k, involved in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        for c in involved:
            a = c.coeffs[k]
            rest = c.const + sum(
                (ai * x[i] for i, ai in enumerate(c.coeffs) if i != k), Fraction(0)
            )
            bound = -rest / a
            strict = c.rel == LT
            if a > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        elif lo == hi:
            if lo_strict or hi_strict:
                return None
            val = lo
        elif lo > hi:
            return None
        else:
            val = (lo + hi) / 2
        x[k] = val
    for k, expr, cst in reversed(subs):
        x[k] = cst + sum((a * x[i] for i, a in enumerate(expr) if a != 0), Fraction(0))
    point = tuple(x)
    if not all(c.holds(point) for c in constraints):
        raise AssertionError("Fourier-Motzkin produced a point violating the system")
    return point
