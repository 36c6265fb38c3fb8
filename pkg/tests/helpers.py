"""Shared data and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from isbell.extreal import ext
from isbell.fca import BoolRelation
from isbell.gap import gap_matrix
from isbell.polyhedra import in_cell
from isbell.profunctor import (
    NucleusPoint,
    Potential,
    Profunctor,
    isbell_upper,
    make_nucleus_point,
)

RUNNING = Profunctor.from_rows([
    ["0.7", "1.5", "1.7", "-1.3"],
    ["1.2", "2.6", "0.1", "2.2"],
    ["2.0", "-1.6", "2.0", "-2.9"],
])

Z1 = frozenset({("c0", "d1"), ("c1", "d3"), ("c2", "d2"), ("c2", "d4")})


DELTA1 = [["0", "3.1", "1.6", "1.6"], ["0.5", "4.2", "0", "5.1"], ["1.3", "0", "1.9", "0"]]
DELTA2 = [["0", "3.1", "1.5", "1.6"], ["0.6", "4.3", "0", "5.2"], ["1.3", "0", "1.8", "0"]]
DELTA3 = [["0", "3.1", "1.7", "1.6"], ["0.4", "4.1", "0", "5"], ["1.3", "0", "2", "0"]]


def relation_chain() -> dict[str, BoolRelation]:
    """Threshold relations of the running example, keyed R0 ... R8 with R3a and R3b."""
    R = {"R0": BoolRelation(RUNNING.rows, RUNNING.cols, Z1)}
    R["R1"] = R["R0"].with_pairs([("c1", "d1")])
    R["R2"] = R["R1"].with_pairs([("c2", "d1")])
    R["R3a"] = R["R2"].with_pairs([("c0", "d3")])
    R["R3b"] = R["R2"].with_pairs([("c0", "d4")])
    R["R4"] = R["R2"].with_pairs([("c0", "d3"), ("c0", "d4")])
    R["R5"] = R["R4"].with_pairs([("c2", "d3")])
    R["R6"] = R["R5"].with_pairs([("c0", "d2")])
    R["R7"] = R["R6"].with_pairs([("c1", "d2")])
    R["R8"] = R["R7"].with_pairs([("c1", "d4")])
    return R


# listed concepts as (extent, intent) strings
_TOP = ("c0 c1 c2", "d1")
_EMPTY = ("", "d1 d2 d3 d4")
LISTED_CONCEPTS = {
    "R2": [_EMPTY, ("c1", "d1 d3"), ("c2", "d1 d2 d4"), _TOP],
    "R3a": [_EMPTY, ("c2", "d1 d2 d4"), ("c0 c1", "d1 d3"), _TOP],
    "R3b": [_EMPTY, ("c1", "d1 d3"), ("c2", "d1 d2 d4"), ("c0 c2", "d1 d4"), _TOP],
    "R4": [_EMPTY, ("c0", "d1 d3 d4"), ("c2", "d1 d2 d4"), ("c0 c1", "d1 d3"),
           ("c0 c2", "d1 d4"), _TOP],
}


def F(x) -> Fraction:
    return Fraction(x)


def point_at(M: Profunctor, f) -> NucleusPoint:
    return make_nucleus_point(M, Potential.presheaf(M, f))


def rows_of(gap) -> list[list[str]]:
    return [[str(x) for x in row] for row in gap.entries]


def random_matrix(r: random.Random, m: int, n: int, spread: int = 40) -> Profunctor:
    """Entries are multiples of 1/10 in [-spread/10, spread/10]."""
    return Profunctor.from_rows(
        [[Fraction(r.randint(-spread, spread), 10) for _ in range(n)] for _ in range(m)]
    )


def random_point(r: random.Random, M: Profunctor, spread: int = 60) -> NucleusPoint:
    f = [Fraction(r.randint(-spread, spread), 10) for _ in M.rows]
    return make_nucleus_point(M, Potential.presheaf(M, f))


def random_potential(r: random.Random, M: Profunctor, side: str, inf_rate=0.0) -> Potential:
    labels = M.labels(side)
    vals = []
    for _ in labels:
        u = r.random()
        if u < inf_rate / 2:
            vals.append("inf")
        elif u < inf_rate:
            vals.append("-inf")
        else:
            vals.append(Fraction(r.randint(-50, 50), 10))
    return Potential.on(M, side, vals)


def gap_at_chart(M: Profunctor, x: Fraction, y: Fraction):
    """Gap matrix at the presheaf ``(0, x, y)``, computed from scratch."""
    f = Potential.presheaf(M, [0, x, y])
    return gap_matrix(M, f)


def signature_blocks(gap) -> tuple[frozenset, ...]:
    values = sorted({v for _, v in gap.items()})
    return tuple(frozenset(p for p, v in gap.items() if v == val) for val in values)


def grid_signatures(M: Profunctor, tight: frozenset, box, steps: int = 20, depth: int = 4):
    """Signature blocks seen on a grid over ``box`` inside the open cell of ``tight``.

    Squares whose corners disagree are subdivided ``depth`` more times.
    Only points whose witness relation is exactly ``tight`` and whose
    non-witness gap values are pairwise distinct are kept.
    """
    (x0, x1), (y0, y1) = box
    hx, hy = (x1 - x0) / steps, (y1 - y0) / steps
    # an offset keeps the grid off the rational walls
    ox, oy = hx * Fraction(1, 7), hy * Fraction(2, 11)
    A = [[M(c, d).value for d in M.cols] for c in M.rows]
    pairs = [(c, d) for c in M.rows for d in M.cols]
    cache = {}

    def sig(x, y):
        key = (x, y)
        if key not in cache:
            f = (Fraction(0), x, y)
            g = [min(A[i][j] - f[i] for i in range(3)) for j in range(len(M.cols))]
            delta = [A[i][j] - f[i] - g[j] for i in range(3) for j in range(len(g))]
            zeros = frozenset(p for p, v in zip(pairs, delta) if v == 0)
            free = [v for v in delta if v != 0]
            if zeros != tight or len(set(free)) != len(free):
                cache[key] = None
            else:
                order = sorted(zip(delta, pairs))
                cache[key] = (zeros,) + tuple(frozenset([p]) for v, p in order if v != 0)
        return cache[key]

    found = set()

    def visit(x, y, w, h, level):
        corners = [sig(x, y), sig(x + w, y), sig(x, y + h), sig(x + w, y + h),
                   sig(x + w / 2, y + h / 2)]
        for c in corners:
            if c is not None:
                found.add(c)
        if level < depth and len(set(corners)) > 1:
            for dx in (0, 1):
                for dy in (0, 1):
                    visit(x + dx * w / 2, y + dy * h / 2, w / 2, h / 2, level + 1)

    for i in range(steps + 1):
        for j in range(steps + 1):
            visit(x0 + i * hx + ox - hx / 2, y0 + j * hy + oy - hy / 2, hx, hy, 0)
    return found


def brute_tropical_value(M: Profunctor):
    A = [[M(c, d).value for d in M.cols] for c in M.rows]
    n = len(A)
    best, arg = None, set()
    for perm in permutations(range(n)):
        s = sum(A[i][perm[i]] for i in range(n))
        if best is None or s < best:
            best, arg = s, {perm}
        elif s == best:
            arg.add(perm)
    return best, {tuple(M.cols[j] for j in p) for p in arg}


def member(M, Y, p, base_row=None) -> bool:
    q = p.normalized(base_row)
    return in_cell(M, Y, q.f, q.g, base_row)


def upper(M, f):
    return isbell_upper(M, f)


def ev(x):
    return ext(x)
