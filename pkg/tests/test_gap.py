from __future__ import annotations

import pytest

from helpers import DELTA1, DELTA2, DELTA3, RUNNING, Z1, point_at, rows_of
from isbell.errors import InputError, UnsupportedError
from isbell.extreal import ext
from isbell.gap import gap_matrix, is_fixed_by_rows, witness_relation
from isbell.profunctor import NucleusPoint, Potential, Profunctor, closure_presheaf

@pytest.mark.parametrize("f, expected", [
    (["0", "0", "0"], DELTA1),
    (["0", "-0.1", "0"], DELTA2),
    (["0", "0.1", "0"], DELTA3),
])
def test_gap_matrices(f, expected):
    assert rows_of(gap_matrix(RUNNING, point_at(RUNNING, f))) == expected


def test_radii(base):
    gap = gap_matrix(RUNNING, base)
    assert [str(x) for x in gap.radii()] == ["0", "0", "0", "0", "0.5", "1.3", "1.6", "1.6",
                                             "1.9", "3.1", "4.2", "5.1"]
    mult = dict(gap.radius_multiplicities())
    assert mult[ext("1.6")] == 2 and mult[ext(0)] == 4


def test_witness_relation(base):
    assert witness_relation(base) == Z1
    ev = point_at(RUNNING, ["0.6", "0", "1.9"])
    assert witness_relation(ev) == {("c0", "d1"), ("c1", "d3")} | {("c2", d) for d in RUNNING.cols}


def test_witness_relation_needs_finite():
    M = Profunctor.from_rows([[0, "inf"], ["inf", 0]])
    p = NucleusPoint(M, Potential.presheaf(M, [0, "-inf"]),
                     Potential.copresheaf(M, [0, "inf"]))
    with pytest.raises(UnsupportedError):
        witness_relation(p)


def test_free_pair_rejected():
    f = Potential.presheaf(RUNNING, [0, 0, 0])
    g = Potential.copresheaf(RUNNING, ["0.7", "-1.6", "0.2", "-2.9"])
    with pytest.raises(InputError, match="d3"):
        gap_matrix(RUNNING, f, g)


def test_fixed_by_rows():
    assert is_fixed_by_rows(RUNNING, Potential.presheaf(RUNNING, [0, 0, 0]))
    bumped = Potential.presheaf(RUNNING, [0, 0, "1.9"])
    assert not is_fixed_by_rows(RUNNING, bumped)
    assert closure_presheaf(RUNNING, bumped) != bumped


def test_rows_and_columns_have_zeros(base):
    gap = gap_matrix(RUNNING, base)
    assert gap.rows_have_zero() and gap.cols_have_zero()
