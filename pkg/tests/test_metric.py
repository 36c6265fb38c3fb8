from __future__ import annotations

import pytest

from helpers import RUNNING, point_at
from isbell.errors import InputError
from isbell.events import event_construct
from isbell.extreal import POS_INF, ZERO, ext
from isbell.metric import ProjectiveClass, profunctor_norm, proj_dist, proj_dist_nucleus
from isbell.profunctor import Potential, Profunctor


def pre(*v):
    return Potential.presheaf(RUNNING, list(v))


def co(*v):
    return Potential.copresheaf(RUNNING, list(v))


def test_examples():
    assert proj_dist(pre(0, 0, 0), pre("0.6", 0, "1.9")) == ext("1.9")
    assert proj_dist(pre(0, 0, 0), pre(5, 5, 5)) == ZERO
    assert proj_dist(co("0.7", "-1.6", "0.1", "-2.9"), co("0.1", "-3.5", "0.1", "-4.8")) == ext("1.9")
    # the jointly infinite coordinate is skipped
    assert proj_dist(pre(0, "inf", 1), pre(1, "inf", 1)) == ext(1)
    assert proj_dist(pre(0, "inf", 1), pre(2, "inf", 1)) == ext(2)


def test_infinite_distance():
    assert proj_dist(pre(0, "inf", 1), pre(0, 0, 1)) == POS_INF
    assert proj_dist(pre(0, "-inf", 1), pre(0, 0, 1)) == POS_INF


def test_mismatched_sides():
    with pytest.raises(InputError):
        proj_dist(pre(0, 0, 0), co(0, 0, 0, 0))


def test_projective_class_equality():
    a = ProjectiveClass(pre(0, 1, 2))
    b = ProjectiveClass(pre(3, 4, 5))
    assert a == b and hash(a) == hash(b)
    assert a != ProjectiveClass(pre(0, 1, 3))
    with pytest.raises(InputError):
        ProjectiveClass(pre("inf", "inf", "-inf"))


def test_nucleus_distance():
    p = point_at(RUNNING, [0, 0, 0])
    q = event_construct(RUNNING, p, ("c2", "d3"))
    assert proj_dist_nucleus(p, q) == ext("1.9")
    assert proj_dist_nucleus(p, p) == ZERO
    r = point_at(RUNNING, ["0.3", "-2", "1.1"])
    assert proj_dist_nucleus(p, r) == proj_dist(p.f, r.f) == proj_dist(p.g, r.g)


def test_norm():
    assert profunctor_norm(RUNNING) == ext("5.1")
    assert profunctor_norm(Profunctor.from_rows([[2, 2], [2, 2]])) == ZERO
    assert profunctor_norm(Profunctor.from_rows([["7"]])) == ZERO


def test_norm_bounds_closed_points():
    zero = pre(0, 0, 0)
    norm = profunctor_norm(RUNNING)
    for f in ([0, 5, -5], [1, 2, 3], ["-4", "0.1", "9"]):
        p = point_at(RUNNING, f)
        assert proj_dist(p.f, zero) <= norm
