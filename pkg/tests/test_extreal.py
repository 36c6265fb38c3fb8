from __future__ import annotations

import random
from decimal import Decimal
from fractions import Fraction
from itertools import product

import pytest

from isbell.extreal import NEG_INF, POS_INF, ZERO, add, ext, parse, render, residuate


def test_add_examples():
    assert add(NEG_INF, POS_INF) == NEG_INF
    assert add(ext(2), ext(3)) == ext(5)
    assert add(POS_INF, ext(5)) == POS_INF


def test_residuation_table():
    assert residuate(POS_INF, POS_INF) == POS_INF
    assert residuate(NEG_INF, NEG_INF) == POS_INF
    assert residuate(ext(5), ext(2)) == ext(3)
    assert residuate(ext(3), NEG_INF) == POS_INF
    assert residuate(ext(3), POS_INF) == NEG_INF
    assert residuate(NEG_INF, ext(1)) == NEG_INF
    assert residuate(POS_INF, ext(-7)) == POS_INF


def test_operators_match_functions():
    a, b = ext("1.5"), ext("-0.25")
    assert a + b == add(a, b)
    assert a - b == residuate(a, b)


def test_decimal_strings_are_exact():
    assert parse("0.7").value == Fraction(7, 10)
    assert parse("-2.9").value == Fraction(-29, 10)
    assert parse("1e-3").value == Fraction(1, 1000)
    assert parse("8/5").value == Fraction(8, 5)
    assert parse("inf") == POS_INF and parse("-inf") == NEG_INF
    assert ext(Decimal("0.1")).value == Fraction(1, 10)


def test_floats_refused():
    with pytest.raises(TypeError):
        ext(0.7)


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "1..2", "nan"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse(bad)


@pytest.mark.parametrize("text", ["0", "1.6", "-2.9", "8/3", "-1/7", "inf", "-inf", "12.345"])
def test_render_round_trip(text):
    assert render(parse(text)) == text


def test_order():
    assert NEG_INF < ext(-10**9) < ZERO < ext(10**9) < POS_INF
    assert sorted([POS_INF, ext(1), NEG_INF]) == [NEG_INF, ext(1), POS_INF]


def test_hash_consistency():
    assert hash(ext("1.5")) == hash(parse("3/2"))
    assert len({ext(1), parse("1.0"), parse("2/2")}) == 1


def test_adjunction_all_infinity_patterns():
    r = random.Random(1)
    finite = [ext(Fraction(r.randint(-9, 9), r.randint(1, 4))) for _ in range(4)]
    values = [NEG_INF, POS_INF] + finite
    for x, y, z in product(values, repeat=3):
        assert (add(x, y) <= z) == (x <= residuate(z, y))


def test_monotonicity():
    r = random.Random(2)
    values = [NEG_INF, POS_INF] + [ext(r.randint(-5, 5)) for _ in range(5)]
    for y, z, z2 in product(values, repeat=3):
        if z <= z2:
            assert residuate(z, y) <= residuate(z2, y)
            assert residuate(y, z2) <= residuate(y, z)


def test_add_monoid_laws():
    r = random.Random(3)
    values = [NEG_INF, POS_INF] + [ext(r.randint(-5, 5)) for _ in range(5)]
    for x, y, z in product(values, repeat=3):
        assert add(x, y) == add(y, x)
        assert add(add(x, y), z) == add(x, add(y, z))
        assert add(x, ZERO) == x
