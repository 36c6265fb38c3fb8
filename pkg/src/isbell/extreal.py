"""Exact extended reals [-inf, +inf] with absorbing -inf addition and residuation.

``x + y`` is the monoidal sum (``-inf`` absorbs everything, including ``+inf``)
and ``z - y`` is residuation, the largest ``x`` with ``x + y <= z``.  Finite
values are :class:`fractions.Fraction`; binary floats are rejected on input.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "ExtReal",
    "NEG_INF",
    "POS_INF",
    "ZERO",
    "ext",
    "add",
    "residuate",
    "parse",
    "render",
]

_NEG, _FIN, _POS = -1, 0, 1

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_FRACTION_RE = re.compile(r"^[+-]?\d+\s*/\s*[+-]?\d+$")

Number = Union[int, Fraction, Decimal]


@total_ordering
class ExtReal:
    """A value of the extended reals.

    Construct with :func:`ext` or :func:`parse`; ``ExtReal(kind, value)`` is the
    raw form (``kind`` is -1, 0 or 1 for ``-inf``, finite, ``+inf``).
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind: int, value: Fraction | None = None):
        if kind == _FIN:
            if not isinstance(value, Fraction):
                raise TypeError("finite ExtReal needs a Fraction value")
        elif kind in (_NEG, _POS):
            value = None
        else:
            raise ValueError(f"bad ExtReal kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("ExtReal is immutable")

    # predicates
    @property
    def is_finite(self) -> bool:
        return self.kind == _FIN

    @property
    def is_pos_inf(self) -> bool:
        return self.kind == _POS

    @property
    def is_neg_inf(self) -> bool:
        return self.kind == _NEG

    # arithmetic
    def __add__(self, other) -> ExtReal:
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> ExtReal:
        return residuate(self, _coerce(other))

    def __rsub__(self, other) -> ExtReal:
        return residuate(_coerce(other), self)

    # ordering
    def _key(self):
        return (self.kind, self.value if self.kind == _FIN else 0)

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __lt__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self) -> int:
        if self.kind == _FIN:
            return hash(self.value)
        return hash(("ExtReal", self.kind))

    def __repr__(self) -> str:
        return f"ExtReal({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def __float__(self) -> float:
        if self.kind == _NEG:
            return float("-inf")
        if self.kind == _POS:
            return float("inf")
        return float(self.value)

    def __reduce__(self):
        return (ExtReal, (self.kind, self.value))


NEG_INF = ExtReal(_NEG)
POS_INF = ExtReal(_POS)
ZERO = ExtReal(_FIN, Fraction(0))


def _coerce(x) -> ExtReal:
    if isinstance(x, ExtReal):
        return x
    return ext(x)


def ext(x) -> ExtReal:
    """Build an :class:`ExtReal` from an int, Fraction, Decimal or string.

    Floats raise :class:`TypeError`: decimal literals must arrive as strings so
    that ``"0.7"`` is exactly ``7/10``.
    """
    if isinstance(x, ExtReal):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an extended real")
    if isinstance(x, int):
        return ExtReal(_FIN, Fraction(x))
    if isinstance(x, Fraction):
        return ExtReal(_FIN, x)
    if isinstance(x, Decimal):
        if x.is_nan():
            raise ValueError("NaN is not an extended real")
        if x.is_infinite():
            return POS_INF if x > 0 else NEG_INF
        return ExtReal(_FIN, Fraction(x))
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, float):
        raise TypeError(
            f"refusing binary float {x!r}; pass a string such as {repr(str(x))}"
        )
    raise TypeError(f"cannot convert {type(x).__name__} to ExtReal")


def parse(text: str) -> ExtReal:
    """Parse ``"-inf"``, ``"inf"``, a decimal (scientific notation allowed) or ``"p/q"``."""
    s = text.strip()
    low = s.lower()
    if low in ("inf", "+inf", "infinity", "+infinity"):
        return POS_INF
    if low in ("-inf", "-infinity"):
        return NEG_INF
    if _DECIMAL_RE.match(s):
        return ExtReal(_FIN, Fraction(Decimal(s)))
    if _FRACTION_RE.match(s):
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return ExtReal(_FIN, Fraction(int(num), int(den)))
    raise ValueError(f"not an extended real: {text!r}")


def render(x: ExtReal) -> str:
    """Canonical text: ``-inf``, ``inf``, a terminating decimal, or ``p/q``."""
    if x.kind == _NEG:
        return "-inf"
    if x.kind == _POS:
        return "inf"
    return render_fraction(x.value)


def render_fraction(q: Fraction) -> str:
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)
    places = max(twos, fives)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    body = f"{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
    return sign + body


def add(x: ExtReal, y: ExtReal) -> ExtReal:
    """Monoidal sum; ``-inf`` is absorbing, so ``-inf + inf = -inf``."""
    if x.kind == _NEG or y.kind == _NEG:
        return NEG_INF
    if x.kind == _POS or y.kind == _POS:
        return POS_INF
    return ExtReal(_FIN, x.value + y.value)


def residuate(z: ExtReal, y: ExtReal) -> ExtReal:
    """``z - y = sup{x : x + y <= z}``.

    Differs from naive subtraction only at infinities: ``z - (-inf) = inf``,
    ``inf - y = inf`` and ``z - inf = -inf`` for ``z < inf``.
    """
    if y.kind == _NEG or z.kind == _POS:
        return POS_INF
    if y.kind == _POS or z.kind == _NEG:
        return NEG_INF
    return ExtReal(_FIN, z.value - y.value)


def fraction(x: ExtReal) -> Fraction:
    """The rational value of a finite ``x``; raises ``ValueError`` otherwise."""
    if x.kind != _FIN:
        raise ValueError(f"expected a finite value, got {render(x)}")
    return x.value
