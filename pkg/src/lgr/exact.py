"""Exact scalars: rationals and first-order dual rationals.

``Rational`` is :class:`fractions.Fraction`, which already keeps values in
lowest terms with a positive denominator and uses Python's unbounded ints.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionByZero, InputError, ZeroDenominator

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction.

    Floats are refused: no binary floating point value may enter the
    exact pipeline.
    """
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise InputError(f"not a rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise InputError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise ZeroDenominator(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den))


def format_rational(x: Fraction) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_ops(a, b, op: str) -> Fraction:
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    a, b = to_rational(a), to_rational(b)
    if op == "div" and b == 0:
        raise DivisionByZero("division by zero")
    return _OPS[op](a, b)


class DualRational:
    """``value + slope*eps`` with ``eps**2 == 0``, over the rationals."""

    __slots__ = ("value", "slope")

    def __init__(self, value=0, slope=0):
        object.__setattr__(self, "value", to_rational(value))
        object.__setattr__(self, "slope", to_rational(slope))

    def __setattr__(self, name, val):
        raise AttributeError("DualRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, DualRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DualRational(other, 0)
        return None

    def is_unit(self) -> bool:
        return self.value != 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRational(self.value + o.value, self.slope + o.slope)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRational(self.value - o.value, self.slope - o.slope)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return DualRational(-self.value, -self.slope)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRational(self.value * o.value, self.value * o.slope + self.slope * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise DivisionByZero("dual division by a non-unit")
        return DualRational(
            self.value / o.value,
            (self.slope * o.value - self.value * o.slope) / (o.value * o.value),
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return DualRational(1) / self ** (-k)
        if k == 0:
            return DualRational(1)
        # (a + b eps)^k = a^k + k a^(k-1) b eps
        return DualRational(self.value**k, k * self.value ** (k - 1) * self.slope)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.slope == o.slope

    def __hash__(self):
        if self.slope == 0:
            return hash(self.value)
        return hash((self.value, self.slope))

    def __repr__(self):
        return f"DualRational({format_rational(self.value)}, {format_rational(self.slope)})"

    def __str__(self):
        return f"{format_rational(self.value)} + {format_rational(self.slope)}ε"


def dual_lift(x, seed=1) -> DualRational:
    """Lift ``x`` to ``x + seed*eps``; arithmetic then carries d/dx times seed."""
    return DualRational(x, seed)


def is_unit(x) -> bool:
    """True when ``x`` is invertible in its ring (nonzero, or unit dual)."""
    if isinstance(x, DualRational):
        return x.is_unit()
    return x != 0
