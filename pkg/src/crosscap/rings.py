"""
Coefficient rings.

Coefficients are plain Python numbers: :class:`fractions.Fraction` for the
exact ring and ``float`` for the approximate one.  A ring object only knows
how to build, compare and print its elements.
"""
import math
from fractions import Fraction

from .exceptions import ConditioningError, DomainError

__all__ = ["Ring", "RationalRing", "FloatRing", "RATIONAL", "FLOAT", "get_ring"]


class Ring:
    name = "abstract"
    exact = True

    def convert(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def from_ratio(self, p, q=1):
        return self.convert(Fraction(p, q))

    def eq(self, a, b):
        raise NotImplementedError

    def is_zero(self, a):
        return self.eq(a, self.zero)

    def is_positive(self, a):
        return a > 0 and not self.is_zero(a)

    def parse(self, text):
        """Parse ``"p/q"``, an integer or a decimal string."""
        return self.convert(Fraction(str(text).strip()))

    def format(self, value):
        raise NotImplementedError

    def sqrt(self, value):
        raise NotImplementedError

    def check_divisor(self, d, scale=1):
        """Raise if ``d`` cannot be used as a divisor."""
        if d == 0:
            raise DomainError("division by zero")

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self), tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return f"{type(self).__name__}()"


class RationalRing(Ring):
    """Arbitrary precision rationals; equality is exact."""

    name = "rational"
    exact = True

    def convert(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def eq(self, a, b):
        return a == b

    def format(self, value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def sqrt(self, value):
        value = Fraction(value)
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        p, q = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if p * p != value.numerator or q * q != value.denominator:
            raise DomainError(f"{value} is not the square of a rational number")
        return Fraction(p, q)


class FloatRing(Ring):
    """IEEE doubles compared with a relative tolerance.

    ``atol`` guards comparisons against zero; it defaults to ``rtol``.
    """

    name = "float"
    exact = False

    def __init__(self, rtol=1e-9, atol=None):
        self.rtol = float(rtol)
        self.atol = self.rtol if atol is None else float(atol)

    def convert(self, value):
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)

    def eq(self, a, b):
        return math.isclose(a, b, rel_tol=self.rtol, abs_tol=self.atol)

    def format(self, value):
        return repr(float(value))

    def sqrt(self, value):
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        return math.sqrt(value)

    def check_divisor(self, d, scale=1):
        if d == 0:
            raise DomainError("division by zero")
        if abs(d) <= self.atol * max(1.0, abs(scale)):
            raise ConditioningError(f"divisor {d!r} is below tolerance")

    def __repr__(self):
        return f"FloatRing(rtol={self.rtol}, atol={self.atol})"


RATIONAL = RationalRing()
FLOAT = FloatRing()


def get_ring(name, tol=None):
    """Return the ring called ``name`` ("rational" or "float")."""
    if name in ("rational", "exact", "QQ"):
        return RATIONAL
    if name in ("float", "RR"):
        return FLOAT if tol is None else FloatRing(rtol=tol)
    raise ValueError(f"unknown ring {name!r}")
