"""Exact scalars a + b*i with rational a, b (the field Q(i), i**2 = -1).

Fraction keeps numerator/denominator coprime with positive denominator, so
values are always stored in canonical form and == is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def rat(x) -> Fraction:
    """Coerce int / str 'p/q' / Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rational_sqrt(r: Fraction) -> Fraction | None:
    """Positive square root of r if r is a perfect rational square, else None."""
    if r < 0:
        return None
    pn, qn = r.numerator, r.denominator
    sp, sq = isqrt(pn), isqrt(qn)
    if sp * sp == pn and sq * sq == qn:
        return Fraction(sp, sq)
    return None


_F0 = Fraction(0)


def _fast(re: Fraction, im: Fraction) -> "Coeff":
    # internal constructor bypassing coercion; arguments must be Fractions
    c = object.__new__(Coeff)
    object.__setattr__(c, "re", re)
    object.__setattr__(c, "im", im)
    return c


class Coeff:
    """Immutable element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("Coeff is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Coeff":
        if type(other) is Coeff:
            return _fast(self.re + other.re, self.im + other.im)
        other = _coerce(other)
        return _fast(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "Coeff":
        return _fast(-self.re, -self.im)

    def __sub__(self, other) -> "Coeff":
        other = _coerce(other)
        return _fast(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "Coeff":
        return _coerce(other) - self

    def __mul__(self, other) -> "Coeff":
        if type(other) is Coeff:
            if not self.im and not other.im:
                return _fast(self.re * other.re, _F0)
        else:
            other = _coerce(other)
            if not self.im and not other.im:
                return _fast(self.re * other.re, _F0)
        return _fast(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Coeff":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i)")
        if not self.im:
            return _fast(1 / self.re, _F0)
        n = self.re * self.re + self.im * self.im
        return _fast(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "Coeff":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "Coeff":
        return _coerce(other) * self.inverse()

    def sqrt(self) -> "Coeff":
        """Square root for constants of the shape r**2 or -r**2, r rational.

        Branch: sqrt(r**2) = |r|, sqrt(-r**2) = i*|r|.  Anything else is
        rejected so coefficients never leave Q(i).
        """
        if self.im:
            raise ValueError(f"sqrt not supported for non-rational constant {self}")
        r = rational_sqrt(self.re if self.re >= 0 else -self.re)
        if r is None:
            raise ValueError(f"constant term {self} is not +/- a rational square")
        return Coeff(r) if self.re >= 0 else Coeff(0, r)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, Coeff):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    # -- wire format --------------------------------------------------------

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @staticmethod
    def from_json(obj: dict) -> "Coeff":
        return Coeff(Fraction(obj["re"]), Fraction(obj.get("im", "0")))


def _coerce(x) -> Coeff:
    if isinstance(x, Coeff):
        return x
    if isinstance(x, (int, Fraction)):
        return Coeff(x)
    raise TypeError(f"cannot coerce {x!r} into Q(i)")


C0 = Coeff(0)
C1 = Coeff(1)
CI = Coeff(0, 1)
