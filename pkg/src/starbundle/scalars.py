"""Exact scalars: Gaussian rationals and Laurent polynomials in the formal symbol hbar.

Every computation in this package is exact; no floats appear anywhere.
A scalar is a finite sum  sum_k c_k * hbar^k  with k ranging over the
integers (hbar is formally invertible) and each c_k a complex number
with rational real and imaginary parts.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

_RationalLike = (int, Fraction)

def _fraction(value) -> Fraction:
    return value if type(value) is Fraction else Fraction(value)


def _gr(re: Fraction, im: Fraction) -> "GaussianRational":
    # trusted fast constructor for internal arithmetic
    out = object.__new__(GaussianRational)
    object.__setattr__(out, "re", re)
    object.__setattr__(out, "im", im)
    return out


class GaussianRational:
    """A complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _fraction(re))
        object.__setattr__(self, "im", _fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _RationalLike):
            return GaussianRational(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return _gr(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * _gr(other.re / norm, -other.im / norm)

    def conjugate(self) -> "GaussianRational":
        return _gr(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, _RationalLike):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _coeff(clean: dict) -> "Coefficient":
    # trusted fast constructor: keys are ints, values nonzero GaussianRationals
    out = object.__new__(Coefficient)
    object.__setattr__(out, "_data", clean)
    return out


class Coefficient:
    """A Laurent polynomial in hbar over the Gaussian rationals.

    Stored sparsely as a map from integer hbar-exponent to a nonzero
    GaussianRational; the zero scalar is the empty map.  Products add
    exponents, so hbar is formally invertible.
    """

    __slots__ = ("_data",)

    def __init__(self, data=None):
        clean = {}
        if data:
            for k, v in data.items():
                v = GaussianRational.coerce(v)
                if v:
                    clean[int(k)] = v
        object.__setattr__(self, "_data", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def coerce(value) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, (GaussianRational,) + _RationalLike):
            return Coefficient({0: GaussianRational.coerce(value)})
        raise TypeError(f"cannot interpret {value!r} as a Coefficient")

    @staticmethod
    def zero() -> "Coefficient":
        return Coefficient()

    @staticmethod
    def one() -> "Coefficient":
        return Coefficient({0: GR_ONE})

    @staticmethod
    def i() -> "Coefficient":
        return Coefficient({0: GR_I})

    @staticmethod
    def hbar(power: int = 1, scale=1) -> "Coefficient":
        """scale * hbar**power; power may be negative."""
        return Coefficient({power: GaussianRational.coerce(scale)})

    @staticmethod
    def rational(num: int, den: int = 1) -> "Coefficient":
        return Coefficient({0: GaussianRational(Fraction(num, den))})

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = Coefficient.coerce(other)
        data = dict(self._data)
        for k, v in other._data.items():
            s = data.get(k, GR_ZERO) + v
            if s:
                data[k] = s
            else:
                data.pop(k, None)
        return _coeff(data)

    __radd__ = __add__

    def __neg__(self):
        return _coeff({k: -v for k, v in self._data.items()})

    def __sub__(self, other):
        return self + (-Coefficient.coerce(other))

    def __rsub__(self, other):
        return Coefficient.coerce(other) + (-self)

    def __mul__(self, other):
        other = Coefficient.coerce(other)
        data: dict[int, GaussianRational] = {}
        for k1, v1 in self._data.items():
            for k2, v2 in other._data.items():
                k = k1 + k2
                s = data.get(k, GR_ZERO) + v1 * v2
                if s:
                    data[k] = s
                else:
                    data.pop(k, None)
        return _coeff(data)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Coefficient powers must be non-negative integers")
        out = Coefficient.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale_by_fraction(self, frac: Fraction) -> "Coefficient":
        return self * Coefficient({0: GaussianRational(frac)})

    def conjugate(self) -> "Coefficient":
        """Complex conjugation; hbar is treated as a real symbol."""
        return _coeff({k: v.conjugate() for k, v in self._data.items()})

    # -- inspection --------------------------------------------------

    def items(self):
        """(exponent, value) pairs sorted by ascending hbar-exponent."""
        return sorted(self._data.items())

    def __bool__(self):
        return bool(self._data)

    def __eq__(self, other):
        if isinstance(other, (GaussianRational,) + _RationalLike):
            other = Coefficient.coerce(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __repr__(self):
        return f"Coefficient({dict(self.items())!r})"

    def __str__(self):
        if not self._data:
            return "0"
        parts = []
        for k, v in self.items():
            if k == 0:
                parts.append(str(v))
            elif k == 1:
                parts.append(f"{v}*hbar")
            else:
                parts.append(f"{v}*hbar^{k}")
        return " + ".join(parts)


C_ZERO = Coefficient.zero()
C_ONE = Coefficient.one()
C_I = Coefficient.i()
# hbar/i = -i*hbar, the ubiquitous expansion coefficient
HBAR_OVER_I = Coefficient({1: GaussianRational(0, -1)})
# i/hbar, its reciprocal
I_OVER_HBAR = Coefficient({-1: GR_I})


def inverse_factorial(k: int) -> Fraction:
    return Fraction(1, factorial(k))
