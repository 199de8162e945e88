"""Exact coefficient arithmetic: Gaussian rationals and polynomials in tau.

The symbol tau stands for the constant 2*pi*i produced by exterior
differentiation of a Fourier mode.  Keeping tau formal lets every algebraic
identity run over exact rationals; numeric layers substitute tau = 2j*pi
only at the very end.
"""

from __future__ import annotations

from fractions import Fraction
from math import pi

TAU_NUMERIC = 2j * pi


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class QI:
    """Gaussian rational re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @classmethod
    def of(cls, x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction, str)):
            return cls(x)
        raise TypeError(f"cannot promote {x!r} to a Gaussian rational")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return self.to_complex() == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return QI(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return self.to_complex() + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, QI):
            return QI(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return QI(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return self.to_complex() * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI(self.re / other, self.im / other)
        if isinstance(other, QI):
            d = other.abs2()
            if d == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            c = self * other.conjugate()
            return QI(c.re / d, c.im / d)
        if isinstance(other, (float, complex)):
            return self.to_complex() / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI(other) / self
        if isinstance(other, (float, complex)):
            return other / self.to_complex()
        return NotImplemented

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return float(self.abs2()) ** 0.5

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self) -> str:
        return f"QI({self.re!s}, {self.im!s})"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


class TauPoly:
    """Polynomial in the formal symbol tau = 2*pi*i with QI coefficients.

    Treated as immutable; the coefficient dict maps power -> QI and never
    stores zeros.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for p, c in coeffs.items():
                c = QI.of(c)
                if c:
                    clean[int(p)] = c
        self.coeffs = clean

    @classmethod
    def of(cls, x) -> "TauPoly":
        if isinstance(x, TauPoly):
            return x
        return cls({0: QI.of(x)})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TauPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (QI, int, Fraction)):
            return self == TauPoly.of(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __neg__(self) -> "TauPoly":
        return TauPoly({p: -c for p, c in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, (QI, int, Fraction)):
            other = TauPoly.of(other)
        if isinstance(other, TauPoly):
            out = dict(self.coeffs)
            for p, c in other.coeffs.items():
                s = out.get(p, QI_ZERO) + c
                if s:
                    out[p] = s
                else:
                    out.pop(p, None)
            return TauPoly(out)
        if isinstance(other, (float, complex)):
            return self.to_complex() + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (QI, int, Fraction, TauPoly)):
            return self + (-TauPoly.of(other))
        if isinstance(other, (float, complex)):
            return self.to_complex() - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (QI, int, Fraction)):
            other = TauPoly.of(other)
        if isinstance(other, TauPoly):
            out: dict[int, QI] = {}
            for p, c in self.coeffs.items():
                for q, d in other.coeffs.items():
                    s = out.get(p + q, QI_ZERO) + c * d
                    if s:
                        out[p + q] = s
                    else:
                        out.pop(p + q, None)
            return TauPoly(out)
        if isinstance(other, (float, complex)):
            return self.to_complex() * other
        return NotImplemented

    __rmul__ = __mul__

    def coeff(self, p: int) -> QI:
        return self.coeffs.get(p, QI_ZERO)

    def to_complex(self) -> complex:
        return sum((c.to_complex() * TAU_NUMERIC**p for p, c in self.coeffs.items()), 0j)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TauPoly(0)"
        parts = [f"({c!r})*tau^{p}" for p, c in sorted(self.coeffs.items())]
        return "TauPoly(" + " + ".join(parts) + ")"


TAU = TauPoly({1: QI_ONE})


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QI, TauPoly))


def to_complex(x) -> complex:
    """Numeric value of any supported scalar (tau evaluated at 2*pi*i)."""
    if isinstance(x, (QI, TauPoly)):
        return x.to_complex()
    if isinstance(x, Fraction):
        return complex(float(x))
    return complex(x)


def parse_scalar(re, im=0):
    """Scalar from DSL fields: rational strings and ints stay exact."""
    exact = all(isinstance(v, (int, str)) for v in (re, im))
    if exact:
        return QI(_as_fraction(re), _as_fraction(im))
    return complex(float(re), float(im))
