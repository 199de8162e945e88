import math
from fractions import Fraction

import pytest

from flatchern.scalars import (
    QI,
    QI_I,
    QI_ONE,
    TAU,
    TAU_NUMERIC,
    TauPoly,
    is_exact,
    parse_scalar,
    to_complex,
)


def test_gaussian_rational_arithmetic():
    a = QI(Fraction(1, 2), Fraction(3, 4))
    b = QI(2, -1)
    assert a + b == QI(Fraction(5, 2), Fraction(-1, 4))
    assert a - b == QI(Fraction(-3, 2), Fraction(7, 4))
    assert a * b == QI(Fraction(7, 4), 1)
    assert QI_I * QI_I == QI(-1)
    assert -a == QI(Fraction(-1, 2), Fraction(-3, 4))


def test_gaussian_rational_division_exact():
    a = QI(3, 4)
    b = QI(1, -2)
    q = a / b
    assert q * b == a
    assert (QI_ONE / QI_I) == QI(0, -1)
    with pytest.raises(ZeroDivisionError):
        a / QI(0)


def test_gaussian_rational_degrades_to_complex():
    a = QI(1, 2)
    z = a * 0.5
    assert isinstance(z, complex)
    assert z == (0.5 + 1j)
    assert a + 1.0 == (2 + 2j)


def test_qi_truthiness_and_hash():
    assert not QI(0)
    assert QI(0, 1)
    assert hash(QI(2)) == hash(QI(2))
    assert QI(2) == QI(2, 0)


def test_to_complex():
    assert to_complex(QI(1, -1)) == (1 - 1j)
    assert to_complex(2.5) == 2.5
    assert to_complex(TAU) == TAU_NUMERIC
    assert TAU_NUMERIC == 2j * math.pi


def test_tau_polynomial_ring():
    p = TAU * 3 + QI_ONE
    q = TAU * TAU
    assert p.degree() == 1
    assert q.degree() == 2
    assert (p * p).coeff(2) == QI(9)
    assert (p * p).coeff(1) == QI(6)
    assert (p * p).coeff(0) == QI_ONE
    assert p - p == TauPoly()
    assert not (p - p)


def test_tau_substitution():
    p = TAU * QI(0, 1) + QI(2)
    expected = 2j * math.pi * 1j + 2
    assert to_complex(p) == pytest.approx(expected)


def test_parse_scalar_exact_and_float():
    x = parse_scalar("1/2", "-3/4")
    assert isinstance(x, QI)
    assert x == QI(Fraction(1, 2), Fraction(-3, 4))
    y = parse_scalar(3, 0)
    assert isinstance(y, QI)
    z = parse_scalar(0.25, 0)
    assert isinstance(z, complex)
    assert z == 0.25


def test_is_exact():
    assert is_exact(QI(1))
    assert is_exact(TAU)
    assert not is_exact(1.0)
    assert not is_exact(1j)
