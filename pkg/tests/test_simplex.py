import math

import numpy as np
import pytest
from scipy import integrate

from flatchern import simplex_heat_integral, simplex_heat_integral_batch


def quad_oracle(exponents):
    """Iterated adaptive quadrature over the ordered simplex."""
    a = list(exponents)
    m = len(a) - 1
    if m == 0:
        return math.exp(-a[0])
    if m == 1:
        val, _ = integrate.quad(lambda t: math.exp(-a[0] * t - a[1] * (1 - t)), 0, 1)
        return val
    if m == 2:
        val, _ = integrate.dblquad(
            lambda t2, t1: math.exp(-a[0] * t1 - a[1] * (t2 - t1) - a[2] * (1 - t2)),
            0, 1, lambda t1: t1, lambda t1: 1,
        )
        return val
    raise NotImplementedError


def test_zero_segments_value():
    assert simplex_heat_integral([0.0]) == pytest.approx(1.0)
    # integral over the 1-simplex of e^{-t*0 - (1-t)} dt
    assert simplex_heat_integral([0.0, 1.0]) == pytest.approx(1 - math.exp(-1), rel=1e-12)


def test_single_exponent():
    assert simplex_heat_integral([3.7]) == pytest.approx(math.exp(-3.7), rel=1e-14)


def test_equal_exponents_collapse():
    # all gaps share one exponent, so the simplex volume 1/M! factors out
    a = 2.5
    for m in (1, 2, 3):
        expect = math.exp(-a) / math.factorial(m)
        assert simplex_heat_integral([a] * (m + 1)) == pytest.approx(expect, rel=1e-12)


def test_reversal_symmetry():
    vals = [3.0, 1.0, 0.5, 7.25]
    assert simplex_heat_integral(vals) == pytest.approx(
        simplex_heat_integral(vals[::-1]), rel=1e-13
    )


def test_against_adaptive_quadrature():
    rng = np.random.default_rng(3)
    for _ in range(12):
        m = rng.integers(1, 3)
        a = rng.uniform(0.0, 8.0, size=m + 1)
        got = simplex_heat_integral(a)
        want = quad_oracle(a)
        assert got == pytest.approx(want, rel=1e-9, abs=1e-13)


def test_clustered_exponents_stable():
    # nearly equal entries are exactly where naive divided differences cancel
    got = simplex_heat_integral([5.0, 5.0 + 1e-9])
    assert got == pytest.approx(math.exp(-5.0), rel=1e-8)
    got3 = simplex_heat_integral([2.0, 2.0 + 1e-10, 2.0 - 1e-10])
    assert got3 == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-7)


def test_large_exponents_underflow_to_zero():
    # true value is around 1e-394: below double range, and certified negligible
    assert simplex_heat_integral([900.0, 1000.0, 950.0]) == 0.0


def test_positivity():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.uniform(0.0, 30.0, size=rng.integers(1, 5) + 1)
        assert simplex_heat_integral(a) >= 0.0


def test_batch_matches_scalar():
    rng = np.random.default_rng(5)
    batch = rng.uniform(0.0, 12.0, size=(40, 4))
    got = simplex_heat_integral_batch(batch)
    want = np.array([simplex_heat_integral(row) for row in batch])
    assert np.allclose(got, want, rtol=1e-13, atol=0)


def test_rejects_negative_exponents():
    with pytest.raises(ValueError):
        simplex_heat_integral([1.0, -0.5])
