import math

import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from questionmark.special import (PoleError, bessel_j, bessel_j_array, gamma_complex, gen_binomial,
                                  polylog_half, rgamma)


def test_gamma_classical_values():
    assert gamma_complex(1) == pytest.approx(1, rel=1e-14)
    assert gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert gamma_complex(5) == pytest.approx(24, rel=1e-13)


def test_gamma_recurrence_at_complex_point():
    s = 2 + 3j
    assert abs(gamma_complex(s + 1) / (s * gamma_complex(s)) - 1) < 1e-12


def test_gamma_matches_scipy_on_random_grid():
    rng = np.random.default_rng(1)
    worst = 0.0
    count = 0
    while count < 100:
        s = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if abs(s) > 20 or (s.real <= 0.5 and abs(s - round(s.real)) < 0.1):
            continue
        count += 1
        ref = complex(mpmath.gamma(mpmath.mpc(s.real, s.imag)))
        worst = max(worst, abs(gamma_complex(s) / ref - 1))
        # recurrence self-consistency
        worst = max(worst, abs(gamma_complex(s + 1) / (s * gamma_complex(s)) - 1))
    assert worst < 1e-12


@pytest.mark.parametrize("s", [0, -1, -2, -7])
def test_gamma_poles_raise(s):
    with pytest.raises(PoleError):
        gamma_complex(s)


@pytest.mark.parametrize("s", [0, -1, -3])
def test_rgamma_vanishes_at_poles(s):
    assert rgamma(s) == 0


def test_rgamma_is_reciprocal():
    s = 0.3 - 1.7j
    assert abs(rgamma(s) * gamma_complex(s) - 1) < 1e-13


def test_bessel_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0


def test_bessel_first_zero():
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-10


@pytest.mark.parametrize("order", [0, 1])
def test_bessel_against_scipy(order):
    x = np.concatenate([np.linspace(0, 30, 601), np.geomspace(30, 1e4, 400)])
    ref = sp.jv(order, x)
    assert np.max(np.abs(bessel_j_array(order, x) - ref)) < 1e-12


def test_bessel_derivative_relation():
    xs = np.linspace(0.5, 40, 20)
    h = 1e-5
    for x in xs:
        d = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h)
        assert abs(d + bessel_j(1, x)) < 1e-6


def test_polylog_half_values():
    assert polylog_half(0) == pytest.approx(1, abs=1e-16)
    assert polylog_half(1) == pytest.approx(math.log(2), abs=1e-16)
    assert polylog_half(2) == pytest.approx(math.pi**2 / 12 - math.log(2) ** 2 / 2, abs=1e-15)
    assert polylog_half(2) == pytest.approx(0.5822405, abs=1e-7)


def test_polylog_half_extended_matches_mpmath():
    with mpmath.workdps(60):
        ref = mpmath.polylog(5, mpmath.mpf(1) / 2)
        assert abs(polylog_half(5, digits=60) - ref) < mpmath.mpf(10) ** -55


def test_polylog_half_monotone_towards_half():
    vals = [polylog_half(m) for m in range(1, 40)]
    assert all(0.5 < v <= 1 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_gen_binomial_examples():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(3.7 + 2j, 0) == 1
    assert gen_binomial(-2, 3) == pytest.approx(-4)


@settings(max_examples=50)
@given(st.floats(-20, 20), st.integers(0, 30))
def test_gen_binomial_matches_scipy(w, j):
    assert gen_binomial(w, j) == pytest.approx(sp.binom(w, j), rel=1e-10, abs=1e-10)
