import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from questionmark.moments import default_table
from questionmark.quadrature import integrate_unit
from questionmark.special import polylog_half
from questionmark.transfer import (PrecisionError, build_matrix, check_polynomial_identity,
                                   collocation_matrix, eigen_polynomial, eigenfunction,
                                   neumann_solve, nystrom_spectrum, point_spectrum_residual,
                                   solve_period_coeffs, spectrum)

LAMBDAS = [0.25553210, -0.08892666, 0.03261586, -0.01217621, 0.00458154, -0.00173113]


def _series(j, k, w):
    """Brute-force entry of the weight-w monomial matrix: coefficient of x^j in S_w x^k."""
    # (x+n)^-(w+k) = sum_j C(-(w+k), j) n^-(w+k+j) x^j
    with mpmath.workdps(30):
        c = mpmath.binomial(-(w + k), j)
        return float(c * mpmath.nsum(lambda n: 2**-n * n ** -(w + k + j), [1, mpmath.inf]))


def test_monomial_entries():
    assert np.array(build_matrix(0, 1, "monomial").entries, dtype=float).tolist() == [[1.0]]
    B = build_matrix(2, 4, "monomial").entries
    assert float(B[0, 0]) == pytest.approx(0.5822405264650125, abs=1e-15)
    assert float(B[1, 0]) == pytest.approx(-2 * polylog_half(3), abs=1e-15)
    for j in range(4):
        for k in range(4):
            assert float(B[j, k]) == pytest.approx(_series(j, k, 2), rel=1e-12)


def test_build_matrix_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_matrix(1, 8)
    with pytest.raises(ValueError):
        build_matrix(2, 300)


def test_spectrum_leading_values():
    ev = spectrum(64)
    assert len(ev) >= 6
    for got, want in zip(ev, LAMBDAS):
        assert abs(got - want) < 1e-6
    assert all(abs(v) <= polylog_half(2) for v in ev)


def test_spectrum_stable_under_refinement():
    a, b = spectrum(64), spectrum(80)
    assert max(abs(x - y) for x, y in zip(a[:6], b[:6])) < 1e-8


def test_weight_zero_spectrum():
    ev = np.linalg.eigvals(np.array(collocation_matrix(0, 64)))
    ev = sorted(ev, key=lambda v: -abs(v))
    assert abs(ev[0] - 1) < 1e-12
    assert abs(abs(ev[1]) - LAMBDAS[0]) < 1e-6
    # beyond the constant mode the resolved S_0 spectrum is the S_2 spectrum with flipped signs
    s0 = spectrum(64, weight=0)
    s2 = spectrum(64)
    assert s0[0] == pytest.approx(1, abs=1e-12)
    assert max(abs(-x - y) for x, y in zip(s0[1:7], s2[:6])) < 1e-5


def test_eigenfunction_equation_and_normalisation():
    pair = eigenfunction(1)
    assert pair.lam == pytest.approx(LAMBDAS[0], abs=1e-8)
    assert pair.evaluate(-1) == pytest.approx(1.0, abs=1e-12)
    z = -0.5
    lhs = 2 * pair.evaluate(z + 1)
    rhs = pair.evaluate(z) + pair.evaluate(1 / z) / (pair.lam * z * z)
    assert abs(lhs - rhs) < 1e-8


def test_eigenfunction_value_ratio():
    ratios = []
    for i in (1, 2, 3):
        pair = eigenfunction(i)
        ratios.append(abs(pair.evaluate(0) / pair.evaluate(-1)))
    lam1 = eigenfunction(1).lam
    assert ratios[0] == pytest.approx((1 + 1 / lam1) / 2, abs=1e-4)
    assert ratios[0] == pytest.approx(2.45672, abs=1e-4)
    assert ratios[0] < ratios[1] < ratios[2]


def test_solve_period_coeffs():
    m = solve_period_coeffs(60, 100)
    assert abs(m[0] - 0.5) < 1e-12
    assert abs(float(m[1]) - 2 * integrate_unit(lambda x: x * x, 22)) < 1e-5
    table = default_table()
    assert max(abs(float(m[L - 1]) - table.m[L]) for L in range(1, 16)) < 1e-8


def test_solve_period_coeffs_needs_digits():
    with pytest.raises(PrecisionError):
        solve_period_coeffs(40, 30)


def test_neumann_solve():
    zero = neumann_solve(np.zeros_like)
    assert np.max(np.abs(zero.values)) == 0
    g = neumann_solve(lambda x: x - 0.5)
    assert g.residual < 1e-9
    with pytest.raises(ValueError):
        neumann_solve(lambda x: np.full_like(x, 2.0))


def test_eigen_polynomials():
    assert eigen_polynomial(1).coeffs == (Fraction(-1, 4), 1)
    assert eigen_polynomial(2).coeffs == (Fraction(1, 15), Fraction(-3, 5), 1)
    assert eigen_polynomial(4).coeffs[0] == Fraction(37, 5865)
    for n in range(1, 9):
        P = eigen_polynomial(n)
        assert P.coeffs[-1] == 1
        assert P.delta == Fraction((-1) ** n, 2 ** (n + 1) - 1)
        assert check_polynomial_identity(P)


def test_point_spectrum():
    samples = np.linspace(0.01, 0.99, 50)
    for n in range(1, 5):
        assert point_spectrum_residual(n, samples) < 1e-10


def test_nystrom_cross_check():
    ev = nystrom_spectrum(80, 40.0)
    assert abs(ev[0] - 0.2555) < 1e-3
    assert any(v < 0 for v in ev[:3])
    neg = [v for v in ev if v < 0]
    assert abs(neg[0] - LAMBDAS[1]) < 1e-3
