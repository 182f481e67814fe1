import math
from fractions import Fraction

import numpy as np
import pytest

from questionmark.moments import (ASYM_C, LOG2, asym_ratio, chain_residual, chebyshev_chain,
                                  check_cross_relations, default_table, empirical_moment,
                                  est_sum, hausdorff_value, is_reciprocal, m_exp, moment_tables,
                                  q_annihilation, q_hat, q_polynomial, q_relations,
                                  q_span_coefficients, symmetry_residual,
                                  integral_equation_residual)
from questionmark.quadrature import integrate_unit


@pytest.fixture(scope="module")
def table():
    return default_table()


@pytest.fixture(scope="module")
def extended():
    return moment_tables(81, "extended")


def test_basic_moments(table):
    assert table.M[0] == 1 and table.m[0] == 1
    assert abs(table.M[1] - 1.5) < 1e-10
    assert abs(table.m[1] - 0.5) < 1e-13
    assert abs(2 * table.M[3] - 9 * table.M[2] + 3 * table.M[1] - 3) < 1e-8


def test_table_shape(table, extended):
    assert table.Lmax == 1000
    assert np.all(np.diff(table.M[1:40]) > 0)
    assert np.all(extended.m[1:81] > 0)
    assert np.all(np.diff(extended.m[1:81]) < 0)
    assert np.max(np.abs(extended.m[:60] - table.m[:60])) < 1e-15


def test_methods_agree():
    mono = moment_tables(20, "monomial")
    col = moment_tables(20, "collocation")
    assert np.max(np.abs(mono.m[:15] - col.m[:15])) < 1e-12
    with pytest.raises(ValueError):
        moment_tables(200, "monomial")


def test_second_moment_against_quadrature(table):
    assert abs(table.m[2] - 2 * integrate_unit(lambda x: x * x, 22)) < 1e-6


def test_symmetry_and_hausdorff(table):
    assert abs(symmetry_residual(table.m, 5)) < 1e-10
    assert hausdorff_value(table.m, 3, 2) > 0


def test_est_with_sixty_terms(table):
    value, used, _ = est_sum(table, 2, terms=60)
    assert used == 60
    assert abs(value - table.M[2]) < 1e-4


def test_est_with_tail_cut(table):
    for L in (1, 2, 3):
        value, _, last = est_sum(table, L)
        assert abs(value - table.M[L]) < 1e-8 * table.M[L]
        assert last < 1e-12 * table.M[L]


def test_cross_relation_report(table):
    report = check_cross_relations(table)
    assert all(r["pass"] for r in report)
    assert {"relation", "lhs", "rhs", "residual", "pass"} <= set(report[0])


def test_q_polynomials():
    assert q_polynomial(1) == [-3, 2]
    assert q_polynomial(2) == q_polynomial(1)
    assert q_polynomial(5) == [-3, 5, -30, 10, -15, 2]
    for n in range(1, 9):
        assert len(q_polynomial(2 * n)) - 1 == 2 * n - 1
        assert len(q_polynomial(2 * n - 1)) - 1 == 2 * n - 1
        assert is_reciprocal(q_hat(2 * n))


def test_q_polynomial_definition():
    # Q_n(x) = 2x^n - (x+1)^n - 2(1-x)^n + (-x)^n, compared coefficient by coefficient
    for n in range(1, 12):
        coeffs = [0] * (n + 1)
        for j in range(n + 1):
            coeffs[j] -= math.comb(n, j)
            coeffs[j] -= 2 * math.comb(n, j) * (-1) ** j
        coeffs[n] += 2 + (-1) ** n
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        assert q_polynomial(n) == coeffs


def test_q_span():
    for n in (2, 3, 4):
        c = q_span_coefficients(n)
        assert c is not None
        combo = [Fraction(0)] * (2 * n)
        for k, ck in enumerate(c):
            for j, a in enumerate(q_polynomial(2 * k + 1)):
                combo[j] += ck * a
        assert combo == [Fraction(a) for a in q_polynomial(2 * n)]


def test_q_annihilation(extended):
    for n in range(1, 9):
        assert abs(q_annihilation(n, extended)) < 1e-6
    for entry in q_relations(8, extended):
        assert abs(entry["annihilation"]) < 1e-6
        if entry["n"] % 2 == 0:
            assert entry["reciprocal"] and entry["span"] is not None


def test_empirical_moments(table):
    for n in range(1, 12):
        assert empirical_moment(n, 1, exact=True) == Fraction(3, 2) - Fraction(1, 2**n)
    assert empirical_moment(1, 0, exact=True) == 1
    assert abs(empirical_moment(14, 2) - table.M[2]) < 0.01
    with pytest.raises(ValueError):
        empirical_moment(21, 1)


def test_asymptotic_constant(table):
    assert round(ASYM_C, 5) == 0.18917
    assert -2 * math.sqrt(LOG2) < math.log(table.m[60]) / math.sqrt(60) < -1.2


def test_asymptotic_ratio_increasing(extended):
    assert asym_ratio(extended, 60)["increasing"]


def test_chebyshev_chain():
    assert chebyshev_chain(1)[0] == pytest.approx(1, abs=1e-15)
    c = chebyshev_chain(6)
    assert abs(c[0] - 2 * math.cos(math.pi / 8)) < 1e-14
    assert all(b < a for a, b in zip(c, c[1:]))
    assert chain_residual(c) < 1e-14


def test_exponential_generating_function(table):
    assert m_exp(0) == pytest.approx(1, abs=1e-15)
    assert abs(m_exp(1) - math.e * m_exp(-1)) < 1e-10
    assert abs(m_exp(LOG2).real - 1.428159) < 5e-6
    t = 7 + 5j
    assert abs(m_exp(t, method="series") - m_exp(t, method="spectral")) < 1e-10
    assert abs(m_exp(2j, method="quadrature") - m_exp(2j)) < 1e-6


def test_leading_asymptotic_term(table):
    def ratio(L):
        lead = math.factorial(L) * (1 / LOG2) ** L * m_exp(LOG2).real / (2 * LOG2)
        return table.M[L] / lead

    assert abs(ratio(30) - 1) < 0.02
    assert abs(ratio(30) - 1) < abs(ratio(10) - 1)


@pytest.mark.parametrize("s", [1.0, 4.0])
def test_integral_equation(s):
    assert integral_equation_residual(s) < 1e-4
