import dataclasses
import math

import numpy as np
import pytest

from questionmark.moments import default_table, moment_tables
from questionmark.periodfn import (CutError, G_eval, G_lambda_eval, G_lambda_taylor,
                                   default_period_function, eigen_residual, eigenfunction_grid,
                                   funct_residual, left_derivatives, orthogonality, sign_changes,
                                   sim_residual, symmetry_residual, integral_identity_report, eigen_integral_ratio,
                                   log_integrals, alternating_moment_sum, eigen_moment_identity)
from questionmark.transfer import eigenfunction

LAMBDA1 = 0.25553210


@pytest.fixture(scope="module")
def G():
    return default_period_function()


@pytest.fixture(scope="module")
def table():
    return default_table()


def test_three_term_equation(G):
    assert abs(sim_residual(-0.5, G)) < 1e-8
    for z in (0.3 + 0.4j, -2.5 + 1j, 3 + 2j, -7.5):
        assert abs(sim_residual(z, G)) < 1e-8


def test_symmetry_equation(G):
    assert abs(symmetry_residual(2j, G)) < 1e-8
    for z in (0.5 + 0.5j, -3 + 0.1j, 4 - 6j):
        assert abs(symmetry_residual(z, G)) < 1e-8
        assert abs(funct_residual(z, G)) < 1e-8


def test_decay_at_minus_infinity(G):
    assert abs(G(-1e4)) < 1e-3
    assert abs(G(-1e4)) < abs(G(-1e2)) < abs(G(-1))


def test_taylor_and_reflection_agree(G):
    worst = 0.0
    for re in np.linspace(-0.9, -0.2, 8):
        for im in np.linspace(-0.8, 0.8, 9):
            z = complex(re, im)
            if abs(z) <= 0.9:
                worst = max(worst, abs(G.taylor(z) - G.reflection(z)))
    assert worst < 1e-8


def test_strategies_agree_in_the_right_half(G):
    for z in (0.95 + 0.2j, 0.5 + 0.8j, 0.2 - 0.95j):
        assert abs(G.smoothed(z) - G.taylor(z)) < 1e-8 or abs(z) > 0.9


def test_real_input_gives_real_output():
    assert isinstance(G_eval(-0.5), float)
    assert G_eval(0.0) == pytest.approx(0.5, abs=1e-15)


def test_expansion_at_one(G, table):
    M = table.M
    errs = []
    for k in (2, 3, 4):
        z = -(10.0**-k)
        partial = sum(M[L] * z ** (L - 1) for L in range(1, 7))
        errs.append(abs(G(1 + z) - partial))
    assert errs[0] < 1e-6
    assert errs[1] < errs[0] / 100 and errs[2] <= max(errs[1] / 100, 1e-15)


def test_left_derivatives_converge(G, table):
    rows = left_derivatives(G)
    e1 = [abs(r[1] - table.M[2]) for r in rows]
    e2 = [abs(r[2] - 2 * table.M[3]) for r in rows]
    assert e1[0] > e1[1] > e1[2]
    assert e2[0] > e2[1] > e2[2]
    assert e1[1] / e1[0] == pytest.approx(0.5, abs=0.05)
    # first-order error, so one Richardson step removes most of it
    assert abs(2 * rows[2][1] - rows[1][1] - table.M[2]) < 0.01
    assert abs(2 * rows[2][2] - rows[1][2] - 2 * table.M[3]) < 0.5


def test_cut_guard(G):
    for z in (1.0, 2.0 + 1e-8j, 1 + 5e-7):
        with pytest.raises(CutError):
            G(z)
    assert math.isfinite(abs(G(2 + 1e-3j)))


def test_eigenfunction_gauge_and_equation():
    pair = eigenfunction(1)
    assert G_lambda_eval(1, -1.0) == pytest.approx(1.0, abs=1e-12)
    zs = np.linspace(-0.95, -0.25, 20)
    assert max(abs(eigen_residual(pair, z)) for z in zs) < 1e-7
    for z in (-0.5, 0.3, 0.2 + 0.4j):
        assert abs(G_lambda_taylor(pair, z) - pair.evaluate(z)) < 1e-9


def test_eigenfunction_domain():
    with pytest.raises(ValueError):
        G_lambda_eval(1, -3.0)
    with pytest.raises(ValueError):
        eigenfunction(9)


def test_eigenfunction_sign_changes():
    assert sign_changes([v for _, v in eigenfunction_grid(1)]) == 0
    assert sign_changes([v for _, v in eigenfunction_grid(2)]) >= 1
    assert sign_changes([1, -1, 0, -2, 3]) == 2


def test_integral_identities(table):
    ratio, target = eigen_integral_ratio(eigenfunction(1), table)
    assert target == pytest.approx(LAMBDA1 / (LAMBDA1 + 1), abs=1e-8)
    assert abs(ratio - 0.203533) < 1e-5
    assert abs(ratio - target) < 1e-5
    a, b, c = log_integrals(table)
    assert abs(a - b) < 1e-6 and abs(b - c) < 1e-6
    s, _ = alternating_moment_sum(moment_tables(81, "extended"))
    assert abs(s - 0.5) < 1e-10
    v, size = eigen_moment_identity(eigenfunction(1), table)
    assert abs(v) < 1e-6 * size


def test_identity_report(table):
    report = integral_identity_report(table, indices=(1, 2))
    assert all(r["pass"] for r in report)


def test_orthogonality():
    p, q = eigenfunction(1), eigenfunction(2)
    v, scale = orthogonality(p, q)
    assert abs(v) < 1e-6 * scale
    same, _ = orthogonality(p, p)
    assert same == 0
    scaled = dataclasses.replace(p, taylor=7 * p.taylor)
    v7, scale7 = orthogonality(scaled, q)
    assert scale7 == pytest.approx(7 * scale)
    assert abs(v7) < 1e-6 * scale7
