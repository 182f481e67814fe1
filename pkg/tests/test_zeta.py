import math

import numpy as np
import pytest

from questionmark import config
from questionmark.moments import LOG2, default_table
from questionmark.special import gamma_complex
from questionmark.zeta import (DomainError, M_from_fourier, critical_line_Z, dpf_residual,
                               eisenstein_g1, fourier_coeff, fourier_star, fourier_table,
                               functional_equation_residual, mellin_closed, mellin_G,
                               mellin_residue, phi, psi_fourier_l2, psi_square_norm,
                               zero_scan, zeta_derivative, zeta_M)


@pytest.fixture(scope="module")
def table():
    return default_table()


@pytest.fixture(scope="module")
def zeros():
    return zero_scan(1.5, 90, 0.1)


def test_fourier_star_zero():
    assert abs(fourier_star(0) - 1.428159) < 5e-6


def test_fourier_star_one():
    c = fourier_star(1)
    assert abs(c.real + 0.521907) < 5e-6 and abs(c.imag - 0.148754) < 5e-6


def test_fourier_star_eight():
    c = fourier_star(8)
    assert abs(c.real + 0.008479) < 5e-6 and abs(c.imag - 0.024012) < 5e-6


def test_fourier_star_against_direct_quadrature():
    # independent oracle: 2 int_0^1 e^(x t) dF with the F-midpoint rule
    from questionmark.quadrature import integrate_unit
    for n in (1, 5, 8):
        t = LOG2 - 2j * math.pi * n
        direct = 2 * integrate_unit(lambda x: np.exp(t * x), 20)
        assert abs(fourier_star(n) - direct) < 1e-5


def test_fourier_symmetry_and_decay():
    tab = fourier_table(1000)
    for n in (1, 7, 300):
        assert tab[-n] == tab[n].conjugate()
        assert fourier_coeff(-n) == fourier_coeff(n).conjugate()
    scaled = [abs(tab[n]) * n for n in range(1, 1001)]
    assert max(scaled) < 1
    assert max(scaled[500:]) < 2 * max(scaled[:500])


def test_large_index_paths_agree():
    # below the switch both the spectral functional and the binned quadrature apply
    from questionmark.moments import m_exp
    from questionmark.zeta import _binned_m, frequency
    binned = _binned_m(22)
    for n in range(30, 70, 3):
        assert abs(m_exp(frequency(n), method="spectral") - binned[n]) < 1e-6
    with pytest.raises(DomainError):
        fourier_coeff(10001)


def test_psi_l2_convergence():
    e0, e8, e64 = psi_fourier_l2(0), psi_fourier_l2(8), psi_fourier_l2(64)
    assert e8 < e0 and e64 < e8
    tab = fourier_table(64)
    bessel = sum(abs(tab[n]) ** 2 for n in range(-64, 65))
    assert bessel <= psi_square_norm() + 1e-6
    # Parseval: the residual is the complement of the captured energy
    assert psi_square_norm() - bessel == pytest.approx(e64, abs=1e-6)


def test_moments_from_fourier(table):
    assert abs(M_from_fourier(2, 400) - table.M[2]) < 1e-5
    assert abs(M_from_fourier(1, 2000) - 1.5) < 2e-3
    lead = math.factorial(20) * fourier_coeff(0).real / LOG2**20
    assert abs(lead / table.M[20] - 1) < 0.01


def test_special_values(table):
    for L in range(1, 7):
        assert abs(zeta_M(L).value - table.M[L] / math.factorial(L)) < 1e-8
    assert abs(zeta_M(0).value - 1) < 1e-12


def test_dirichlet_at_one():
    v = zeta_M(1, "dirichlet", N=2000)
    assert v.method == "dirichlet"
    assert abs(v.value - 1.5) < 2e-3
    with pytest.raises(DomainError):
        zeta_M(0.2, "dirichlet")


def test_functional_equation():
    pts = [complex(re, im) for re in (0.3, 0.5, 0.7, 0.9, 0.99) for im in (0.0, 2.5)]
    for s in pts:
        scale = abs(zeta_M(-s).value * gamma_complex(-s))
        assert abs(functional_equation_residual(s)) < 1e-3 * max(1.0, scale)


def test_reality_and_conjugation():
    for s in (0.7 + 3j, -2.3 + 0.5j, 4 + 12j):
        assert abs(zeta_M(s.conjugate()).value - zeta_M(s).value.conjugate()) < 1e-10
    assert abs(zeta_M(2.5).value.imag) < 1e-14


def test_phi_methods_agree():
    for w in (0.5 + 1j, -1.2 + 3j, 2 - 5j):
        assert abs(phi(w, "binomial") - phi(w, "spectral")) < 1e-9
    with config.using(quadrature_depth=18):
        assert abs(phi(0.5 + 1j, "quadrature") - phi(0.5 + 1j)) < 1e-6


def test_derivative_at_negative_integers(table):
    for L in range(1, 5):
        d = zeta_derivative(-L).real
        expected = math.factorial(L - 1) * table.M[L]
        assert abs(abs(d) / expected - 1) < 1e-4


def test_critical_line():
    ts = np.linspace(0.5, 150, 20)
    for t in ts:
        z = critical_line_Z(float(t))
        assert abs(z.imag) < 1e-9
        assert abs(z.real) <= 1 + 1e-12
    assert critical_line_Z(0.0).real == pytest.approx(1, abs=1e-14)
    with pytest.raises(DomainError):
        critical_line_Z(250)


def test_zero_scan_stable(zeros):
    assert len(zeros) > 10
    fine = zero_scan(1.5, 90, 0.05)
    assert len(fine) == len(zeros)
    assert max(abs(a.t_zero - b.t_zero) for a, b in zip(zeros, fine)) < 1e-7
    for z in zeros:
        assert z.bracket_width <= 1e-8
        assert z.Z_left * z.Z_right <= 0


def test_zero_confirmed_by_quadrature(zeros):
    t = zeros[0].t_zero
    vals = []
    for depth in (16, 18):
        with config.using(quadrature_depth=depth):
            vals.append(abs(critical_line_Z(t, "quadrature").real))
    assert vals[1] < 1e-8 and vals[1] < vals[0]


def test_mellin_transform():
    assert abs(mellin_G(0.5) - mellin_closed(0.5).real) < 1e-6
    s = 0.3
    assert abs(mellin_closed(s + 1) + mellin_closed(-s + 1)) < 1e-10
    assert abs(mellin_residue(2) - 1.5) < 1e-6
    with pytest.raises(DomainError):
        mellin_G(1.5)


def test_eisenstein():
    assert abs(eisenstein_g1(1j) - math.pi) < 1e-9
    z = 0.3 + 2j
    assert abs(eisenstein_g1(z + 1) - eisenstein_g1(z)) < 1e-12
    # weight-two transformation with the non-holomorphic correction
    z = 0.2 + 1.1j
    lhs = eisenstein_g1(-1 / z)
    rhs = z * z * eisenstein_g1(z) - 2j * math.pi * z
    assert abs(lhs - rhs) < 1e-9
    with pytest.raises(DomainError):
        eisenstein_g1(0.5 + 0.1j)


def test_dpf_relation():
    for z in (-0.5 + 2j, 1j):
        assert dpf_residual(z) < 1e-6
