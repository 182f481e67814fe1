import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from questionmark.contfrac import cw_generation, farey_level
from questionmark.minkowski import (DyadicRational, F_exact, F_extended, F_real, figure_rows,
                                    psi, psi_extrema, qm_exact, qm_inverse, qm_real)


def test_qm_exact_examples():
    assert str(qm_exact(Fraction(1, 2))) == "1/2"
    assert str(qm_exact(Fraction(2, 5))) == "3/8"
    assert str(qm_exact(Fraction(1, 3))) == "1/4"
    with pytest.raises(ValueError):
        qm_exact(Fraction(3, 2))


def test_dyadic_normalisation():
    d = DyadicRational(12, 5)
    assert (d.k, d.e) == (3, 3)
    assert DyadicRational(0, 7).e == 0
    with pytest.raises(ValueError):
        DyadicRational.from_fraction(Fraction(1, 3))


def test_qm_inverse_examples():
    assert qm_inverse(Fraction(1, 2)) == Fraction(1, 2)
    assert qm_inverse(Fraction(1, 4)) == Fraction(1, 3)
    assert qm_inverse(Fraction(3, 8)) == Fraction(2, 5)


def test_qm_inverse_round_trip_all_dyadics():
    for e in range(0, 17):
        for k in range(0, 2**e + 1):
            if e and k % 2 == 0:
                continue
            d = Fraction(k, 2**e)
            assert qm_exact(qm_inverse(d)).to_fraction() == d


def test_monotone_and_mediant_bisection():
    pts = farey_level(12)
    vals = [qm_exact(x).to_fraction() for x in pts]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    # every odd-indexed point is the mediant of its neighbours
    for i in range(1, len(pts) - 1, 2):
        assert vals[i] == (vals[i - 1] + vals[i + 1]) / 2


def test_distribution_equation_branches():
    for x in cw_generation(10).elements:
        if x >= 1:
            assert 2 * F_exact(x) == F_exact(x - 1) + 1
        else:
            assert 2 * F_exact(x) == F_exact(x / (1 - x))


def test_tree_image_is_odd_dyadics():
    for n in range(1, 13):
        image = sorted(F_exact(x) for x in cw_generation(n).elements)
        assert image == [Fraction(k, 2**n) for k in range(1, 2**n, 2)]


def test_F_real_values():
    assert F_real(1.0) == 0.5
    assert abs(F_real((1 + math.sqrt(5)) / 2) - 2 / 3) < 1e-12
    assert F_real(0.0) == 0.0


@given(st.floats(1e-3, 1e3))
def test_F_reciprocal_symmetry(x):
    assert abs(F_real(x) + F_real(1 / x) - 1) < 1e-10


@given(st.fractions(min_value=0, max_value=20, max_denominator=10**6))
def test_F_real_matches_exact(r):
    assert abs(F_real(r) - float(F_exact(r))) < 1e-15


def test_F_shift_and_negative_extension():
    for x in np.linspace(0, 3, 31):
        assert F_real(x + 1) == pytest.approx(0.5 + F_real(x) / 2, abs=1e-15)
    for x in (-0.3, -1.7, -4.25):
        assert F_extended(x) == pytest.approx(2 * F_extended(x + 1) - 1, abs=1e-12)


def test_F_real_rejects_bad_input():
    with pytest.raises(ValueError):
        F_real(-0.5)
    with pytest.raises(ValueError):
        F_real(float("nan"))


def test_psi():
    assert psi(0.0) == 1.0
    assert psi(1.0) == 1.0
    for x in (0.1, 0.37, 0.9):
        assert psi(x + 1) == psi(x)
        assert psi(x) == pytest.approx(2**x * (1 - F_real(x)))


def test_psi_extrema_bracket_one():
    ext = psi_extrema(14)
    assert ext["psi_min"] < 1 < ext["psi_max"]
    assert 0.9 < ext["psi_min"] and ext["psi_max"] < 1.2


def test_figure_rows():
    rows = figure_rows("qm", 8)
    assert rows[0] == (0.0, 0.0) and rows[-1] == (1.0, 1.0)
    assert rows[4][1] == 0.5
    assert qm_real(0.4) == pytest.approx(0.375)
