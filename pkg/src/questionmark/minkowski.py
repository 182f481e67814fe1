"""Minkowski's question mark function ?(x) = 2F(x), its inverse and Psi(x).

Exact evaluation works on ``Fraction`` inputs and returns dyadic
rationals.  Floating inputs are converted to their exact binary value and
expanded into a continued fraction with integer arithmetic, so the result
is the value of F at the machine number that was passed in.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import get_config
from .contfrac import cf_from_rational

SNAP = 1e-14
MAX_QUOTIENT = 60


@dataclass(frozen=True)
class DyadicRational:
    """The number k / 2**e in lowest terms."""

    k: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError("exponent must be non-negative")
        k, e = self.k, self.e
        while e > 0 and k % 2 == 0:
            k //= 2
            e -= 1
        if k == 0:
            e = 0
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "e", e)

    @classmethod
    def from_fraction(cls, x) -> "DyadicRational":
        x = Fraction(x)
        e = x.denominator.bit_length() - 1
        if x.denominator != 1 << e:
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, e)

    def to_fraction(self) -> Fraction:
        return Fraction(self.k, 1 << self.e)

    def __float__(self):
        return math.ldexp(self.k, -self.e)

    def __str__(self):
        return f"{self.k}/{1 << self.e}" if self.e else str(self.k)


def F_exact(r) -> Fraction:
    """F(r) for a rational r >= 0, from 1 - 2^-a0 + 2^-(a0+a1) - ..."""
    cf = cf_from_rational(r)
    total = Fraction(1)
    acc = 0
    sign = -1
    for a in cf:
        acc += a
        total += sign * Fraction(1, 1 << acc)
        sign = -sign
    return total


def qm_exact(r) -> DyadicRational:
    """?(r) = 2F(r) for a rational r in [0, 1], exactly."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError("?(x) is evaluated exactly only on [0, 1]")
    return DyadicRational.from_fraction(2 * F_exact(r))


def qm_inverse(d) -> Fraction:
    """The rational x in [0, 1] with ?(x) = d, for a dyadic d (Conway's box function)."""
    if not isinstance(d, DyadicRational):
        d = DyadicRational.from_fraction(d)
    target = d.to_fraction()
    if not 0 <= target <= 1:
        raise ValueError("dyadic must lie in [0, 1]")
    lo_p, lo_q, hi_p, hi_q = 0, 1, 1, 1
    lo_d, hi_d = Fraction(0), Fraction(1)
    if target == 0:
        return Fraction(0)
    if target == 1:
        return Fraction(1)
    # Stern-Brocot descent: ? maps each mediant to the midpoint of the image interval
    while True:
        mid = (lo_d + hi_d) / 2
        p, q = lo_p + hi_p, lo_q + hi_q
        if target == mid:
            return Fraction(p, q)
        if target < mid:
            hi_p, hi_q, hi_d = p, q, mid
        else:
            lo_p, lo_q, lo_d = p, q, mid


def _F_from_ratio(p: int, q: int, eps: float) -> float:
    sign = -1.0
    acc = 0
    terms = [1.0]
    while q:
        a, rem = divmod(p, q)
        acc += a
        weight = math.ldexp(1.0, -acc) if acc < 1100 else 0.0
        terms.append(sign * weight)
        sign = -sign
        if weight < eps or a > MAX_QUOTIENT:
            break
        p, q = q, rem
    return math.fsum(terms)


def F_real(x, eps: float | None = None) -> float:
    """F(x) for real x >= 0."""
    if eps is None:
        eps = get_config().truncation_eps
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("F_real needs x >= 0")
        return _F_from_ratio(x.numerator, x.denominator, eps)
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ValueError("F_real needs a finite x >= 0")
    nearest = round(x)
    if abs(x - nearest) < SNAP:
        x = float(nearest)
    p, q = x.as_integer_ratio()
    return _F_from_ratio(p, q, eps)


def F_array(xs, eps: float | None = None) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    return np.fromiter((F_real(v, eps) for v in xs.ravel()), float, xs.size).reshape(xs.shape)


def F_extended(x: float) -> float:
    """F on the whole real line, using F(x) = 2F(x+1) - 1 for negative x."""
    x = float(x)
    if x >= 0:
        return F_real(x)
    n = math.ceil(-x)
    return math.ldexp(F_real(x + n), n) - (math.ldexp(1.0, n) - 1)


def qm_real(x: float) -> float:
    """?(x) = 2F(x) on [0, 1]."""
    return 2.0 * F_real(x)


def psi(x: float) -> float:
    """The 1-periodic function Psi(x) = 2^x (1 - F(x))."""
    x = float(x)
    y = x - math.floor(x)
    return 2.0**y * (1.0 - F_real(y))


def psi_extrema(grid_exp: int = 16) -> dict:
    """Scan Psi on the grid k/2^grid_exp of [0, 1) and report its extremes."""
    xs = np.arange(2**grid_exp) / 2.0**grid_exp
    vals = np.exp2(xs) * (1.0 - F_array(xs))
    i, j = int(np.argmin(vals)), int(np.argmax(vals))
    return {"x_min": float(xs[i]), "psi_min": float(vals[i]),
            "x_max": float(xs[j]), "psi_max": float(vals[j])}


def figure_rows(kind: str, points: int = 1024) -> list[tuple[float, float]]:
    """Sample ?(x) (``kind='qm'``) or Psi(x) (``kind='psi'``) on a uniform grid of [0, 1]."""
    xs = [k / points for k in range(points + 1)]
    if kind == "qm":
        return [(x, qm_real(x)) for x in xs]
    if kind == "psi":
        return [(x, psi(x)) for x in xs]
    raise ValueError(f"unknown figure kind {kind!r}")


def write_xy_csv(rows, fh, header=("x", "value")) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for x, y in rows:
        w.writerow([f"{x:.17g}", f"{y:.17g}"])
