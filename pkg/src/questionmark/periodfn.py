"""The period function G(z) = sum_L m_{L+1} z^L on the cut plane C minus (1, inf).

Evaluation strategies:

* Taylor series from the moment table when |z| <= 0.9;
* the reflection G(-u) = sum_n 2^-n [(u+n)^-1 - (u+n)^-2 G(-1/(u+n))]
  when Re z <= -0.2 (the inner arguments land inside the Taylor disk);
* for Re z <= 1, G(1-y) = T(h_y) with the smooth integrand
  h_y(x) = sum_n 2^-n [1/(x+n+y) + (x+n)/(1+y(x+n))], integrated with the
  spectral dF functional; this stays accurate up to z = 1 itself;
* otherwise one step of G(w) = [G(w-1) - 1/(w-1) - (w-1)^-2 G(1/(w-1))] / 2.
"""

from __future__ import annotations

import math

import numpy as np

from .moments import MomentTable, default_table
from .quadrature import integrate_unit
from .transfer import EigenPair, eigenfunction, invariant_functional, n_terms

CUT_GUARD = 1e-6
MAX_DEPTH = 64
TAYLOR_RADIUS = 0.9
TAYLOR_TERMS = 600


class CutError(ValueError):
    """The argument is too close to the branch cut [1, inf)."""


def _cut_distance(z: complex) -> float:
    if z.real >= 1:
        return abs(z.imag)
    return abs(z - 1)


class PeriodFunction:
    """G(z) built from a moment table."""

    def __init__(self, table: MomentTable | None = None, dim: int = 256):
        self.table = table or default_table()
        self.coeffs = np.array(self.table.m[1:TAYLOR_TERMS + 1])
        self.dim = dim
        self._n = np.arange(1, n_terms() + 1)
        self._scale = 2.0 ** -self._n

    # -- strategies
    def taylor(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coeffs))

    def reflection(self, z: complex) -> complex:
        u = -z + self._n
        inner = np.polynomial.polynomial.polyval(-1 / u, self.coeffs)
        return complex(np.sum(self._scale * (1 / u - inner / u**2)))

    def smoothed(self, z: complex) -> complex:
        y = 1 - z
        x, w = invariant_functional(self.dim)
        xn = x[:, None] + self._n[None, :]
        h = (1 / (xn + y) + xn / (1 + y * xn)) @ self._scale
        return complex(np.dot(w, h))

    def spectral(self, z: complex) -> complex:
        """2 T(x/(1 - xz)); accurate only when 1/z is well away from [0, 1]."""
        x, w = invariant_functional(self.dim)
        return complex(2 * np.dot(w, x / (1 - x * z)))

    def _eval(self, z: complex, depth: int) -> complex:
        if depth > MAX_DEPTH:
            raise RecursionError("descent depth exceeded")
        if _cut_distance(z) < CUT_GUARD:
            raise CutError(f"{z} is within {CUT_GUARD} of the cut [1, inf)")
        if abs(z) <= TAYLOR_RADIUS:
            return self.taylor(z)
        if z.real <= -0.2:
            return self.reflection(z)
        if z.real <= 1:
            return self.smoothed(z)
        v = z - 1
        return (self._eval(v, depth + 1) - 1 / v - self._eval(1 / v, depth + 1) / v**2) / 2

    def __call__(self, z):
        real = isinstance(z, (int, float, np.floating, np.integer))
        val = self._eval(complex(z), 0)
        return val.real if real else val


_default: PeriodFunction | None = None


def default_period_function() -> PeriodFunction:
    global _default
    if _default is None:
        _default = PeriodFunction()
    return _default


def G_eval(z, table: MomentTable | None = None):
    """G(z) for z off the cut (1, inf)."""
    G = default_period_function() if table is None else PeriodFunction(table)
    return G(z)


def sim_residual(z, G=None) -> complex:
    """1/z + z^-2 G(1/z) + 2G(z+1) - G(z)."""
    G = G or default_period_function()
    z = complex(z)
    return 1 / z + G(1 / z) / z**2 + 2 * G(z + 1) - G(z)


def symmetry_residual(z, G=None) -> complex:
    """G(z+1) + z^-2 G(1/z + 1) + 1/z."""
    G = G or default_period_function()
    z = complex(z)
    return G(z + 1) + G(1 / z + 1) / z**2 + 1 / z


def funct_residual(z, G=None) -> complex:
    """-1/(1-z) - (1-z)^-2 G(1/(1-z)) + 2G(z+1) - G(z)."""
    G = G or default_period_function()
    z = complex(z)
    return -1 / (1 - z) - G(1 / (1 - z)) / (1 - z) ** 2 + 2 * G(z + 1) - G(z)


# ---------------------------------------------------------------- eigenfunctions

def G_lambda_eval(index: int, z, N: int = 96, digits: int = 34):
    """G_lambda(z) for the index-th eigenvalue, gauge G_lambda(-1) = 1.

    Accepted on [-1, -0.2] and in the open unit disk.  Values come from the
    dual eigen-functional, which converges at z = -1 where the Taylor
    series of G_lambda(-z) sits on its circle of convergence.
    """
    zc = complex(z)
    on_segment = zc.imag == 0 and -1 <= zc.real <= -0.2
    if not (on_segment or abs(zc) < 1):
        raise ValueError(f"G_lambda is validated on [-1, -0.2] and |z| < 1, got {z}")
    return eigenfunction(index, N, digits).evaluate(z)


def G_lambda_taylor(pair: EigenPair, z):
    """G_lambda(z) from the Taylor coefficients of G_lambda(-z); valid for |z| < 1."""
    if abs(z) >= 1:
        raise ValueError("Taylor evaluation needs |z| < 1")
    return np.polynomial.polynomial.polyval(-z, pair.taylor)


def eigen_residual(pair: EigenPair, z: float) -> float:
    """2G(z+1) - G(z) - G(1/z)/(lambda z^2)."""
    G = pair.evaluate
    return 2 * G(z + 1) - G(z) - G(1 / z) / (pair.lam * z * z)


def eigenfunction_grid(index: int, points: int = 81) -> list[tuple[float, float]]:
    pair = eigenfunction(index)
    return [(float(z), pair.evaluate(float(z))) for z in np.linspace(-1, -0.2, points)]


def left_derivatives(G=None, steps=(1e-2, 5e-3, 2.5e-3)) -> list[tuple[float, float, float]]:
    """Backward difference quotients of G at z = 1 from the left.

    Returns (h, first, second) per step with first = (G(1-h) - G(1-2h))/h and
    second = (G(1-h) - 2G(1-2h) + G(1-3h))/h^2; both converge linearly in h,
    to M_2 and 2M_3 respectively.
    """
    G = G or default_period_function()
    out = []
    for h in steps:
        g1, g2, g3 = (G(1 - k * h) for k in (1, 2, 3))
        out.append((h, (g1 - g2) / h, (g1 - 2 * g2 + g3) / h**2))
    return out


def sign_changes(values) -> int:
    s = np.sign(np.asarray(values))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


# ---------------------------------------------------------------- integral identities

def _entry(name, lhs, rhs, tol, scale=1.0):
    residual = abs(lhs - rhs) / scale
    return {"relation": name, "lhs": float(lhs), "rhs": float(rhs), "residual": float(residual),
            "tolerance": tol, "pass": bool(residual < tol)}


def eigen_integral_ratio(pair: EigenPair, table: MomentTable) -> tuple[float, float]:
    """Ratio int_0^1 G_lambda(-x) F(x) dx / int_0^1 G_lambda(-x) dx and lambda/(lambda+1)."""
    g = pair.taylor
    m = table.m
    j = np.arange(len(g))
    I1 = math.fsum(g / (j + 1))
    I2 = math.fsum(g * (1 - m[j + 1]) / (2 * (j + 1)))
    return I2 / I1, pair.lam / (pair.lam + 1)


def log_integrals(table: MomentTable, depth: int = 22) -> tuple[float, float, float]:
    """-int log x dF, 2 int log(1+x) dF and int_0^1 G(-x) dx.

    The first is smoothed once with the transfer identity into
    sum_n 2^-n int log(x+n) dF and integrated with the F-quadrature rule.
    """
    n = np.arange(1, n_terms() + 1)
    scale = 2.0**-n

    def smoothed_log(x):
        out = np.zeros_like(x)
        for k, s in zip(n, scale):
            out += s * np.log(x + k)
        return out

    a = integrate_unit(smoothed_log, depth)
    x, w = invariant_functional(256)
    b = 2 * float(np.dot(w, np.log1p(x)))
    L = np.arange(len(table.m) - 1)
    c = math.fsum((-1.0) ** L * table.m[L + 1] / (L + 1))
    return a, b, c


def alternating_moment_sum(table: MomentTable) -> tuple[float, float]:
    """sum_{L>=1} (-1)^(L-1) m_L (m_{L-1} + m_{L+1}) and the size of its last term."""
    m = table.m
    terms = [(-1) ** (L - 1) * m[L] * (m[L - 1] + m[L + 1]) for L in range(1, len(m) - 1)]
    return math.fsum(terms), abs(terms[-1])


def eigen_moment_identity(pair: EigenPair, table: MomentTable) -> tuple[float, float]:
    """sum_j g_j (m_j - m_{j+2}/lambda) / 2 and the sum of the absolute terms."""
    g = pair.taylor
    m = table.m
    k = min(len(g), len(m) - 2)
    terms = g[:k] * (m[:k] - m[2:k + 2] / pair.lam) / 2
    return math.fsum(terms), math.fsum(np.abs(terms))


def integral_identity_report(table: MomentTable | None = None, indices=(1, 2, 3, 4)) -> list[dict]:
    table = table or default_table()
    report = []
    for i in indices:
        ratio, target = eigen_integral_ratio(eigenfunction(i), table)
        report.append(_entry(f"integral ratio lambda_{i}", ratio, target, 1e-5))
    a, b, c = log_integrals(table)
    report.append(_entry("-int log x dF vs 2 int log(1+x) dF", a, b, 1e-6))
    report.append(_entry("2 int log(1+x) dF vs int G(-x) dx", b, c, 1e-6))
    s, tail = alternating_moment_sum(table)
    report.append(_entry("sum (-1)^(L-1) m_L (m_(L-1) + m_(L+1)) = 1/2", s, 0.5, 1e-10))
    for i in indices:
        v, size = eigen_moment_identity(eigenfunction(i), table)
        report.append(_entry(f"eigen-moment identity lambda_{i}", v, 0.0, 1e-6, scale=size))
    return report


def orthogonality(p: EigenPair, q: EigenPair, count: int | None = None) -> tuple[float, float]:
    """sum_L (-1)^L (m^q_L m^p_{L+1} lam_p - m^p_L m^q_{L+1} lam_q) and the absolute-term scale."""
    if count is None:
        count = min(len(p.taylor), len(q.taylor))
    a, b = p.moments(count + 1), q.moments(count + 1)
    L = np.arange(count)
    terms = (-1.0) ** L * (b[L] * a[L + 1] * p.lam - a[L] * b[L + 1] * q.lam)
    return math.fsum(terms), math.fsum(np.abs(terms))
