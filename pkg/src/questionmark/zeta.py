"""Fourier coefficients of Psi, the dyadic zeta function and related checks.

Psi(x) = 2^x (1 - F(x)) is 1-periodic with Fourier coefficients
c_n = m(log2 - 2 pi i n) / (2 log2 - 4 pi i n).  The zeta function
zeta_M(s) = sum_n c_n (log2 - 2 pi i n)^-s extends to an entire function
through zeta_M(s) Gamma(s+1) = Phi(s) + Phi(-s), Phi(w) = int_0^1 x^-w dF.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .config import get_config
from .minkowski import F_array
from .moments import LOG2, MomentTable, default_table, m_exp
from .periodfn import default_period_function
from .quadrature import integrate_unit, nodes
from .special import gamma_complex, gen_binomial, rgamma, sin_pi
from .transfer import invariant_functional, n_terms

FOURIER_LIMIT = 10_000
SPECTRAL_T = 300.0  # |t| up to which m(t) is taken from m_exp
BINOMIAL_IM_LIMIT = 10.0


class DomainError(ValueError):
    """Argument outside the region where a method is valid."""


def frequency(n: int) -> complex:
    return complex(LOG2, -2 * math.pi * n)


# ---------------------------------------------------------------- Fourier coefficients

@functools.lru_cache(maxsize=4)
def _binned_m(depth: int, nmax: int = FOURIER_LIMIT) -> np.ndarray:
    """m(log2 - 2 pi i n) for n = 0..nmax from the depth-r F-quadrature rule.

    The atoms are binned onto a uniform grid and the offsets from the bin
    centres are handled by a short Taylor expansion, so the whole range of n
    costs a handful of FFTs.
    """
    grid = 1 << 16
    x = nodes(depth)
    w = np.exp2(x) * 2.0 ** -(depth + 1)
    j = np.rint(x * grid).astype(np.int64)
    d = x - j / grid
    j %= grid
    n = np.arange(nmax + 1)
    phase = -2j * np.pi * n
    out = np.zeros(nmax + 1, complex)
    term = w.copy()
    for p in range(16):
        spectrum = np.fft.fft(np.bincount(j, weights=term, minlength=grid))[: nmax + 1]
        out += phase**p / math.factorial(p) * spectrum
        term = term * d
    out = 2 * out
    out.setflags(write=False)
    return out


def fourier_coeff(n: int, depth: int | None = None) -> complex:
    """c_n = m(log2 - 2 pi i n) / (2 log2 - 4 pi i n)."""
    n = int(n)
    if abs(n) > FOURIER_LIMIT:
        raise DomainError(f"|n| must be at most {FOURIER_LIMIT}")
    if n < 0:
        return fourier_coeff(-n, depth).conjugate()
    t = frequency(n)
    if abs(t) <= SPECTRAL_T:
        m = m_exp(t)
    else:
        m = complex(_binned_m(depth or get_config().quadrature_depth)[n])
    return m / (2 * t)


def fourier_star(n: int, depth: int | None = None) -> complex:
    """c*_n = c_n (2 log2 - 4 pi i n) = m(log2 - 2 pi i n)."""
    return fourier_coeff(n, depth) * 2 * frequency(n)


@dataclass(frozen=True)
class FourierTable:
    """c_n for n = 0..nmax; negative indices by conjugation."""

    coeffs: tuple

    @property
    def nmax(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> complex:
        c = self.coeffs[abs(n)]
        return c if n >= 0 else c.conjugate()

    def star(self, n: int) -> complex:
        return self[n] * 2 * frequency(n)


@functools.lru_cache(maxsize=8)
def fourier_table(nmax: int, depth: int | None = None) -> FourierTable:
    if not 0 <= nmax <= FOURIER_LIMIT:
        raise DomainError(f"nmax must lie in [0, {FOURIER_LIMIT}]")
    return FourierTable(tuple(fourier_coeff(n, depth) for n in range(nmax + 1)))


def _psi_grid(k: int = 14) -> tuple[np.ndarray, np.ndarray]:
    x = np.linspace(0, 1, (1 << k) + 1)
    return x, np.exp2(x) * (1 - F_array(x))


def _simpson(y: np.ndarray, x: np.ndarray) -> float:
    return float(integrate.simpson(y, x=x))


def psi_fourier_l2(N: int) -> float:
    """int_0^1 |Psi - sum_{|n|<=N} c_n e^(2 pi i n x)|^2 dx (Simpson, 2^14 panels)."""
    if not 0 <= N <= 512:
        raise DomainError("N must lie in [0, 512]")
    x, psi = _psi_grid()
    table = fourier_table(N)
    partial = np.full(x.shape, table[0])
    for n in range(1, N + 1):
        e = np.exp(2j * np.pi * n * x)
        partial = partial + table[n] * e + table[-n] / e
    return _simpson(np.abs(psi - partial) ** 2, x)


def psi_square_norm() -> float:
    x, psi = _psi_grid()
    return _simpson(psi**2, x)


def M_from_fourier(L: int, N: int, table: FourierTable | None = None) -> float:
    """M_L = L! sum_{n=-N..N} c_n / (log2 - 2 pi i n)^L, summed in +-n pairs."""
    if L < 1:
        raise DomainError("L must be at least 1")
    table = table if table is not None and table.nmax >= N else fourier_table(N)
    total = table[0] / LOG2**L
    pairs = [table[n] / frequency(n) ** L + table[-n] / frequency(-n) ** L for n in range(1, N + 1)]
    total = total + sum(reversed(pairs))
    return float(math.factorial(L) * total.real)


# ---------------------------------------------------------------- zeta function

@dataclass(frozen=True)
class ZetaValue:
    s: complex
    value: complex
    method: str


def _phi_binomial(w: complex, table: MomentTable) -> complex:
    """Phi(w) = sum_n 2^-n sum_j C(w, j) n^(w-j) m_j / 2."""
    m = table.m
    J = len(m)
    binom = np.empty(J, complex)
    c = 1.0 + 0j
    for j in range(J):
        binom[j] = c
        c = c * (w - j) / (j + 1)
    total = 0j
    for n in range(1, n_terms() + 1):
        powers = float(n) ** -np.arange(J, dtype=float)
        inner = np.sum(binom * powers * m) / 2
        total += 2.0**-n * n**w * inner
    return total


def _phi_spectral(w: complex, N: int = 256) -> complex:
    """Phi(w) = T(sum_n 2^-n (x+n)^w) with the spectral dF functional."""
    x, wt = invariant_functional(N)
    n = np.arange(1, n_terms() + 1)
    h = (x[:, None] + n[None, :]) ** w @ (2.0**-n)
    return complex(np.dot(wt, h))


def _phi_quadrature(w: complex, depth: int | None = None) -> complex:
    n = np.arange(1, n_terms() + 1)

    def h(x):
        out = np.zeros(x.shape, complex)
        for k in n:
            out += 2.0**-k * (x + k) ** w
        return out

    return complex(integrate_unit(h, depth))


def phi(w, method: str = "auto", table: MomentTable | None = None) -> complex:
    """Phi(w) = int_0^1 x^-w dF."""
    w = complex(w)
    if method == "auto":
        # for Re w < -1.5 the binomial weights grow like j^(-Re w - 1) and
        # amplify the absolute rounding of the tail moments
        use_binomial = abs(w.imag) <= BINOMIAL_IM_LIMIT and w.real >= -1.5
        method = "binomial" if use_binomial else "spectral"
    if method == "binomial":
        return _phi_binomial(w, table or default_table())
    if method == "spectral":
        return _phi_spectral(w)
    if method == "quadrature":
        return _phi_quadrature(w)
    raise ValueError(f"unknown method {method!r}")


def _dirichlet(s: complex, N: int, table: FourierTable | None) -> complex:
    if s.real <= 0.25:
        raise DomainError("the Dirichlet series needs Re s > 0.25")
    table = table if table is not None and table.nmax >= N else fourier_table(N)
    total = table[0] * LOG2**-s
    pairs = [table[n] * frequency(n) ** -s + table[-n] * frequency(-n) ** -s for n in range(1, N + 1)]
    return total + sum(reversed(pairs))


def zeta_M(s, method: str = "phi", N: int = 2000, table: MomentTable | None = None,
           fourier: FourierTable | None = None) -> ZetaValue:
    """zeta_M(s) by the Phi representation, the Dirichlet series or quadrature."""
    s = complex(s)
    if method == "phi":
        value = (phi(s, table=table) + phi(-s, table=table)) * rgamma(s + 1)
    elif method == "quadrature":
        value = (_phi_quadrature(s) + _phi_quadrature(-s)) * rgamma(s + 1)
    elif method == "dirichlet":
        value = _dirichlet(s, N, fourier)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ZetaValue(s, complex(value), method)


def zeta_derivative(s, h: float = 1e-5) -> complex:
    """Central difference of the Phi form."""
    s = complex(s)
    return (zeta_M(s + h).value - zeta_M(s - h).value) / (2 * h)


def functional_equation_residual(s, N: int = 2000) -> complex:
    """zeta_M(s)Gamma(s) [Dirichlet] + zeta_M(-s)Gamma(-s) [Phi]."""
    s = complex(s)
    return (zeta_M(s, "dirichlet", N=N).value * gamma_complex(s)
            + zeta_M(-s).value * gamma_complex(-s))


# ---------------------------------------------------------------- critical line

def critical_line_Z(t: float, method: str = "spectral") -> complex:
    """Z(t) = zeta_M(it) Gamma(1+it) = Phi(it) + Phi(-it); real for real t."""
    if not 0 <= t <= 200:
        raise DomainError("t must lie in [0, 200]")
    return phi(1j * t, method) + phi(-1j * t, method)


@dataclass(frozen=True)
class Zero:
    t_zero: float
    bracket_width: float
    Z_left: float
    Z_right: float


def zero_scan(t0: float, t1: float, step: float, tol: float = 1e-8,
              method: str = "spectral") -> list[Zero]:
    """Sign changes of Z on a grid, refined by bisection."""
    if not 0 < t0 < t1 <= 200:
        raise DomainError("need 0 < t0 < t1 <= 200")
    if step <= 0:
        raise DomainError("step must be positive")

    def Z(t):
        return critical_line_Z(t, method).real

    grid = np.arange(t0, t1 + step / 2, step)
    values = [Z(t) for t in grid]
    zeros = []
    for a, b, za, zb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if za == 0 or za * zb > 0:
            continue
        lo, hi, zlo, zhi = float(a), float(b), za, zb
        while hi - lo > tol:
            mid = (lo + hi) / 2
            zm = Z(mid)
            if zm == 0:
                lo = hi = mid
                zlo = zhi = 0.0
                break
            if zlo * zm < 0:
                hi, zhi = mid, zm
            else:
                lo, zlo = mid, zm
        zeros.append(Zero((lo + hi) / 2, hi - lo, zlo, zhi))
    return zeros


def critical_line_rows(t0: float = 1.5, t1: float = 90.0, step: float = 0.05) -> list[tuple[float, float]]:
    grid = np.arange(t0, t1 + step / 2, step)
    return [(float(t), critical_line_Z(float(t)).real) for t in grid]


# ---------------------------------------------------------------- Mellin transform

def mellin_closed(s) -> complex:
    """G*(s) = zeta_M(s-1) Gamma(s) pi / sin(pi s)."""
    s = complex(s)
    return zeta_M(s - 1).value * gamma_complex(s) * math.pi / sin_pi(s)


def mellin_G(s: float) -> float:
    """int_0^inf G(1-z) z^(s-1) dz for real 0 < s < 1, computed directly.

    The piece over [1, inf) is mapped to [0, 1] by z = 1/u; both pieces then
    carry an algebraic endpoint weight handled by QUADPACK.  G(1) = M_1 is
    finite, so the left end is integrable.
    """
    if isinstance(s, complex):
        if s.imag != 0:
            raise DomainError("the direct integral is implemented for real s")
        s = s.real
    if not 0 < s < 1:
        raise DomainError("the direct integral needs 0 < s < 1")
    # the smoothed representation of G(1 - z), z >= 0, includes the endpoint z = 0
    smoothed = default_period_function().smoothed

    def G(w):
        return smoothed(w).real

    head, _ = integrate.quad(lambda z: G(1 - z), 0, 1, weight="alg", wvar=(s - 1, 0),
                             epsabs=1e-13, epsrel=1e-12, limit=200)

    def tail(u):
        return G(1 - 1 / u) / u if u > 0 else 1.0  # G(1 - z) ~ 1/z as z -> inf

    rest, _ = integrate.quad(tail, 0, 1, weight="alg", wvar=(-s, 0),
                             epsabs=1e-13, epsrel=1e-12, limit=200)
    return head + rest


def mellin_residue(L: int, eps: float = 1e-6) -> float:
    """Residue of G* at s = L from (s - L) G*(s) averaged over s = L +- eps."""
    up = mellin_closed(L + eps) * eps
    down = mellin_closed(L - eps) * -eps
    return ((up + down) / 2).real


# ---------------------------------------------------------------- Eisenstein series

def _sigma1(limit: int) -> np.ndarray:
    s = np.zeros(limit + 1)
    for d in range(1, limit + 1):
        s[d::d] += d
    return s


def eisenstein_g1(z) -> complex:
    """G_1(z) = pi^2/3 - 8 pi^2 sum sigma_1(n) e^(2 pi i n z), Im z >= 0.3."""
    z = complex(z)
    if z.imag < 0.3:
        raise DomainError("Im z must be at least 0.3")
    decay = 2 * math.pi * z.imag
    # sigma_1(n) < n^2, so stop once n^2 e^(-2 pi n Im z) is below an ulp
    limit = 1
    while 2 * math.log(limit) - decay * limit > -40:
        limit += 1
    sig = _sigma1(limit)
    n = np.arange(1, limit + 1)
    q = np.exp(2j * math.pi * n * z)
    return math.pi**2 / 3 - 8 * math.pi**2 * complex(np.sum((sig[1:] * q)[::-1]))


def dpf_function(z) -> complex:
    z = complex(z)
    return default_period_function()(z) - 1j / (2 * math.pi) * eisenstein_g1(z)


def dpf_residual(z) -> float:
    """|-(1-z)^-2 f(1/(1-z)) + 2f(z+1) - f(z)| for f = G - (i/2pi) G_1."""
    z = complex(z)
    f = dpf_function
    return abs(-f(1 / (1 - z)) / (1 - z) ** 2 + 2 * f(z + 1) - f(z))
