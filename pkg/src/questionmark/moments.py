"""Moments m_L = 2 int_0^1 x^L dF and M_L = int_0^inf x^L dF, and relations among them."""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .contfrac import cf_from_rational, cw_generation_arrays
from .quadrature import integrate_unit
from .special import bessel_j_array
from .transfer import invariant_functional, mp_invariant_functional, solve_period_coeffs

LOG2 = math.log(2)
ASYM_C = math.exp(-2 * math.sqrt(LOG2))


@dataclass(frozen=True)
class MomentTable:
    m: np.ndarray
    M: np.ndarray
    method: str
    precision: dict = field(default_factory=dict)

    @property
    def Lmax(self) -> int:
        return len(self.m) - 1


def big_moments(m) -> np.ndarray:
    """M_L = m_L + sum_{s<L} C(L,s) M_s (the inverted intrinsic relation).

    All terms are positive, so the recursion is stable; values beyond the
    float range become inf.
    """
    with mpmath.workdps(30):
        M = [mpmath.mpf(1)]
        for L in range(1, len(m)):
            nxt = mpmath.mpf(m[L]) + mpmath.fsum(math.comb(L, s) * M[s] for s in range(L))
            if nxt > 1e308:
                break
            M.append(nxt)
    out = np.full(len(m), math.inf)
    out[:len(M)] = [float(v) for v in M]
    return out


@functools.lru_cache(maxsize=8)
def moment_tables(Lmax: int = 1000, method: str = "collocation", N: int | None = None,
                  digits: int | None = None) -> MomentTable:
    """m_0..m_Lmax and M_0..M_Lmax.

    ``collocation``: the invariant functional of the weight-0 collocation
    matrix in double precision (default N=256), accurate to ~1e-16 absolute.
    ``extended``: the same functional in mpmath (default N=96, 40 digits).
    ``monomial``: the coefficient-space solve (I + B_2) g = h; only about
    the first N/3 entries are accurate, so Lmax must stay below that.
    """
    if method == "collocation":
        N = N or 256
        x, w = invariant_functional(N)
        powers = np.ones_like(x)
        m = []
        for _ in range(Lmax + 1):
            m.append(2 * float(np.dot(w, powers)))
            powers = powers * x
        m[0] = 1.0
        prec = {"mode": "standard", "dim": N}
    elif method == "extended":
        N = N or 96
        digits = digits or 40
        x, w = mp_invariant_functional(N, digits)
        with mpmath.workdps(digits):
            powers = [mpmath.mpf(1)] * N
            m = []
            for _ in range(Lmax + 1):
                m.append(float(2 * mpmath.fsum(a * b for a, b in zip(w, powers))))
                powers = [p * t for p, t in zip(powers, x)]
        m[0] = 1.0
        prec = {"mode": "extended", "dim": N, "digits": digits}
    elif method == "monomial":
        N = N or 100
        digits = digits or 160
        if Lmax > N:
            raise ValueError("monomial solve gives at most N moments")
        m = [1.0] + [float(v) for v in solve_period_coeffs(N, digits)[:Lmax]]
        prec = {"mode": "extended", "dim": N, "digits": digits, "trusted_L": N // 3}
    else:
        raise ValueError(f"unknown method {method!r}")
    m = np.array(m)
    return MomentTable(m, big_moments(m), method, prec)


def default_table() -> MomentTable:
    return moment_tables(1000)


# ---------------------------------------------------------------- relations

def _entry(relation, lhs, rhs, tol, **extra):
    residual = abs(lhs - rhs)
    out = {"relation": relation, "lhs": float(lhs), "rhs": float(rhs),
           "residual": float(residual), "tolerance": tol, "pass": bool(residual < tol)}
    out.update(extra)
    return out


def est_sum(table: MomentTable, L: int, terms: int | None = None, rel: float = 1e-12):
    """sum_{s>=L} C(s-1, L-1) m_s, cut at ``terms`` terms or where a term drops below rel*M_L.

    Returns (value, number of terms used, last term).
    """
    m, target = table.m, table.M[L]
    acc = []
    s = L
    while s <= table.Lmax:
        term = math.comb(s - 1, L - 1) * m[s]
        acc.append(term)
        if terms is not None and len(acc) >= terms:
            break
        if terms is None and term < rel * target:
            break
        s += 1
    return math.fsum(acc), len(acc), acc[-1]


def symmetry_residual(m, L: int) -> float:
    """m_L - sum_s (-1)^s C(L,s) m_s."""
    return m[L] - math.fsum((-1) ** s * math.comb(L, s) * m[s] for s in range(L + 1))


def hausdorff_value(m, order: int, shift: int) -> float:
    """sum_i C(order,i) (-1)^i m_{i+shift} = 2 int x^shift (1-x)^order dF > 0."""
    return math.fsum(math.comb(order, i) * (-1) ** i * m[i + shift] for i in range(order + 1))


def check_cross_relations(table: MomentTable, est_L=range(1, 4), symm_L: int = 20,
                          hausdorff_max: int = 12) -> list[dict]:
    report = []
    for L in est_L:
        val, used, last = est_sum(table, L)
        report.append(_entry(f"est L={L}", val, table.M[L], 1e-8 * table.M[L],
                             terms=used, tail_bound=float(last)))
    for L in range(1, symm_L + 1):
        r = symmetry_residual(table.m, L)
        report.append(_entry(f"symm L={L}", table.m[L], table.m[L] - r, 1e-10))
    worst = min(hausdorff_value(table.m, a, b)
                for a in range(hausdorff_max + 1) for b in range(hausdorff_max + 1))
    report.append({"relation": f"hausdorff m,n<={hausdorff_max}", "lhs": worst, "rhs": 0.0,
                   "residual": 0.0, "tolerance": 0.0, "pass": bool(worst > 0)})
    return report


# ---------------------------------------------------------------- Q polynomials

def q_polynomial(n: int) -> list[int]:
    """Integer coefficients (low to high) of 2x^n - (x+1)^n - 2(1-x)^n + (-x)^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = [0] * (n + 1)
    c[n] += 2 + (-1) ** n
    for k in range(n + 1):
        c[k] -= math.comb(n, k)
        c[k] -= 2 * math.comb(n, k) * (-1) ** k
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def q_hat(n: int) -> list[int]:
    """(Q_n(x) + 3) / x for even n."""
    c = q_polynomial(n)
    c[0] += 3
    if c[0] != 0:
        raise ValueError("Q_n + 3 is not divisible by x")
    return c[1:]


def is_reciprocal(c) -> bool:
    return list(c) == list(reversed(c))


def _solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Least-squares-free exact solve of an overdetermined consistent system; None if inconsistent."""
    rows, cols = len(A), len(A[0])
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [v / piv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b_ for a, b_ in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(all(v == 0 for v in M[i][:cols]) and M[i][cols] != 0 for i in range(rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def q_span_coefficients(n: int) -> list[Fraction] | None:
    """Rationals r_k with Q_{2n} = sum_k r_k Q_{2k-1}, k = 1..n (None if not in the span)."""
    target = q_polynomial(2 * n)
    basis = [q_polynomial(2 * k - 1) for k in range(1, n + 1)]
    deg = max(len(target), *(len(b) for b in basis))
    A = [[Fraction(b[d]) if d < len(b) else Fraction(0) for b in basis] for d in range(deg)]
    rhs = [Fraction(target[d]) if d < len(target) else Fraction(0) for d in range(deg)]
    return _solve_exact(A, rhs)


def q_annihilation(n: int, table: MomentTable) -> float:
    """sum_k coeff_k(Q_n) M_k, which should vanish."""
    return math.fsum(c * table.M[k] for k, c in enumerate(q_polynomial(n)))


def q_relations(nmax: int = 8, table: MomentTable | None = None) -> list[dict]:
    if nmax > 16:
        raise ValueError("nmax must be <= 16")
    table = table or default_table()
    out = []
    for n in range(1, nmax + 1):
        entry = {"n": n, "coefficients": q_polynomial(n),
                 "annihilation": q_annihilation(n, table)}
        if n % 2 == 0:
            entry["reciprocal"] = is_reciprocal(q_hat(n))
            span = q_span_coefficients(n // 2)
            entry["span"] = None if span is None else [str(v) for v in span]
        out.append(entry)
    return out


# ---------------------------------------------------------------- empirical moments

def empirical_moment(n: int, L: int, exact: bool = False, variant: str = "M"):
    """Generation-n averages that converge to M_L (``variant='M'``) or m_L (``'m'``).

    'M': 2^(1-n) sum over generation n of x^L.
    'm': 2^(2-n) sum over the generation-n elements below 1 of x^L.
    """
    if n > 20 or L > 4:
        raise ValueError("empirical moments are limited to n <= 20, L <= 4")
    num, den = cw_generation_arrays(n)
    if variant == "m":
        keep = num < den
        num, den = num[keep], den[keep]
        scale = Fraction(1, 2 ** (n - 2)) if n >= 2 else Fraction(4, 2**n)
    elif variant == "M":
        scale = Fraction(2, 2**n)
    else:
        raise ValueError("variant must be 'M' or 'm'")
    if exact:
        total = sum((Fraction(int(a), int(b)) ** L for a, b in zip(num, den)), Fraction(0))
        return scale * total
    vals = (num.astype(float) / den.astype(float)) ** L
    return float(scale) * math.fsum(vals)


# ---------------------------------------------------------------- asymptotics

def asym_ratio(table: MomentTable, Lmax: int = 60) -> dict:
    """r_L = m_L / (L^(1/4) C^sqrt(L)) for L = 1..Lmax and whether it increases on [2, Lmax]."""
    r = [table.m[L] / (L**0.25 * ASYM_C ** math.sqrt(L)) for L in range(1, Lmax + 1)]
    diffs = [r[k + 1] - r[k] for k in range(1, Lmax - 1)]
    return {"C": ASYM_C, "ratios": r, "increasing": all(d > 0 for d in diffs),
            "decreasing": all(d < 0 for d in diffs)}


def chebyshev_chain(J: int) -> list[float]:
    """c*_j = sin((j+1)pi/(J+2)) / sin(j pi/(J+2)), j = 1..J."""
    if J < 1:
        raise ValueError("J must be >= 1")
    a = math.pi / (J + 2)
    return [math.sin((j + 1) * a) / math.sin(j * a) for j in range(1, J + 1)]


def chain_residual(c: list[float]) -> float:
    J = len(c)
    res = [abs(c[0] - (1 / c[j] + c[j + 1])) for j in range(J - 1)]
    res.append(abs(c[0] - 1 / c[-1]))
    return max(res)


# ---------------------------------------------------------------- m(t)

def _spectral_exp(t: complex, N: int = 256) -> complex:
    x, w = invariant_functional(N)
    return 2 * complex(np.dot(w, np.exp(t * x)))


def m_exp(t, table: MomentTable | None = None, method: str = "auto") -> complex:
    """m(t) = 2 int_0^1 e^(xt) dF = sum_L m_L t^L / L!.

    ``auto`` uses the series for |t| <= 10 (cancellation stays below ~4
    digits there), the spectral functional for |t| <= 300 and the
    F-quadrature rule beyond.
    """
    t = complex(t)
    if method == "auto":
        method = "series" if abs(t) <= 10 else ("spectral" if abs(t) <= 300 else "quadrature")
    if method == "series":
        table = table or default_table()
        terms = []
        c = 1.0 + 0j
        for L in range(len(table.m)):
            terms.append(c * table.m[L])
            c *= t / (L + 1)
            if abs(c) < 1e-30:
                break
        return complex(math.fsum(v.real for v in terms), math.fsum(v.imag for v in terms))
    if method == "spectral":
        return _spectral_exp(t)
    if method == "quadrature":
        return 2 * complex(integrate_unit(lambda x: np.exp(t * x)))
    raise ValueError(f"unknown method {method!r}")


def m_prime_negative(ts: np.ndarray, N: int = 256) -> np.ndarray:
    """m'(-t) = 2 int_0^1 x e^(-xt) dF for an array of t >= 0."""
    x, w = invariant_functional(N)
    return 2 * (np.exp(-np.outer(ts, x)) * x) @ w


def composite_gauss(a: float, b: float, panels: int, order: int = 32):
    """Nodes and weights of a panel-wise Gauss-Legendre rule on [a, b]."""
    g, gw = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    return (mid + half * g).ravel(), (half * gw).ravel()


def integral_equation_residual(s: float, tol: float = 1e-14, panels: int = 64) -> float:
    """|m(-s) - (2e^s - 1) int_0^inf m'(-t) J0(2 sqrt(st)) dt|.

    With t = u^2 the Bessel factor oscillates at a fixed rate in u; the
    integral is cut where m'(-u^2) drops below ``tol``.
    """
    if not 0 < s <= 20:
        raise ValueError("s must lie in (0, 20]")
    U = 1.0
    while m_prime_negative(np.array([U * U]))[0] > tol:
        U *= 1.25
        if U > 200:
            raise ArithmeticError("truncation bound not reached")
    u, wu = composite_gauss(0.0, U, panels)
    integrand = 2 * u * m_prime_negative(u * u) * bessel_j_array(0, 2 * math.sqrt(s) * u)
    integral = math.fsum(integrand * wu)
    lhs = m_exp(-s).real
    return abs(lhs - (2 * math.exp(s) - 1) * integral)
