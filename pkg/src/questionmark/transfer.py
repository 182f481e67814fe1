"""Transfer operators of weight 0 and 2 and their spectra.

    [S_w f](x) = sum_{n>=1} 2^-n (x+n)^-w f(1/(x+n))

Weight 0 averages against dF: T(S_0 f) = T(f) with T(f) = int_0^1 f dF.
Weight 2 carries the eigenvalue problem of the period functions.

Two discretisations are provided.  Collocation at Chebyshev points of
[0, 1] (barycentric interpolation, the defining sum evaluated at the
nodes) is well conditioned and used for spectra.  The monomial basis has
closed-form entries built from Li_m(1/2) and is only usable in extended
precision because its entries grow like binomial coefficients.

Left eigenvectors of the weight-0 collocation matrix are discrete
functionals nu.  For the eigenvalue 1 nu is (half of) dF itself, and
G(z) = 2 nu(x / (1 - xz)).  For an eigenvalue -lambda the same formula
gives an eigenfunction G_lambda of the weight-2 problem, with Taylor
coefficients nu(x^(L+1)) read off directly instead of being extracted
from sampled values.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .config import get_config
from .minkowski import F_real
from .special import bessel_j, polylog_half

MONOMIAL_FLOAT_LIMIT = 40


class PrecisionError(RuntimeError):
    """A computation cannot deliver the requested accuracy at this precision."""


def n_terms(eps: float | None = None) -> int:
    """Number of terms kept in sum_n 2^-n (...): ceil(-log2 eps) + 4."""
    if eps is None:
        eps = get_config().truncation_eps
    return math.ceil(-math.log2(eps)) + 4


# ---------------------------------------------------------------- collocation

def chebyshev_points(N: int) -> tuple[np.ndarray, np.ndarray]:
    """N Chebyshev extreme points on [0, 1] and their barycentric weights."""
    if N < 2:
        raise ValueError("need at least two points")
    k = np.arange(N)
    x = (1 - np.cos(np.pi * k / (N - 1))) / 2
    bw = (-1.0) ** k
    bw[0] *= 0.5
    bw[-1] *= 0.5
    return x, bw


def barycentric_matrix(x: np.ndarray, bw: np.ndarray, y) -> np.ndarray:
    """Rows of Lagrange basis values: M[i, k] = l_k(y_i)."""
    y = np.atleast_1d(np.asarray(y))
    d = y[:, None] - x[None, :]
    exact = d == 0
    d = np.where(exact, 1, d)
    c = bw[None, :] / d
    M = c / c.sum(axis=1, keepdims=True)
    rows, cols = np.nonzero(exact)
    M[rows, :] = 0
    M[rows, cols] = 1
    return M


def interpolate(values, x, bw, y):
    return barycentric_matrix(x, bw, y) @ np.asarray(values)


@functools.lru_cache(maxsize=16)
def _collocation(weight: int, N: int, nmax: int) -> np.ndarray:
    x, bw = chebyshev_points(N)
    A = np.zeros((N, N))
    for n in range(1, nmax + 1):
        y = 1 / (x + n)
        A += 2.0**-n * (y**weight)[:, None] * barycentric_matrix(x, bw, y)
    A.setflags(write=False)
    return A


def collocation_matrix(weight: int, N: int, nmax: int | None = None) -> np.ndarray:
    """[S_w l_k](x_j) for the Lagrange basis l_k at N Chebyshev points."""
    if weight not in (0, 2):
        raise ValueError("weight must be 0 or 2")
    if not 2 <= N <= 512:
        raise ValueError("collocation dimension must lie in [2, 512]")
    return _collocation(weight, N, nmax or n_terms())


def apply_operator(f: Callable, x, weight: int = 0, nmax: int | None = None):
    """Evaluate [S_w f](x) by the truncated defining sum; f must accept arrays."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x, dtype=np.result_type(float, f(np.array([0.5]))))
    for n in range(1, (nmax or n_terms()) + 1):
        y = 1 / (x + n)
        total = total + 2.0**-n * y**weight * f(y)
    return total


# ---------------------------------------------------------------- monomial basis

def monomial_entry(weight: int, j: int, k: int, digits: int | None = None):
    """(-1)^j C(k+w+j-1, j) Li_{k+w+j}(1/2): coefficient of x^j in S_w x^k."""
    top = k + weight + j - 1
    if top < 0:
        binom = 1 if j == 0 else 0
    else:
        binom = math.comb(top, j)
    if binom == 0:
        return mpmath.mpf(0) if digits else 0.0
    li = polylog_half(k + weight + j, digits=digits)
    return (-1) ** j * binom * li


def monomial_matrix(weight: int, N: int, digits: int | None = None):
    """Monomial-basis matrix; float for N <= 40, otherwise ``digits`` is required."""
    if digits is None and get_config().extended:
        digits = get_config().digits
    if digits is None:
        if N > MONOMIAL_FLOAT_LIMIT:
            raise PrecisionError(
                f"monomial basis with N={N} overflows standard precision; use extended mode")
        return np.array([[monomial_entry(weight, j, k) for k in range(N)] for j in range(N)])
    with mpmath.workdps(digits):
        return mpmath.matrix([[monomial_entry(weight, j, k, digits) for k in range(N)]
                              for j in range(N)])


@dataclass(frozen=True)
class TransferMatrix:
    weight: int
    dim: int
    basis: str
    entries: object
    nodes: np.ndarray | None = None


def build_matrix(weight: int, N: int, basis: str = "collocation",
                 digits: int | None = None) -> TransferMatrix:
    if weight not in (0, 2):
        raise ValueError("weight must be 0 or 2")
    if not 1 <= N <= 256:
        raise ValueError("dimension must lie in [1, 256]")
    if basis == "monomial":
        return TransferMatrix(weight, N, basis, monomial_matrix(weight, N, digits))
    if basis == "collocation":
        return TransferMatrix(weight, N, basis, collocation_matrix(weight, N),
                              chebyshev_points(N)[0])
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------- spectra

def _sorted_eigenvalues(A: np.ndarray) -> np.ndarray:
    ev = np.linalg.eigvals(A)
    ev = ev[np.abs(ev.imag) <= 1e-9 * np.maximum(1.0, np.abs(ev))].real
    return np.array(sorted(ev, key=lambda v: (-abs(v), v < 0)))


def spectrum(N: int = 64, weight: int = 2, check_dim: int = 16, tol: float = 1e-6,
             floor: float = 1e-10, rel: float = 1e-3) -> list[float]:
    """Resolved eigenvalues of the collocation matrix, sorted by |lambda| (positive first on ties).

    Eigenvalues of the N-point matrix are kept only if the (N + check_dim)-point
    matrix has an eigenvalue within ``tol`` absolutely and within ``rel``
    relatively; this removes the unresolved discretisation modes that drift
    with N.
    """
    if N < 16:
        raise ValueError("spectrum needs N >= 16")
    try:
        ev = _sorted_eigenvalues(np.array(collocation_matrix(weight, N)))
        ref = _sorted_eigenvalues(np.array(collocation_matrix(weight, N + check_dim)))
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("eigensolver did not converge") from exc
    out = []
    for v in ev:
        gap = np.min(np.abs(ref - v))
        if abs(v) > floor and gap < tol and gap < rel * abs(v):
            out.append(float(v))
    return out


def invariant_functional(N: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Nodes x and weights w with sum_k w_k f(x_k) ~ int_0^1 f dF.

    w is the left null vector of (S_0 - I) normalised by T(1) = 1/2.
    """
    return _invariant_functional(N, n_terms())


@functools.lru_cache(maxsize=8)
def _invariant_functional(N: int, nmax: int):
    x, _ = chebyshev_points(N)
    A = np.array(collocation_matrix(0, N, nmax))
    M = A.T - np.eye(N)
    M[-1, :] = 1.0
    rhs = np.zeros(N)
    rhs[-1] = 0.5
    w = np.linalg.solve(M, rhs)
    w.setflags(write=False)
    return x, w


def spectral_average(f: Callable, N: int = 256):
    """int_0^1 f dF for f analytic on a neighbourhood of [0, 1]."""
    x, w = invariant_functional(N)
    return np.dot(w, f(x))


# ---------------------------------------------------------------- extended precision

def _mp_lu(M):
    """In-place LU with partial pivoting on a list of mpf rows."""
    n = len(M)
    perm = list(range(n))
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(M[r][c]))
        if p != c:
            M[c], M[p] = M[p], M[c]
            perm[c], perm[p] = perm[p], perm[c]
        piv = M[c][c]
        if piv == 0:
            raise PrecisionError("singular matrix in extended-precision solve")
        rowc = M[c]
        for r in range(c + 1, n):
            f = M[r][c] / piv
            if f:
                row = M[r]
                row[c] = f
                for k in range(c + 1, n):
                    row[k] -= f * rowc[k]
            else:
                M[r][c] = f
    return M, perm


def _mp_lu_solve(LU, perm, b):
    n = len(LU)
    y = [b[perm[i]] for i in range(n)]
    for i in range(n):
        row = LU[i]
        y[i] -= mpmath.fsum(row[k] * y[k] for k in range(i))
    for i in reversed(range(n)):
        row = LU[i]
        y[i] = (y[i] - mpmath.fsum(row[k] * y[k] for k in range(i + 1, n))) / row[i]
    return y


@functools.lru_cache(maxsize=8)
def _mp_collocation(weight: int, N: int, dps: int):
    """Collocation nodes and matrix rows as mpf, at ``dps`` digits."""
    with mpmath.workdps(dps):
        x = [(1 - mpmath.cospi(mpmath.mpf(k) / (N - 1))) / 2 for k in range(N)]
        bw = [mpmath.mpf((-1) ** k) for k in range(N)]
        bw[0] /= 2
        bw[-1] /= 2
        nmax = math.ceil(dps * math.log2(10)) + 6
        A = [[mpmath.mpf(0)] * N for _ in range(N)]
        for n in range(1, nmax + 1):
            scale = mpmath.ldexp(1, -n)
            for j in range(N):
                y = 1 / (x[j] + n)
                row = A[j]
                hit = [k for k in range(N) if y == x[k]]
                if hit:
                    row[hit[0]] += scale * y**weight
                    continue
                c = [bw[k] / (y - x[k]) for k in range(N)]
                fac = scale * y**weight / mpmath.fsum(c)
                for k in range(N):
                    row[k] += fac * c[k]
        return tuple(x), tuple(tuple(r) for r in A)


def mp_left_eigenvector(mu0: float, N: int = 64, dps: int = 34, weight: int = 0,
                        max_iter: int = 40):
    """Left eigenvector of the extended-precision collocation matrix closest to mu0.

    Inverse iteration on A^T - mu0 I.  Returns (eigenvalue, nodes, vector).
    """
    x, A = _mp_collocation(weight, N, dps)
    with mpmath.workdps(dps):
        At = [[A[k][j] for k in range(N)] for j in range(N)]
        shifted = [[At[j][k] - (mu0 if j == k else 0) for k in range(N)] for j in range(N)]
        LU, perm = _mp_lu(shifted)
        v = [mpmath.mpf(1) + mpmath.mpf(k) / N for k in range(N)]
        tol = mpmath.mpf(10) ** (-(dps - 3))
        # large eigenvector entries leave a rounding floor; stagnation below
        # half the working digits counts as converged
        floor = mpmath.mpf(10) ** (-(dps // 2))
        previous = mpmath.inf
        for _ in range(max_iter):
            nv = _mp_lu_solve(LU, perm, v)
            scale = max(nv, key=abs)
            nv = [c / scale for c in nv]
            delta = max(abs(a - b) for a, b in zip(nv, v))
            v = nv
            if delta < tol or (delta < floor and delta >= previous):
                break
            previous = delta
        else:
            raise PrecisionError(f"inverse iteration near {mu0} did not converge")
        Av = [mpmath.fsum(At[j][k] * v[k] for k in range(N)) for j in range(N)]
        mu = mpmath.fsum(a * b for a, b in zip(v, Av)) / mpmath.fsum(c * c for c in v)
        return mu, x, v


@functools.lru_cache(maxsize=4)
def mp_invariant_functional(N: int = 96, dps: int = 40):
    """Extended-precision version of ``invariant_functional``: (nodes, weights) as mpf."""
    x, A = _mp_collocation(0, N, dps)
    with mpmath.workdps(dps):
        M = [[A[k][j] - (1 if j == k else 0) for k in range(N)] for j in range(N)]
        M[-1] = [mpmath.mpf(1)] * N
        rhs = [mpmath.mpf(0)] * N
        rhs[-1] = mpmath.mpf(1) / 2
        LU, perm = _mp_lu(M)
        return x, tuple(_mp_lu_solve(LU, perm, rhs))


# ---------------------------------------------------------------- eigenfunctions

@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue of the weight-2 operator with its period function G_lambda.

    ``taylor[j]`` is the coefficient of z^j in G_lambda(-z); the gauge is
    G_lambda(-1) = 1.
    """

    index: int
    lam: float
    taylor: np.ndarray
    nodes: tuple = field(repr=False)
    weights: tuple = field(repr=False)
    dps: int = 34

    def evaluate(self, z):
        """G_lambda(z) for z off the cut [1, inf)."""
        with mpmath.workdps(self.dps):
            zz = mpmath.mpmathify(z)
            val = mpmath.fsum(w * x / (1 - x * zz) for w, x in zip(self.weights, self.nodes))
            return complex(val) if isinstance(val, mpmath.mpc) else float(val)

    def moments(self, count: int) -> np.ndarray:
        """m^(lambda)_L for L = 0..count-1, i.e. -(lambda/2)(-1)^(L-1) g_(L-1)."""
        out = np.zeros(count)
        for L in range(1, count):
            if L - 1 < len(self.taylor):
                out[L] = -(self.lam / 2) * (-1) ** (L - 1) * self.taylor[L - 1]
        return out


@functools.lru_cache(maxsize=16)
def eigenfunction(i: int, N: int = 96, digits: int = 34,
                  taylor_terms: int | None = None) -> EigenPair:
    """The i-th eigenpair (1-based, spectrum order) with G_lambda(-1) = 1.

    The dual functional resolves x^j only while j is below roughly 1.6 N,
    so the Taylor series is cut at 3N/2 terms by default.
    """
    if taylor_terms is None:
        taylor_terms = 3 * N // 2
    if not 1 <= i <= 8:
        raise ValueError("eigenfunction index must lie in 1..8")
    lams = spectrum(max(N, 64))
    if i > len(lams):
        raise PrecisionError(f"only {len(lams)} eigenvalues are resolved at N={N}")
    mu, x, v = mp_left_eigenvector(-lams[i - 1], N=N, dps=digits)
    with mpmath.workdps(digits):
        norm = mpmath.fsum(c * t / (1 + t) for c, t in zip(v, x))
        w = tuple(c / norm for c in v)
        taylor = []
        powers = list(x)
        for j in range(taylor_terms):
            taylor.append(float((-1) ** j * mpmath.fsum(a * b for a, b in zip(w, powers))))
            powers = [p * t for p, t in zip(powers, x)]
    lam = float(-mu)
    if abs(lam - lams[i - 1]) > 1e-6:
        raise PrecisionError(f"eigenvalue mismatch {lam} vs {lams[i - 1]}")
    return EigenPair(i, lam, np.array(taylor), x, w, digits)


# ---------------------------------------------------------------- moment solve

def solve_period_coeffs(N: int = 100, digits: int = 120) -> list:
    """m_1..m_N from (I + B_2) g = h in the monomial basis (extended precision).

    h_j = (-1)^j Li_{j+1}(1/2) and m_{j+1} = (-1)^j g_j.  Only roughly the
    first N/3 values are accurate: the truncated monomial system converges
    slowly in N.
    """
    if digits < N:
        raise PrecisionError(f"need digits >= N ({digits} < {N})")
    with mpmath.workdps(digits):
        B = monomial_matrix(2, N, digits)
        M = [[B[j, k] + (1 if j == k else 0) for k in range(N)] for j in range(N)]
        h = [(-1) ** j * polylog_half(j + 1, digits=digits) for j in range(N)]
        LU, perm = _mp_lu([row[:] for row in M])
        g = _mp_lu_solve(LU, perm, h)
        resid = max(abs(mpmath.fsum(M[j][k] * g[k] for k in range(N)) - h[j]) for j in range(N))
        # backward-stable LU leaves a residual of order eps * |M| * |g|; |M| grows like 4^N
        scale = max(mpmath.fsum(abs(v) for v in row) for row in M) * max(abs(v) for v in g)
        if resid > scale * mpmath.mpf(10) ** (-(digits - N / 3)):
            raise PrecisionError(f"moment solve residual {mpmath.nstr(resid, 5)}")
        return [(-1) ** j * g[j] for j in range(N)]


# ---------------------------------------------------------------- Neumann series

@dataclass(frozen=True)
class NeumannResult:
    nodes: np.ndarray
    values: np.ndarray
    iterations: int
    residual: float

    def __call__(self, y):
        x, bw = chebyshev_points(len(self.nodes))
        return interpolate(self.values, x, bw, y)


def neumann_solve(f: Callable, N: int = 64, tol: float = 1e-14, max_iter: int = 500) -> NeumannResult:
    """Solve g - S_0 g = f by g = sum_n S_0^n f, for f with int_0^1 f dF = 0."""
    x, bw = chebyshev_points(N)
    fx = np.asarray(f(x), dtype=float)
    _, w = invariant_functional(N)
    mean = float(np.dot(w, fx))
    if abs(mean) > 1e-10:
        raise ValueError(f"f has nonzero F-average {mean:.3e}; the Neumann series diverges")
    A = np.array(collocation_matrix(0, N))
    term = fx.copy()
    g = fx.copy()
    for it in range(1, max_iter + 1):
        term = A @ term
        g += term
        if np.max(np.abs(term)) < tol:
            break
    else:
        raise PrecisionError("Neumann series did not reach the tolerance")
    # residual checked off the nodes with the defining sum
    ys = np.linspace(0, 1, 57)
    interp = lambda y: interpolate(g, x, bw, y)
    resid = interp(ys) - apply_operator(interp, ys, 0) - f(ys)
    return NeumannResult(x, g, it, float(np.max(np.abs(resid))))


# ---------------------------------------------------------------- eigen-polynomials

@dataclass(frozen=True)
class EigenPolynomial:
    """Monic P_n with 2P(1-2y) - P(1-y) = P(y)/delta_n; coefficients low to high."""

    n: int
    coeffs: tuple[Fraction, ...]
    delta: Fraction

    def __call__(self, y):
        out = 0 * y
        for c in reversed(self.coeffs):
            out = out * y + float(c) if not isinstance(y, Fraction) else out * y + c
        return out


def eigen_polynomial(n: int) -> EigenPolynomial:
    if n < 1:
        raise ValueError("n must be >= 1")
    delta = Fraction((-1) ** n, 2 ** (n + 1) - 1)
    a = [Fraction(0)] * (n + 1)
    a[n] = Fraction(1)
    for j in range(n - 1, -1, -1):
        # coefficient of y^j: sum_i a_i C(i,j) (-1)^j (2^(j+1) - 1) = a_j / delta
        diag = (-1) ** j * (2 ** (j + 1) - 1) - 1 / delta
        rest = sum(a[i] * math.comb(i, j) for i in range(j + 1, n + 1)) * (-1) ** j * (2 ** (j + 1) - 1)
        a[j] = -rest / diag
    return EigenPolynomial(n, tuple(a), delta)


def check_polynomial_identity(P: EigenPolynomial) -> bool:
    """Exact check of 2P(1-2y) - P(1-y) = P(y)/delta as polynomials."""
    n = P.n
    for j in range(n + 1):
        lhs = sum(P.coeffs[i] * math.comb(i, j) * (-1) ** j * (2 ** (j + 1) - 1)
                  for i in range(j, n + 1))
        if lhs != P.coeffs[j] / P.delta:
            return False
    return True


def point_spectrum_residual(n: int, samples: np.ndarray, nmax: int = 64) -> float:
    """max |S_0(P_n o F)(x) - delta_n P_n(F(x))| over the sample points."""
    P = eigen_polynomial(n)
    worst = 0.0
    for x in samples:
        lhs = math.fsum(2.0**-k * P(F_real(1 / (x + k))) for k in range(1, nmax + 1))
        worst = max(worst, abs(lhs - float(P.delta) * P(F_real(x))))
    return worst


# ---------------------------------------------------------------- Bessel kernel

def nystrom_spectrum(M: int = 80, T: float = 40.0) -> list[float]:
    """Eigenvalues of K(s,t) = J1(2 sqrt(st)) / (psi(s) psi(t)), psi(s) = sqrt(2e^s - 1), on (0, T]."""
    if M < 40:
        raise ValueError("need at least 40 nodes")
    u, wu = np.polynomial.legendre.leggauss(M)
    s = (u + 1) * T / 2
    w = wu * T / 2
    psi = np.sqrt(2 * np.exp(s) - 1)
    K = np.empty((M, M))
    for i in range(M):
        for j in range(i, M):
            K[i, j] = K[j, i] = bessel_j(1, 2 * math.sqrt(s[i] * s[j])) / (psi[i] * psi[j])
    sw = np.sqrt(w)
    if not np.all(np.isfinite(sw)) or np.min(w) <= 0:
        raise PrecisionError("quadrature weights underflowed")
    ev = np.linalg.eigvalsh(sw[:, None] * K * sw[None, :])
    return sorted((float(v) for v in ev), key=lambda v: (-abs(v), v < 0))
