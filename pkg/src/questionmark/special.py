"""Special functions: complex gamma, Bessel J0/J1, Li_m(1/2), binomials.

Standard mode returns Python floats/complex numbers.  When the global
config is in extended mode, ``gamma_complex`` and ``polylog_half`` switch
to mpmath at the configured digit count.
"""

from __future__ import annotations

import cmath
import functools
import math

import mpmath
import numpy as np

from .config import get_config

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


class PoleError(ValueError):
    """Raised when a function is evaluated exactly at one of its poles."""


def sin_pi(s: complex) -> complex:
    """sin(pi*s) with the real part reduced first, so it stays accurate near integers."""
    s = complex(s)
    a, b = s.real, s.imag
    n = round(a)
    d = a - n
    sign = -1.0 if n % 2 else 1.0
    return sign * complex(math.sin(math.pi * d) * math.cosh(math.pi * b),
                          math.cos(math.pi * d) * math.sinh(math.pi * b))


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def _loggamma_right(s: complex) -> complex:
    # valid for Re s >= 1/2
    z = s - 1
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_complex(s):
    """Gamma function for complex argument."""
    cfg = get_config()
    if cfg.extended:
        with mpmath.workdps(cfg.digits):
            sm = mpmath.mpmathify(s)
            if sm.imag == 0 and sm.real <= 0 and sm.real == mpmath.floor(sm.real):
                raise PoleError(f"gamma has a pole at {s}")
            return mpmath.gamma(sm)
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"gamma has a pole at {s}")
    if s.real < 0.5:
        return math.pi / (sin_pi(s) * cmath.exp(_loggamma_right(1 - s)))
    return cmath.exp(_loggamma_right(s))


def rgamma(s) -> complex:
    """Reciprocal gamma 1/Gamma(s), an entire function (zero at the poles of Gamma)."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        return 0j
    if s.real < 0.5:
        return sin_pi(s) * cmath.exp(_loggamma_right(1 - s)) / math.pi
    return cmath.exp(-_loggamma_right(s))


def _bessel_series(order: int, x: float) -> float:
    h = 0.5 * x
    term = 1.0 if order == 0 else h
    total = term
    k = 0
    while True:
        k += 1
        term *= -h * h / (k * (k + order))
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300) and k > 2:
            return total


def _bessel_miller(order: int, x: float) -> float:
    start = 2 * (int(x + 12 + 8 * math.sqrt(x)) // 2 + 2)
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    j0 = j1 = 0.0
    for k in range(start, 0, -1):
        j_prev = 2 * k / x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds the (k-1)-th value
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2 * j_cur
        if k - 1 == 1:
            j1 = j_cur
        if abs(j_cur) > 1e250:
            j_next *= 1e-250
            j_cur *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
    j0 = j_cur
    norm += j0
    return (j0 if order == 0 else j1) / norm


def _bessel_hankel(order: int, x: float) -> float:
    mu = 4.0 * order * order
    p = q = 0.0
    term = 1.0
    k = 0
    prev = math.inf
    while True:
        size = abs(term)
        if size > prev or size < 1e-18:
            break
        if k % 2 == 0:
            p += term if (k // 2) % 2 == 0 else -term
        else:
            q += term if (k // 2) % 2 == 0 else -term
        prev = size
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
    chi = x - (0.5 * order + 0.25) * math.pi
    return math.sqrt(2 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind J_0 or J_1 for x >= 0."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x < 8:
        return _bessel_series(order, x)
    if x < 25:
        return _bessel_miller(order, x)
    return _bessel_hankel(order, x)


def bessel_j_array(order: int, x) -> np.ndarray:
    """Elementwise ``bessel_j`` over an array."""
    x = np.asarray(x, dtype=float)
    return np.fromiter((bessel_j(order, v) for v in x.ravel()), float, x.size).reshape(x.shape)


@functools.lru_cache(maxsize=None)
def _polylog_half_mp(m: int, digits: int):
    with mpmath.workdps(digits + 10):
        total = mpmath.mpf(0)
        tol = mpmath.mpf(10) ** (-(digits + 5))
        n = 1
        while True:
            term = mpmath.ldexp(mpmath.mpf(n) ** (-m), -n)
            total += term
            if term < tol * total:
                return +total
            n += 1


@functools.lru_cache(maxsize=None)
def _polylog_half_float(m: int) -> float:
    terms = []
    n = 1
    while True:
        term = 2.0**-n * float(n) ** -m
        terms.append(term)
        if term < 2.0**-60:
            return math.fsum(terms)
        n += 1


def polylog_half(m: int, digits: int | None = None):
    """Li_m(1/2) = sum_{n>=1} 2^-n n^-m.

    ``digits`` forces an mpmath result at that precision; otherwise the
    global config decides.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    cfg = get_config()
    if digits is None and cfg.extended:
        digits = cfg.digits
    if digits is not None:
        return _polylog_half_mp(int(m), int(digits))
    return _polylog_half_float(int(m))


def gen_binomial(w, j: int):
    """Generalized binomial coefficient w(w-1)...(w-j+1)/j!."""
    if j < 0:
        raise ValueError("j must be non-negative")
    out = 1
    for i in range(j):
        out = out * (w - i) / (i + 1)
    return out
