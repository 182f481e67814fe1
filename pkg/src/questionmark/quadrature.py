"""Stieltjes integration against dF.

The depth-r rule puts weight 2^-(r+1) on each of the 2^r points whose
?-image is an odd multiple of 2^-(r+1), i.e. on the mediants of neighbouring
depth-r Stern-Brocot points.  Each node is the F-midpoint of a cell of
F-mass 2^-(r+1), so for Lipschitz f the error is at most Lip(f) 2^-(r+1).
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Callable

import numpy as np

from .config import MAX_DEPTH, get_config
from .contfrac import farey_level_arrays, refine
from .transfer import chebyshev_points, collocation_matrix, interpolate

_TOP = 10  # subtrees are expanded one top-level cell at a time


class QuadratureError(ValueError):
    """The integrand produced a non-finite value at a node."""


def _check_depth(r: int) -> int:
    if not 0 <= r <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    return r


def node_chunks_exact(r: int):
    """Yield (p, q) int64 arrays of node numerators/denominators in ascending order."""
    _check_depth(r)
    top = min(r, _TOP)
    P, Q = farey_level_arrays(top)
    for i in range(len(P) - 1):
        p = np.array([P[i], P[i + 1]])
        q = np.array([Q[i], Q[i + 1]])
        for _ in range(r - top):
            p, q = refine(p, q)
        yield p[:-1] + p[1:], q[:-1] + q[1:]


@functools.lru_cache(maxsize=2)
def _nodes(r: int) -> np.ndarray:
    out = np.concatenate([p / q for p, q in node_chunks_exact(r)])
    out.setflags(write=False)
    return out


def nodes(r: int) -> np.ndarray:
    """Float nodes of the depth-r rule (cached)."""
    return _nodes(_check_depth(r))


def quadrature_rule(r: int) -> list[tuple[Fraction, Fraction]]:
    """Exact (node, weight) pairs; intended for small depths."""
    w = Fraction(1, 2 ** (r + 1))
    return [(Fraction(int(a), int(b)), w)
            for p, q in node_chunks_exact(r) for a, b in zip(p, q)]


def _chunked_sum(values: np.ndarray) -> complex | float:
    chunk = 1 << 16
    if np.iscomplexobj(values):
        re = [float(np.sum(values[i:i + chunk].real)) for i in range(0, len(values), chunk)]
        im = [float(np.sum(values[i:i + chunk].imag)) for i in range(0, len(values), chunk)]
        return complex(math.fsum(re), math.fsum(im))
    return math.fsum(float(np.sum(values[i:i + chunk])) for i in range(0, len(values), chunk))


def integrate_unit(f: Callable, r: int | None = None):
    """int_0^1 f dF by the depth-r F-midpoint rule; f must accept numpy arrays."""
    if r is None:
        r = get_config().quadrature_depth
    x = nodes(r)
    vals = np.asarray(f(x))
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise QuadratureError(f"integrand is not finite at node {x[i]!r}")
    return _chunked_sum(vals) * 2.0 ** -(r + 1)


def integrate_halfline(g: Callable, r: int | None = None):
    """int_0^inf g dF, folded onto [0, 1] with F(x) + F(1/x) = 1."""
    def folded(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(g(x)) + np.asarray(g(1 / x))
    return integrate_unit(folded, r)


def transfer_history(f: Callable, iterations: int, degree: int = 48, x0: float = 0.5) -> list[float]:
    """Estimates (1/2)[S^k f](x0) for k = 0..iterations, S applied on a Chebyshev interpolant."""
    if iterations > 60:
        raise ValueError("at most 60 iterations")
    x, bw = chebyshev_points(degree + 1)
    A = np.array(collocation_matrix(0, degree + 1))
    v = np.asarray(f(x), dtype=float)
    out = [0.5 * float(interpolate(v, x, bw, [x0])[0])]
    scale = np.max(np.abs(v))
    for _ in range(iterations):
        v = A @ v
        if np.max(np.abs(v)) > 10 * scale + 1:
            raise ArithmeticError("interpolated iteration is growing; the degree is too low")
        out.append(0.5 * float(interpolate(v, x, bw, [x0])[0]))
    return out


def transfer_average(f: Callable, iterations: int = 25, degree: int = 48) -> float:
    """T(f) estimated as (1/2)[S^n f](1/2), since S^n f tends to the constant 2T(f)."""
    return transfer_history(f, iterations, degree)[-1]
