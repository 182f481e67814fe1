"""Exact continued fractions, the Calkin-Wilf tree and Stern-Brocot levels.

Rationals are ``fractions.Fraction``; large tree generations are also
available as pairs of int64 numpy arrays.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

GENERATION_LIMIT = 24
FAREY_LIMIT = 26


class LimitError(ValueError):
    """A requested generation or depth exceeds the configured limit."""


@dataclass(frozen=True)
class TreeGeneration:
    index: int
    elements: tuple[Fraction, ...]

    def __len__(self):
        return len(self.elements)


def cf_from_rational(r) -> list[int]:
    """Canonical partial quotients of a non-negative rational (last one >= 2)."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("continued fractions are only defined here for r >= 0")
    p, q = r.numerator, r.denominator
    out = []
    while q:
        a, rem = divmod(p, q)
        out.append(a)
        p, q = q, rem
    return out


def check_canonical(cf: Sequence[int]) -> None:
    if not cf:
        raise ValueError("empty continued fraction")
    if cf[0] < 0 or any(a < 1 for a in cf[1:]):
        raise ValueError(f"non-canonical continued fraction {list(cf)}")
    if len(cf) > 1 and cf[-1] < 2:
        raise ValueError(f"last partial quotient must be >= 2: {list(cf)}")


def cf_to_rational(cf: Sequence[int]) -> Fraction:
    check_canonical(cf)
    value = Fraction(cf[-1])
    for a in reversed(cf[:-1]):
        value = a + 1 / value
    return value


def digit_sum(r) -> int:
    return sum(cf_from_rational(r))


def stern(n: int) -> int:
    """Stern's diatomic sequence s(n)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    # walk the binary digits: (a, b) = (s(m), s(m+1))
    a, b = 0, 1
    for bit in bin(n)[2:]:
        if bit == "1":
            a, b = a + b, b
        else:
            a, b = a, a + b
    return a


def stern_array(count: int) -> np.ndarray:
    """s(0), ..., s(count-1) as int64."""
    s = np.zeros(max(count, 2) + 1, dtype=np.int64)
    s[1] = 1
    top = 2
    while top < count:
        hi = min(2 * top, count + 1)
        even = np.arange(top, hi, 2)
        s[even] = s[even // 2]
        odd = np.arange(top + 1, hi, 2)
        # s(2m+1) = s(m) + s(m+1); m+1 <= top, and s(top) was just filled
        s[odd] = s[odd // 2] + s[odd // 2 + 1]
        top = hi
    return s[:count]


def _check_generation(n: int, limit: int) -> None:
    if n < 1:
        raise ValueError("generation index starts at 1")
    if n > limit:
        raise LimitError(f"generation {n} exceeds the limit {limit}")


def cw_generation_arrays(n: int, limit: int = GENERATION_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of Calkin-Wilf generation n, in tree order."""
    _check_generation(n, limit)
    s = stern_array(2**n + 1)
    k = np.arange(2 ** (n - 1), 2**n)
    return s[k], s[k + 1]


def cw_generation(n: int, limit: int = GENERATION_LIMIT) -> TreeGeneration:
    num, den = cw_generation_arrays(n, limit)
    return TreeGeneration(n, tuple(Fraction(int(a), int(b)) for a, b in zip(num, den)))


def iter_tree(generations: int) -> Iterator[Fraction]:
    """Breadth-first walk of the Calkin-Wilf tree using the children a/(a+b), (a+b)/b."""
    level = [Fraction(1)]
    for _ in range(generations):
        yield from level
        nxt = []
        for x in level:
            a, b = x.numerator, x.denominator
            nxt += [Fraction(a, a + b), Fraction(a + b, b)]
        level = nxt


def newman_next(x) -> Fraction:
    """Next rational in breadth-first tree order: 1/(2*floor(x) + 1 - x)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    return 1 / (2 * math.floor(x) + 1 - x)


def newman_sequence(count: int) -> list[Fraction]:
    out = [Fraction(1)]
    while len(out) < count:
        out.append(newman_next(out[-1]))
    return out[:count]


def farey_level_arrays(r: int, limit: int = FAREY_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of the depth-r mediant partition of [0, 1]."""
    if r < 0:
        raise ValueError("depth must be non-negative")
    if r > limit:
        raise LimitError(f"depth {r} exceeds the limit {limit}")
    p = np.array([0, 1], dtype=np.int64)
    q = np.array([1, 1], dtype=np.int64)
    for _ in range(r):
        p, q = refine(p, q)
    return p, q


def refine(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Insert the mediant between every pair of neighbours."""
    P = np.empty(2 * len(p) - 1, dtype=np.int64)
    Q = np.empty_like(P)
    P[0::2], Q[0::2] = p, q
    P[1::2], Q[1::2] = p[:-1] + p[1:], q[:-1] + q[1:]
    return P, Q


def farey_level(r: int, limit: int = FAREY_LIMIT) -> list[Fraction]:
    p, q = farey_level_arrays(r, limit)
    return [Fraction(int(a), int(b)) for a, b in zip(p, q)]


def generation_sum(n: int, limit: int = GENERATION_LIMIT) -> Fraction:
    """Exact sum of the elements of generation n."""
    if n < 2:
        raise ValueError("generation_sum is defined for n >= 2")
    num, den = cw_generation_arrays(n, limit)
    total = Fraction(0)
    for a, b in zip(num.tolist(), den.tolist()):
        total += Fraction(a, b)
    return total


def generation_cdf(n: int, x: float) -> float:
    """Fraction of generation-n elements that are <= x."""
    if x < 0:
        raise ValueError("x must be non-negative")
    num, den = cw_generation_arrays(n)
    x = Fraction(x)
    # exact comparison a/b <= x  <=>  a*x.den <= b*x.num, using Python ints when needed
    if x.numerator < 2**31 and x.denominator < 2**31:
        hits = np.count_nonzero(num * x.denominator <= den * x.numerator)
    else:
        hits = sum(a * x.denominator <= b * x.numerator for a, b in zip(num.tolist(), den.tolist()))
    return hits / len(num)


def write_generation_csv(n: int, fh) -> None:
    """Write generation n as ``index,num,den`` rows in tree order."""
    num, den = cw_generation_arrays(n)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["index", "num", "den"])
    for i, (a, b) in enumerate(zip(num.tolist(), den.tolist())):
        w.writerow([i, a, b])
