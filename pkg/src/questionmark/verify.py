"""Reproduction report: one group of checks per acceptance criterion.

Every check records what was compared, the residual and the tolerance.
Timings only decide pass/fail of the runtime checks and never appear in
the data, so the JSON rendering is identical across runs.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import contfrac, minkowski, moments, periodfn, transfer, zeta


@dataclass
class Check:
    id: str
    criterion: int
    description: str
    anchor: str
    lhs: object
    rhs: object
    residual: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, id, criterion, description, anchor, lhs, rhs, residual, tolerance, passed=None):
        residual = float(residual)
        if passed is None:
            passed = residual <= tolerance
        self.checks.append(Check(id, criterion, description, anchor, _plain(lhs), _plain(rhs),
                                 residual, float(tolerance), bool(passed)))

    def exact(self, id, criterion, description, anchor, lhs, rhs):
        ok = lhs == rhs
        self.add(id, criterion, description, anchor, str(lhs) if ok else _plain(lhs),
                 str(rhs) if ok else _plain(rhs), 0.0 if ok else 1.0, 0.0, ok)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def criteria(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for c in self.checks:
            key = str(c.criterion)
            out[key] = out.get(key, True) and c.passed
        return dict(sorted(out.items(), key=lambda kv: int(kv[0])))

    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass, "failed": len(self.checks) - n_pass}

    def to_json(self) -> str:
        doc = {"suite": self.suite, "summary": self.summary(), "criteria": self.criteria(),
               "checks": [c.as_dict() for c in self.checks]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'}  {c.id:<28} residual={c.residual:.3e} tol={c.tolerance:.1e}"
                for c in self.checks]


def _plain(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


EIGENVALUES = (0.25553210, -0.08892666, 0.03261586, -0.01217621, 0.00458154, -0.00173113)
CSTAR = (1.428159, -0.521907 + 0.148754j, -0.334910 - 0.017869j, 0.128533 - 0.026840j,
         -0.140524 - 0.021886j, 0.285790 + 0.003744j, -0.262601 + 0.004128j,
         0.198742 - 0.013703j, -0.008479 + 0.024012j)
P_TABLE = {
    1: (Fraction(-1, 4), 1),
    2: (Fraction(1, 15), Fraction(-3, 5), 1),
    3: (Fraction(-7, 352), Fraction(3, 11), Fraction(-21, 22), 1),
    4: (Fraction(37, 5865), Fraction(-45, 391), Fraction(14, 23), Fraction(-30, 23), 1),
}
Q_TABLE = {
    1: (-3, 2), 2: (-3, 2), 3: (-3, 3, -9, 2), 4: (-3, 4, -18, 4),
    5: (-3, 5, -30, 10, -15, 2), 6: (-3, 6, -45, 20, -45, 6),
    7: (-3, 7, -63, 35, -105, 21, -21, 2), 8: (-3, 8, -84, 56, -210, 56, -84, 8),
}
DPF_POINTS = (1j, 0.5 + 1j, 1 + 1.5j, -0.5 + 2j, 0.3 + 1.2j)


def _sample_cut_plane(count: int, seed: int = 20240601) -> list[complex]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        off_cut = abs(z.imag) if z.real >= 1 else abs(z - 1)
        if abs(z) <= 20 and off_cut >= 0.1 and abs(z) >= 0.05:
            out.append(z)
    return out


def _spectrum_checks(r: VerifyReport):
    start = time.perf_counter()
    lams = transfer.spectrum(64)
    elapsed = time.perf_counter() - start
    for k, ref in enumerate(EIGENVALUES, 1):
        val = lams[k - 1] if k <= len(lams) else math.nan
        r.add(f"fig2.lambda{k}", 1, f"eigenvalue {k} of the weight-2 operator, dim 64",
              "leading eigenvalues", val, ref, abs(val - ref), 1e-6)
    r.add("fig2.runtime", 1, "spectrum at dim 64 within 10 s", "acceptance runtime",
          elapsed < 10, True, 0.0 if elapsed < 10 else 1.0, 0.0)


def _fourier_checks(r: VerifyReport):
    start = time.perf_counter()
    zeta._binned_m(24)
    values = [zeta.fourier_star(n, depth=24) for n in range(9)]
    elapsed = time.perf_counter() - start
    for n, (val, ref) in enumerate(zip(values, CSTAR)):
        ref = complex(ref)
        res = max(abs(val.real - ref.real), abs(val.imag - ref.imag))
        r.add(f"fourier.cstar{n}", 2, f"c*_{n} = m(log2 - 2 pi i {n})", "Fourier table",
              val, ref, res, 5e-6)
    r.add("fourier.runtime", 2, "c* table at depth 24 within 60 s", "acceptance runtime",
          elapsed < 60, True, 0.0 if elapsed < 60 else 1.0, 0.0)


def _moment_checks(r: VerifyReport):
    T = moments.default_table()
    r.add("moments.m1", 3, "m_1 = 1/2", "first moment", T.m[1], 0.5, abs(T.m[1] - 0.5), 1e-12)
    r.add("moments.M1", 3, "M_1 = 3/2", "first moment on the half-line", T.M[1], 1.5,
          abs(T.M[1] - 1.5), 1e-10)
    v = 2 * T.M[3] - 9 * T.M[2] + 3 * T.M[1]
    r.add("moments.intr", 3, "2M_3 - 9M_2 + 3M_1 = 3", "integral relation", v, 3.0, abs(v - 3), 1e-8)
    worst = max(moments.symmetry_residual(T.m, L) for L in range(1, 21))
    r.add("moments.symm", 3, "m_L = sum (-1)^s C(L,s) m_s for L <= 20", "symmetry relation",
          worst, 0.0, worst, 1e-10)


def _integral_identity_checks(r: VerifyReport):
    ext = moments.moment_tables(81, method="extended")
    s, tail = periodfn.alternating_moment_sum(ext)
    r.add("identity.alternating_sum", 4, "sum (-1)^(L-1) m_L (m_(L-1) + m_(L+1)) = 1/2, L <= 80",
          "alternating moment sum", s, 0.5, abs(s - 0.5) + tail, 1e-10)
    T = moments.default_table()
    p1, p2 = transfer.eigenfunction(1), transfer.eigenfunction(2)
    ratio, target = periodfn.eigen_integral_ratio(p1, T)
    r.add("identity.ratio_lambda1", 5, "ratio of F-weighted to plain integral of G_lambda1(-x)",
          "eigenfunction integral ratio", ratio, target, abs(ratio - target), 1e-5)
    a, b, c = periodfn.log_integrals(T)
    spread = max(a, b, c) - min(a, b, c)
    r.add("identity.log_integrals", 5, "-int log x dF = 2 int log(1+x) dF = int_0^1 G(-x) dx",
          "logarithmic integrals", [a, b, c], b, spread, 1e-6)
    worst = 0.0
    for i in range(1, 5):
        v, size = periodfn.eigen_moment_identity(transfer.eigenfunction(i), T)
        worst = max(worst, abs(v) / size)
    r.add("identity.eigen_moments", 5, "coefficient identity for lambda_1..lambda_4, relative", "eigen-moment identity",
          worst, 0.0, worst, 1e-6)
    v, size = periodfn.orthogonality(p1, p2)
    r.add("orth.lambda1_lambda2", 5, "bilinear orthogonality of lambda_1 and lambda_2, relative",
          "orthogonality relation", v / size, 0.0, abs(v) / size, 1e-6)


def _functional_equation_checks(r: VerifyReport):
    G = periodfn.default_period_function()
    pts = _sample_cut_plane(100)
    sim = max(abs(periodfn.sim_residual(z, G)) for z in pts)
    sym = max(abs(periodfn.symmetry_residual(z, G)) for z in pts)
    r.add("fe.sim", 6, "three-term equation on 100 points", "three-term equation", sim, 0.0, sim, 1e-8)
    r.add("fe.symmetry", 6, "symmetry property on 100 points", "symmetry property", sym, 0.0, sym, 1e-8)
    grid = np.linspace(-1, -0.2, 20)
    worst = max(abs(periodfn.eigen_residual(transfer.eigenfunction(i), float(z)))
                for i in range(1, 5) for z in grid)
    r.add("fe.eigen", 6, "eigen-equation for lambda_1..lambda_4 on [-1, -0.2]", "eigen-equation",
          worst, 0.0, worst, 1e-7)


def _zeta_checks(r: VerifyReport):
    T = moments.default_table()
    worst = max(abs(zeta.zeta_M(L).value - T.M[L] / math.factorial(L)) for L in range(1, 7))
    r.add("zeta.special_values", 7, "zeta_M(L) = M_L / L!, L = 1..6", "special values",
          worst, 0.0, worst, 1e-8)
    d = zeta.zeta_M(1, "dirichlet", N=2000).value
    p = zeta.zeta_M(1).value
    r.add("zeta.dirichlet_s1", 7, "Dirichlet series vs Phi form at s = 1", "Dirichlet series",
          d, p, abs(d - p), 2e-3)
    ts = np.linspace(0.5, 100, 20)
    worst = max(abs(zeta.critical_line_Z(float(t)).imag) for t in ts)
    r.add("zeta.critical_real", 7, "Im zeta_M(it) Gamma(1+it) on 20 samples", "reality on the critical line",
          worst, 0.0, worst, 1e-9)
    worst = 0.0
    for L in range(1, 5):
        ref = math.factorial(L - 1) * T.M[L]
        worst = max(worst, abs(abs(zeta.zeta_derivative(-L)) - ref) / ref)
    r.add("zeta.derivative", 7, "|zeta_M'(-L)| = (L-1)! M_L, L <= 4, relative", "derivatives at -L",
          worst, 0.0, worst, 1e-4)


def _mellin_checks(r: VerifyReport):
    T = moments.default_table()
    for s in (0.3, 0.5, 0.7):
        direct, closed = zeta.mellin_G(s), zeta.mellin_closed(s)
        r.add(f"mellin.s{s}", 8, f"direct Mellin transform of G(1-z) at s = {s}", "Mellin identity",
              direct, closed, abs(direct - closed), 1e-6)
    for L in (1, 2):
        res = zeta.mellin_residue(L)
        ref = (-1) ** L * T.M[L - 1]
        r.add(f"mellin.residue{L}", 8, f"residue of G* at s = {L}", "residues of G*",
              res, ref, abs(res - ref), 1e-6)


def _asymptotic_checks(r: VerifyReport):
    info = moments.asym_ratio(moments.default_table(), 60)
    text = f"{info['C']:.5f}"
    r.exact("asym.C", 9, "C = exp(-2 sqrt(log 2)) to 5 decimals", "asymptotic constant", text, "0.18917")
    r.add("asym.monotone", 9, "m_L / (L^(1/4) C^sqrt(L)) strictly increasing, 2 <= L <= 60",
          "monotonicity remark", info["increasing"], True, 0.0 if info["increasing"] else 1.0, 0.0)


def _combinatorics_checks(r: VerifyReport):
    r.exact("exact.stern", 10, "first 17 Stern values", "Stern sequence",
            [contfrac.stern(n) for n in range(17)], [0, 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4, 1])
    sums = [contfrac.generation_sum(n) for n in range(2, 13)]
    r.exact("exact.generation_sum", 10, "generation sums 3 2^(n-2) - 1/2, 2 <= n <= 12", "generation sums",
            sums, [Fraction(3 * 2 ** (n - 2)) - Fraction(1, 2) for n in range(2, 13)])
    ok = True
    for n in range(1, 13):
        image = sorted(minkowski.F_exact(x) for x in contfrac.cw_generation(n).elements)
        ok &= image == [Fraction(k, 2**n) for k in range(1, 2**n, 2)]
    r.exact("exact.dyadic_image", 10, "F maps generation n onto odd k / 2^n, n <= 12", "dyadic image tree",
            ok, True)
    steps = 2**14 - 1
    r.exact("exact.newman", 10, "Newman enumeration equals tree order for 2^14 - 1 steps",
            "Newman enumeration", contfrac.newman_sequence(steps) == list(contfrac.iter_tree(14)), True)
    got = [moments.empirical_moment(n, 1, exact=True) for n in range(1, 13)]
    r.exact("exact.first_moment", 10, "2^(1-n) generation_sum(n) = 3/2 - 2^-n", "empirical moments",
            got, [Fraction(3, 2) - Fraction(1, 2**n) for n in range(1, 13)])


def _eigen_polynomial_checks(r: VerifyReport):
    got = {n: transfer.eigen_polynomial(n).coeffs for n in P_TABLE}
    want = {n: tuple(Fraction(c) for c in P_TABLE[n]) for n in P_TABLE}
    r.exact("eigpoly.table", 11, "P_1..P_4 coefficients", "eigen-polynomial table",
            [list(map(str, got[n])) for n in sorted(got)], [list(map(str, want[n])) for n in sorted(want)])
    samples = np.linspace(0.01, 0.99, 50)
    worst = max(transfer.point_spectrum_residual(n, samples) for n in range(1, 5))
    r.add("eigpoly.point_spectrum", 11, "|S(P_n o F) - delta_n P_n o F| on 50 samples, n <= 4",
          "point spectrum", worst, 0.0, worst, 1e-10)


def _q_polynomial_checks(r: VerifyReport):
    r.exact("qpoly.table", 12, "Q_1..Q_8 integer coefficients", "Q-polynomial table",
            [moments.q_polynomial(n) for n in range(1, 9)], [list(Q_TABLE[n]) for n in range(1, 9)])
    r.exact("qpoly.q2_eq_q1", 12, "Q_2 = Q_1", "Q-polynomial table",
            moments.q_polynomial(2), moments.q_polynomial(1))
    r.exact("qpoly.reciprocal", 12, "(Q_2n + 3)/x reciprocal for n <= 8", "reciprocity",
            all(moments.is_reciprocal(moments.q_hat(2 * n)) for n in range(1, 9)), True)
    ok = True
    for n in (2, 3, 4):
        coeffs = moments.q_span_coefficients(n)
        if coeffs is None:
            ok = False
            continue
        combo = [Fraction(0)] * (2 * n)
        for k, c in enumerate(coeffs, 1):
            for d, b in enumerate(moments.q_polynomial(2 * k - 1)):
                combo[d] += c * b
        target = moments.q_polynomial(2 * n)
        ok &= combo[: len(target)] == [Fraction(t) for t in target] and not any(combo[len(target):])
    r.exact("qpoly.span", 12, "Q_4, Q_6, Q_8 lie in the span of odd Q", "span membership", ok, True)


def _dpf_checks(r: VerifyReport):
    g = zeta.eisenstein_g1(1j)
    r.add("dpf.g1_i", 13, "G_1(i) = pi", "Eisenstein series", g, math.pi, abs(g - math.pi), 1e-9)
    worst = max(zeta.dpf_residual(z) for z in DPF_POINTS)
    r.add("dpf.residual", 13, "homogeneous three-term residual of G - (i/2pi) G_1 at 5 points",
          "period function of G_1", worst, 0.0, worst, 1e-6)


def _supplementary_checks(r: VerifyReport):
    """Checks beyond the acceptance criteria (criterion 0)."""
    G = periodfn.default_period_function()
    v = abs(G(-1e4))
    r.add("periodfn.decay", 0, "|G(-10^4)| small", "G(z) -> 0", v, 0.0, v, 1e-3)
    z0 = zeta.critical_line_Z(0.0)
    r.add("zeta.Z0", 0, "Z(0) = 1", "total mass", z0, 1.0, abs(z0 - 1), 1e-12)
    coarse = zeta.zero_scan(1.5, 90, 0.1)
    fine = zeta.zero_scan(1.5, 90, 0.05)
    shift = max((min(abs(a.t_zero - b.t_zero) for b in fine) for a in coarse), default=0.0)
    r.add("zeta.zero_stability", 0, "zeros in [1.5, 90] stable under step halving",
          "critical-line zeros", [len(coarse), len(fine)], [len(fine), len(fine)],
          shift if len(coarse) == len(fine) else 1.0, 1e-7)
    ts = np.arange(0.5, 90, 0.5)
    worst = max(abs(zeta.critical_line_Z(float(t)).real) for t in ts)
    r.add("zeta.vertical_bound", 0, "|Z(t)| <= Z(0)", "vertical-strip bound", worst, 1.0,
          max(0.0, worst - 1.0), 0.0)
    l0, l8, l64 = (zeta.psi_fourier_l2(N) for N in (0, 8, 64))
    r.add("psi.l2_decrease", 0, "L2 error of Fourier partial sums decreases", "L2 convergence",
          [l0, l8, l64], None, 0.0 if l0 > l8 > l64 else 1.0, 0.0)
    nys = transfer.nystrom_spectrum()
    r.add("spectrum.nystrom", 0, "symmetric-kernel eigenvalue vs lambda_1", "Hilbert-Schmidt kernel",
          nys[0], EIGENVALUES[0], abs(nys[0] - EIGENVALUES[0]), 1e-6)


CORE = (_spectrum_checks, _fourier_checks, _moment_checks, _integral_identity_checks, _functional_equation_checks,
        _zeta_checks, _mellin_checks, _asymptotic_checks, _combinatorics_checks,
        _eigen_polynomial_checks, _q_polynomial_checks, _dpf_checks)


def run(suite: str = "core") -> VerifyReport:
    if suite not in ("core", "full"):
        raise ValueError("suite must be 'core' or 'full'")
    report = VerifyReport(suite)
    for group in CORE:
        group(report)
    if suite == "full":
        _supplementary_checks(report)
    return report
