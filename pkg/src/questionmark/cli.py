"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 domain or limit error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from . import config, contfrac, minkowski, moments, periodfn, quadrature, special, transfer, zeta

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    return f"{float(v):.17g}"


def _parse_real(text: str):
    """A fraction p/q (returned exactly) or a decimal float."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like a:b:step, got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"cannot parse range {text!r}") from exc
    return a, b, step


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_rows(path, header, rows):
    with _output(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else _fmt(v) for v in row])


def _split_complex(values):
    out = []
    for v in values:
        v = complex(v)
        out.extend([v.real, v.imag])
    return out


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    if args.figure:
        rows = minkowski.figure_rows(args.figure, args.points)
        with _output(args.out) as fh:
            minkowski.write_xy_csv(rows, fh, header=("x", "value"))
        return EXIT_OK
    if args.x is None:
        raise UsageError("eval needs a value or --figure")
    x = _parse_real(args.x)
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError("x must be finite")
    if args.exact:
        if not isinstance(x, Fraction):
            x = Fraction(args.x)
        if not 0 <= x <= 1:
            raise ValueError("the exact ?(x) is defined on [0, 1]")
        print(f"qm={minkowski.qm_exact(x)}")
        print(f"F={minkowski.F_exact(x)}")
        return EXIT_OK
    xf = float(x)
    F = minkowski.F_extended(xf) if xf < 0 else minkowski.F_real(x)
    if 0 <= xf <= 1:
        print(f"qm={_fmt(2 * F)}")
    print(f"F={_fmt(F)}")
    print(f"psi={_fmt(minkowski.psi(xf))}")
    return EXIT_OK


def cmd_tree(args) -> int:
    with _output(args.out) as fh:
        contfrac.write_generation_csv(args.gen, fh)
    return EXIT_OK


def cmd_quad(args) -> int:
    depth = config.get_config().quadrature_depth
    if args.rule:
        if depth > 16:
            raise ValueError("--rule lists nodes only for depth <= 16")
        rows = [(str(x), str(w)) for x, w in quadrature.quadrature_rule(depth)]
        _write_rows(args.out, ("node", "weight"), rows)
        return EXIT_OK
    power = args.power

    def f(x):
        return x**power

    value = quadrature.integrate_halfline(f, depth) if args.halfline else quadrature.integrate_unit(f, depth)
    print(f"depth={depth}")
    print(f"integral={_fmt(value)}")
    return EXIT_OK


def cmd_moments(args) -> int:
    if args.lmax < 0 or args.lmax > 1000:
        raise ValueError("lmax must lie in [0, 1000]")
    table = moments.moment_tables(args.lmax, method=args.method)
    rows = [(L, table.m[L], table.M[L]) for L in range(args.lmax + 1)]
    _write_rows(args.out, ("L", "m_L", "M_L"), rows)
    if args.report:
        full = moments.default_table()
        report = moments.check_cross_relations(full)
        for n in range(1, 9):
            r = moments.q_annihilation(n, full)
            report.append({"relation": f"Q_{n} annihilation", "lhs": r, "rhs": 0.0,
                           "residual": abs(r), "tolerance": 1e-6, "pass": abs(r) < 1e-6})
        with open(args.report, "w") as fh:
            fh.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    dim = config.get_config().matrix_dim
    if dim < 8 or dim > 512:
        raise ValueError("dim must lie in [8, 512]")
    if args.eigenfunction:
        grid = periodfn.eigenfunction_grid(args.eigenfunction, args.points)
        _write_rows(args.out, ("z", "value"), grid)
        return EXIT_OK
    lams = transfer.spectrum(dim)
    _write_rows(args.out, ("index", "lambda"), [(k, v) for k, v in enumerate(lams, 1)])
    return EXIT_OK


def cmd_periodfn(args) -> int:
    if args.at is not None:
        val = complex(periodfn.G_eval(_parse_complex(args.at)))
        print(f"G_re={_fmt(val.real)}")
        print(f"G_im={_fmt(val.imag)}")
        return EXIT_OK
    rows = []
    for index in args.index:
        rows.extend((index, z, v) for z, v in periodfn.eigenfunction_grid(index, args.points))
    _write_rows(args.out, ("index", "z", "value"), rows)
    return EXIT_OK


def cmd_fourier(args) -> int:
    depth = config.get_config().quadrature_depth
    table = zeta.fourier_table(args.nmax, depth)
    rows = [(n, *_split_complex([table.star(n), table[n]])) for n in range(args.nmax + 1)]
    _write_rows(args.out, ("n", "cstar_re", "cstar_im", "c_re", "c_im"), rows)
    return EXIT_OK


def cmd_zeta(args) -> int:
    if args.s is not None:
        v = zeta.zeta_M(_parse_complex(args.s), method=args.method)
        print(f"zeta_re={_fmt(v.value.real)}")
        print(f"zeta_im={_fmt(v.value.imag)}")
        return EXIT_OK
    a, b, step = _parse_range(args.range)
    if step <= 0 or a < 0 or b > 200 or a >= b:
        raise ValueError("range must satisfy 0 <= a < b <= 200 and step > 0")
    _write_rows(args.out, ("t", "Z"), zeta.critical_line_rows(a, b, step))
    if args.zeros:
        found = zeta.zero_scan(max(a, 1e-9), b, step)
        doc = [{"t_zero": z.t_zero, "bracket_width": z.bracket_width,
                "Z_left": z.Z_left, "Z_right": z.Z_right} for z in found]
        with open(args.zeros, "w") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    report = verify.run(args.suite)
    for line in report.lines():
        print(line)
    s = report.summary()
    print(f"{s['passed']}/{s['total']} checks passed")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    return EXIT_OK if report.passed else EXIT_VERIFY


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--depth", type=int, help="quadrature depth (MINK_DEPTH)")
    common.add_argument("--dim", type=int, help="collocation dimension (MINK_DIM)")
    common.add_argument("--digits", type=int, help="extended-precision digits (MINK_DIGITS)")
    common.add_argument("--config", help="key=value config file")

    p = argparse.ArgumentParser(prog="questionmark", description="Minkowski question mark toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="?(x), F(x) and Psi(x)")
    e.add_argument("x", nargs="?", help="decimal or p/q")
    e.add_argument("--exact", action="store_true", help="exact dyadic value for rational x")
    e.add_argument("--figure", choices=("qm", "psi"), help="emit a grid of ?(x) or Psi(x) instead")
    e.add_argument("--points", type=int, default=1024)
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("tree", parents=[common], help="Calkin-Wilf generation as CSV")
    t.add_argument("--gen", type=int, required=True)
    t.set_defaults(func=cmd_tree)

    q = sub.add_parser("quad", parents=[common], help="integrals against dF")
    q.add_argument("--power", type=float, default=1.0, help="integrate x^power")
    q.add_argument("--halfline", action="store_true", help="integrate over [0, inf)")
    q.add_argument("--rule", action="store_true", help="list exact nodes and weights")
    q.set_defaults(func=cmd_quad)

    m = sub.add_parser("moments", parents=[common], help="m_L and M_L table")
    m.add_argument("--lmax", type=int, default=60)
    m.add_argument("--method", choices=("collocation", "extended", "monomial"), default="collocation")
    m.add_argument("--report", help="write the moment-relations report as JSON")
    m.set_defaults(func=cmd_moments)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues of the weight-2 operator")
    s.add_argument("--eigenfunction", type=int, help="emit the G_lambda grid on [-1, -0.2]")
    s.add_argument("--points", type=int, default=81)
    s.set_defaults(func=cmd_spectrum)

    g = sub.add_parser("periodfn", parents=[common], help="G(z) and eigenfunction grids")
    g.add_argument("--at", help="evaluate G at a complex point, e.g. -0.5+2i")
    g.add_argument("--index", type=int, nargs="+", default=[1, 2, 3, 4])
    g.add_argument("--points", type=int, default=81)
    g.set_defaults(func=cmd_periodfn)

    f = sub.add_parser("fourier", parents=[common], help="Fourier coefficients of Psi")
    f.add_argument("--nmax", type=int, default=8)
    f.set_defaults(func=cmd_fourier)

    z = sub.add_parser("zeta", parents=[common], help="zeta_M and the critical line")
    z.add_argument("--s", help="evaluate zeta_M at a complex point")
    z.add_argument("--method", choices=("phi", "dirichlet", "quadrature"), default="phi")
    z.add_argument("--range", default="1.5:90:0.05", help="t range a:b:step for Z(t)")
    z.add_argument("--zeros", help="write the zero list as JSON")
    z.set_defaults(func=cmd_zeta)

    v = sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    v.add_argument("--suite", choices=("core", "full"), default="core")
    v.add_argument("--json", help="write the report as JSON")
    v.set_defaults(func=cmd_verify)
    return p


DOMAIN_ERRORS = (ValueError, ArithmeticError, contfrac.LimitError, special.PoleError,
                 transfer.PrecisionError, RecursionError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        flags = {"quadrature_depth": args.depth, "matrix_dim": args.dim, "digits": args.digits}
        config.set_config(config.resolve_config(flags, config_file=args.config))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
