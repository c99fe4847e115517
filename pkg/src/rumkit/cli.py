"""Command line interface.

Exit codes: 0 success, 1 a check or validation failed, 2 I/O or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .io import (
    FrameworkFileError,
    FrameworkValidationError,
    parse_character,
    parse_framework_file,
    flex_to_json,
    write_spectrum_csv,
)
from .numerics import DEFAULT_TOL, compare_singular_values, kernel_basis
from .coboundary import coboundary_finite
from .rum import build_flex, rum_spectrum, spectrum_scan_refine, verify_flex
from .symbol import block_diagonalize, fourier_coefficients, orbit_matrix

OK, FAILED, BAD_INPUT = 0, 1, 2


def _fmt(x: complex) -> str:
    x = complex(x)
    re = 0.0 if abs(x.real) < 5e-16 else x.real
    im = 0.0 if abs(x.imag) < 5e-16 else x.imag
    if im == 0:
        return f"{re:.10g}"
    return f"{re:.10g}{im:+.10g}j"


def _print_matrix(m, out):
    m = np.atleast_2d(m)
    cells = [[_fmt(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        print("  [" + "  ".join(c.rjust(width) for c in row) + "]", file=out)


def _load(path):
    return parse_framework_file(path)


def cmd_validate(args, out) -> int:
    fw = _load(args.file)
    result = checks.check_equivariance(fw)
    print(result, file=out)
    g = fw.gain_graph
    print(f"group {fw.group}; {len(g.vertex_orbits)} vertex orbits, {len(g.edge_orbits)} edge orbits; "
          f"dim_x={fw.dim_x}, dim_y={fw.dim_y}", file=out)
    return OK if result.passed else FAILED


def cmd_symbol(args, out) -> int:
    fw = _load(args.file)
    if args.at is not None:
        chi = parse_character(fw.group, args.at)
        print(f"Phi({chi}) =", file=out)
        _print_matrix(orbit_matrix(fw, chi), out)
        return OK
    poly = fourier_coefficients(fw)
    support = poly.support
    print("support: " + ", ".join(str(g) for g in support), file=out)
    for g in support:
        print(f"coefficient {g}:", file=out)
        _print_matrix(poly.coefficient(g), out)
    return OK


def cmd_spectrum(args, out) -> int:
    fw = _load(args.file)
    if args.refine:
        samples = spectrum_scan_refine(fw, args.grid, args.refine, args.tol)
    else:
        samples = rum_spectrum(fw, args.grid, args.tol)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_spectrum_csv(samples, fh)
        members = sum(s.in_spectrum for s in samples)
        print(f"{len(samples)} samples, {members} in spectrum -> {args.output}", file=out)
    else:
        write_spectrum_csv(samples, out)
    return OK


def cmd_flex(args, out) -> int:
    fw = _load(args.file)
    chi = parse_character(fw.group, args.char)
    dim, basis, smin = kernel_basis(orbit_matrix(fw, chi), args.tol)
    if dim == 0:
        print(f"character {chi} is not in the spectrum (sigma_min {smin:.3g})", file=out)
        return FAILED
    if not 0 <= args.kernel_index < dim:
        print(f"kernel index {args.kernel_index} out of range; kernel dimension is {dim}", file=out)
        return BAD_INPUT
    w = checks.flex_window(fw, args.window)
    flex = build_flex(fw, chi, basis[:, args.kernel_index], w)
    report = verify_flex(fw, flex)
    if args.output:
        Path(args.output).write_text(json.dumps(flex_to_json(flex), indent=1) + "\n", encoding="utf-8")
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict} max residual {report.max_residual:.3e} (atol {report.atol:.3e}) over "
          f"{report.interior_rows} interior rows; boundary residual {report.boundary_max_residual:.3e}", file=out)
    return OK if report.passed else FAILED


def cmd_blockdiag(args, out) -> int:
    fw = _load(args.file)
    if not fw.group.is_finite:
        print(f"blockdiag needs a finite group, got {fw.group}", file=out)
        return BAD_INPUT
    blocks = block_diagonalize(fw)
    for chi, m in blocks:
        print(f"O({chi}) =", file=out)
        _print_matrix(m, out)
    full = np.linalg.svd(coboundary_finite(fw).dense(), compute_uv=False)
    parts = np.concatenate([np.linalg.svd(m, compute_uv=False) for _, m in blocks])
    cmp = compare_singular_values(full, parts, 1e-9)
    print(f"singular values match: {str(cmp.equal).lower()} (relative deviation {cmp.max_deviation:.3g})", file=out)
    return OK if cmp.equal else FAILED


def cmd_verify(args, out) -> int:
    fw = _load(args.file)
    results = checks.run_all(fw, radius=args.window, grid=args.grid, tol=args.tol)
    for r in results:
        print(r, file=out)
    return OK if all(r.passed for r in results) else FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rumkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="schema and equivariance report")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("symbol", help="Fourier coefficients, or the symbol at one character")
    p.add_argument("file")
    p.add_argument("--coeffs", action="store_true", help="print support and coefficient matrices (default)")
    p.add_argument("--at", metavar="CHAR", help='character "t1,...;k1,..."')
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("spectrum", help="sample the RUM spectrum on a grid")
    p.add_argument("file")
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--refine", type=int, default=0, metavar="F")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("flex", help="build and verify a chi-symmetric flex")
    p.add_argument("file")
    p.add_argument("--char", required=True, metavar="CHAR")
    p.add_argument("--kernel-index", type=int, default=0, metavar="K")
    p.add_argument("--window", type=int, default=3, metavar="R")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_flex)

    p = sub.add_parser("blockdiag", help="orbit-matrix blocks of a finite framework")
    p.add_argument("file")
    p.set_defaults(func=cmd_blockdiag)

    p = sub.add_parser("verify", help="run every invariant check")
    p.add_argument("file")
    p.add_argument("--window", type=int, default=3, metavar="R")
    p.add_argument("--grid", type=int, default=16, metavar="N")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except FrameworkFileError as exc:
        invalid = isinstance(exc, FrameworkValidationError)
        print("invalid framework:" if invalid else "invalid framework file:", file=out if invalid else sys.stderr)
        for path, msg in exc.problems:
            print(f"  {path}: {msg}", file=out if invalid else sys.stderr)
        return FAILED if invalid else BAD_INPUT
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
