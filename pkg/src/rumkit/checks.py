"""Cross-checks between symbol-level results and windowed coboundary matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coboundary import coboundary_finite, coboundary_window, operator_norm_estimate
from .framework import SymmetricFramework, validate_equivariance
from .gain_graph import Window
from .groups import Character, sample_dual_grid
from .numerics import DEFAULT_TOL, compare_singular_values
from .rum import build_flex, rum_spectrum, verify_flex
from .symbol import block_diagonalize, eval_symbol, fourier_coefficients, orbit_matrix


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    detail: str = ""

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}  {self.name}: {self.detail}"


def check_equivariance(fw: SymmetricFramework, tol: float = 1e-10) -> CheckResult:
    report = validate_equivariance(fw, tol)
    detail = f"max deviation {report.max_deviation:.3g}"
    if report.violations:
        detail += "; " + "; ".join(str(v) for v in report.violations)
    return CheckResult("equivariance", report.ok, report.max_deviation, detail)


def check_symbol_oracle(fw: SymmetricFramework, chars: Iterable[Character], atol: float = 1e-13) -> CheckResult:
    """Trigonometric polynomial against the directly assembled orbit matrix."""
    poly = fourier_coefficients(fw)
    worst = 0.0
    n = 0
    for chi in chars:
        worst = max(worst, float(np.abs(eval_symbol(poly, chi) - orbit_matrix(fw, chi)).max(initial=0.0)))
        n += 1
    return CheckResult("symbol equals orbit matrix", worst <= atol, worst, f"max |diff| {worst:.3g} over {n} characters")


def check_coefficient_formula(fw: SymmetricFramework, atol: float = 1e-12) -> CheckResult:
    """Each nonzero-gain coefficient block equals a coboundary entry times ``dtau(gain)``."""
    poly = fourier_coefficients(fw)
    g = fw.gain_graph
    zero = fw.group.zero()
    gains = g.nonzero_gains()
    if not gains:
        return CheckResult("Fourier coefficient formula", True, 0.0, "no nonzero gains")
    w = Window(fw.group, [zero] + gains)
    cob = coboundary_window(fw, w)
    dx, dy = fw.dim_x, fw.dim_y
    worst = 0.0
    for gamma in gains:
        coeff = poly.coefficient(gamma)
        twist = fw.representation.linear(gamma)
        for r, e in enumerate(g.edge_orbits):
            for k, v in enumerate(g.vertex_orbits):
                expected = cob.block((e.id, zero), (gamma, v)) @ twist
                got = coeff[r * dy:(r + 1) * dy, k * dx:(k + 1) * dx]
                worst = max(worst, float(np.abs(got - expected).max(initial=0.0)))
    return CheckResult("Fourier coefficient formula", worst <= atol, worst, f"max |diff| {worst:.3g} over {len(gains)} gains")


def check_block_diagonalization(fw: SymmetricFramework, rtol: float = 1e-9) -> CheckResult:
    """Finite groups: the coboundary matrix and the orbit-matrix blocks share singular values."""
    full = np.linalg.svd(coboundary_finite(fw).dense(), compute_uv=False)
    parts = np.concatenate([np.linalg.svd(m, compute_uv=False) for _, m in block_diagonalize(fw)])
    cmp = compare_singular_values(full, parts, rtol)
    return CheckResult("block diagonalisation", cmp.equal, cmp.max_deviation, f"relative deviation {cmp.max_deviation:.3g}")


def flex_window(fw: SymmetricFramework, radius: int) -> Window:
    return Window.full(fw.group) if fw.group.is_finite else Window.box(fw.group, radius)


def check_flexes(fw: SymmetricFramework, chars: Iterable[Character], radius: int = 3, tol: float = DEFAULT_TOL, atol: float | None = None) -> CheckResult:
    """Every kernel vector at every sampled spectrum point gives a flex of the window."""
    w = flex_window(fw, radius)
    cob = coboundary_window(fw, w)
    worst, count, failures = 0.0, 0, 0
    for s in rum_spectrum(fw, list(chars), tol):
        for k in range(s.kernel_dim):
            rep = verify_flex(fw, build_flex(fw, s.character, s.kernel_basis[:, k], w), cob)
            limit = rep.atol if atol is None else atol
            failures += rep.max_residual > limit
            worst = max(worst, rep.max_residual)
            count += 1
    return CheckResult("chi-symmetric flexes", failures == 0, worst, f"{count} flexes, max residual {worst:.3g}, {failures} failures")


def check_norm_bound(fw: SymmetricFramework, radii: Iterable[int] = (4, 8, 16), grid: int = 256, slack: float = 1e-9) -> CheckResult:
    """Windowed norms increase with the window and stay below the symbol's sup norm."""
    poly = fourier_coefficients(fw)
    sup = max(float(np.linalg.norm(eval_symbol(poly, chi), 2)) for chi in sample_dual_grid(fw.group, grid))
    if fw.group.is_finite:
        norms = [operator_norm_estimate(coboundary_finite(fw))]
    else:
        norms = [operator_norm_estimate(coboundary_window(fw, Window.box(fw.group, r))) for r in radii]
    monotone = all(b >= a - 1e-12 for a, b in zip(norms, norms[1:]))
    bounded = all(n <= sup + slack for n in norms)
    detail = "window norms " + ", ".join(f"{n:.12g}" for n in norms) + f"; grid sup {sup:.12g}"
    return CheckResult("norm bound", monotone and bounded, max(norms) - sup, detail)


def run_all(fw: SymmetricFramework, radius: int = 3, grid: int = 16, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    chars = sample_dual_grid(fw.group, grid)
    results = [
        check_equivariance(fw),
        check_symbol_oracle(fw, chars),
        check_coefficient_formula(fw),
    ]
    if fw.group.is_finite:
        results.append(check_block_diagonalization(fw))
    results.append(check_flexes(fw, chars, radius, tol))
    radii = sorted({max(1, radius), 2 * max(1, radius), 4 * max(1, radius)})
    results.append(check_norm_bound(fw, radii, max(grid, 64)))
    return results
