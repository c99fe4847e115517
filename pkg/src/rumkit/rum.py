"""RUM spectra, chi-symmetric flexes and their verification on windows."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .coboundary import CoboundaryMatrix, coboundary_window
from .framework import SymmetricFramework
from .gain_graph import Window
from .groups import Character, GroupElement, sample_dual_grid
from .numerics import DEFAULT_TOL, kernel_basis, threshold
from .symbol import SymbolPolynomial, eval_symbol, fourier_coefficients


def thread_count() -> int:
    env = os.environ.get("RUMKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _parallel_map(fn, items: Sequence):
    n = thread_count()
    if n == 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass
class SpectrumSample:
    character: Character
    kernel_dim: int
    sigma_min: float
    kernel_basis: np.ndarray
    threshold: float = 0.0

    @property
    def in_spectrum(self) -> bool:
        return self.kernel_dim >= 1


def sample(symbol: SymbolPolynomial, chi: Character, tol: float = DEFAULT_TOL) -> SpectrumSample:
    m = eval_symbol(symbol, chi)
    dim, basis, smin = kernel_basis(m, tol)
    s = np.linalg.svd(m, compute_uv=False) if m.size else np.zeros(0)
    return SpectrumSample(chi, dim, smin, basis, threshold(s, m.shape, tol) if s.size else 0.0)


def rum_spectrum(fw: SymmetricFramework, sampling: int | Iterable[Character], tol: float = DEFAULT_TOL) -> list[SpectrumSample]:
    """Kernel data of the symbol at every sampled character, members or not.

    ``sampling`` is either a grid size (turns ``i/N`` per free axis) or an
    explicit list of characters.
    """
    chars = sample_dual_grid(fw.group, sampling) if isinstance(sampling, int) else list(sampling)
    symbol = fourier_coefficients(fw)
    return _parallel_map(lambda chi: sample(symbol, chi, tol), chars)


def spectrum_members(samples: Iterable[SpectrumSample]) -> list[Character]:
    return [s.character for s in samples if s.in_spectrum]


def spectrum_scan_refine(fw: SymmetricFramework, coarse: int, factor: int, tol: float = DEFAULT_TOL) -> list[SpectrumSample]:
    """Re-sample around coarse grid points where the smallest singular value dips.

    A coarse sample is refined when its ``sigma_min`` is below ten times the
    kernel threshold.  Its neighbourhood of one coarse step per free axis is
    re-sampled at ``factor`` times the resolution with the torsion indices
    held fixed.  Output is sorted by (turns, indices) and duplicate-free.
    """
    if fw.group.free_rank < 1:
        raise ValueError("refinement needs a free factor in the group")
    if factor < 1:
        raise ValueError("refine factor must be >= 1")
    symbol = fourier_coefficients(fw)
    samples = rum_spectrum(fw, coarse, tol)
    step = Fraction(1, coarse * factor)
    offsets = [k * step for k in range(-factor, factor + 1)]
    seen: dict = {}
    for s in samples:
        if s.sigma_min >= 10 * s.threshold and s.threshold > 0:
            continue
        chi = s.character
        for shift in itertools.product(offsets, repeat=fw.group.free_rank):
            turns = tuple(_shift_turn(t, d) for t, d in zip(chi.turns, shift))
            key = (turns, chi.indices)
            if key not in seen:
                seen[key] = Character(fw.group, turns, chi.indices)
    keys = sorted(seen, key=lambda k: (tuple(float(t) for t in k[0]), k[1]))
    chars = [seen[k] for k in keys]
    return _parallel_map(lambda chi: sample(symbol, chi, tol), chars)


def _shift_turn(t, d):
    if isinstance(t, Fraction):
        return (t + d) % 1
    return (t + float(d)) % 1.0


@dataclass
class FlexField:
    """Values ``z[(gamma, [v])]`` over a window, shape ``(|window|, |V_0|, dim_x)``."""

    window: Window
    vertex_orbits: tuple[str, ...]
    values: np.ndarray

    def __getitem__(self, key: tuple[GroupElement, str]) -> np.ndarray:
        gamma, vid = key
        return self.values[self.window.index(gamma), self.vertex_orbits.index(vid)]

    def vector(self) -> np.ndarray:
        """Flattened in coboundary column order."""
        return self.values.reshape(-1)

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max(initial=0.0))


def build_flex(fw: SymmetricFramework, chi: Character, a, w: Window) -> FlexField:
    """The chi-symmetric field ``z(gamma, [v]) = chi(gamma) dtau(gamma) a_[v]``."""
    if chi.spec != fw.group:
        raise ValueError(f"character of {chi.spec} used with a framework over {fw.group}")
    a = np.asarray(a, dtype=complex).reshape(-1)
    nv = len(fw.gain_graph.vertex_orbits)
    if a.size != nv * fw.dim_x:
        raise ValueError(f"flex seed has length {a.size}, expected {nv * fw.dim_x}")
    seed = a.reshape(nv, fw.dim_x)
    values = np.empty((len(w), nv, fw.dim_x), dtype=complex)
    for i, gamma in enumerate(w):
        values[i] = chi(gamma) * (seed @ fw.representation.linear(gamma).T)
    return FlexField(w, fw.gain_graph.vertex_orbits, values)


@dataclass
class FlexReport:
    max_residual: float
    worst_edge: tuple[str, GroupElement] | None
    atol: float
    boundary_max_residual: float
    interior_rows: int

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.atol

    def __bool__(self):
        return self.passed


def verify_flex(fw: SymmetricFramework, flex: FlexField, cob: CoboundaryMatrix | None = None) -> FlexReport:
    """Apply the windowed coboundary matrix to ``flex`` and report interior residuals.

    Boundary rows (edges leaving the window) are reported but never fail.
    """
    if cob is None:
        cob = coboundary_window(fw, flex.window)
    res = np.abs(cob.matvec(flex.vector())).reshape(len(cob.row_labels), cob.dim_y).max(axis=1, initial=0.0)
    inner = np.where(cob.interior, res, 0.0)
    outer = np.where(cob.interior, 0.0, res)
    worst = int(np.argmax(inner)) if inner.size else None
    block_norm = max((np.linalg.norm(p.A, 2) for p in fw.blocks.values()), default=0.0)
    atol = 1e-9 * (1 + flex.sup_norm() * block_norm)
    return FlexReport(
        float(inner.max(initial=0.0)),
        cob.row_labels[worst] if worst is not None and inner.size else None,
        atol,
        float(outer.max(initial=0.0)),
        int(cob.interior.sum()),
    )


def translation_flex(fw: SymmetricFramework, t, w: Window) -> FlexField:
    """The constant field ``t`` on every vertex, as a trivial-character flex."""
    t = np.asarray(t, dtype=float)
    for gen, _ in fw.representation.generators():
        if not np.allclose(gen @ t, t, atol=1e-12):
            raise ValueError("translation vector is not fixed by every dtau(gamma)")
    a = np.tile(t, len(fw.gain_graph.vertex_orbits))
    return build_flex(fw, fw.group.trivial_character(), a, w)
