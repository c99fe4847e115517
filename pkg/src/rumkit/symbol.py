"""Orbit matrices and the symbol as a matrix-valued trigonometric polynomial."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .framework import SymmetricFramework
from .groups import Character, GroupElement, enumerate_torsion_dual


def _check_character(fw: SymmetricFramework, chi: Character):
    if chi.spec != fw.group:
        raise ValueError(f"character of {chi.spec} used with a framework over {fw.group}")


def orbit_matrix(fw: SymmetricFramework, chi: Character) -> np.ndarray:
    """The ``chi``-orbit matrix, ``(dim_y |E_0|) x (dim_x |V_0|)``.

    A non-loop row has ``A`` under the tail orbit and ``chi(gain) B`` under
    the head orbit; a loop row has the single block ``A + chi(gain) B``.
    """
    _check_character(fw, chi)
    g = fw.gain_graph
    dx, dy = fw.dim_x, fw.dim_y
    out = np.zeros((fw.n_rows, fw.n_cols), dtype=complex)
    for r, e in enumerate(g.edge_orbits):
        pair = fw.blocks[e.id]
        rows = slice(r * dy, (r + 1) * dy)
        t = g.vertex_index(e.tail)
        h = g.vertex_index(e.head)
        out[rows, t * dx:(t + 1) * dx] += pair.A
        out[rows, h * dx:(h + 1) * dx] += chi(e.gain) * pair.B
    return out


@dataclass
class SymbolPolynomial:
    """Finitely supported Fourier coefficients ``gamma -> Phi^(gamma)``."""

    shape: tuple[int, int]
    coefficients: dict[GroupElement, np.ndarray]

    @property
    def support(self) -> list[GroupElement]:
        return [g for g, c in self.coefficients.items() if np.any(c != 0)]

    def coefficient(self, g: GroupElement) -> np.ndarray:
        c = self.coefficients.get(g)
        return np.zeros(self.shape, dtype=complex) if c is None else c

    def __call__(self, chi: Character) -> np.ndarray:
        return eval_symbol(self, chi)


def fourier_coefficients(fw: SymmetricFramework) -> SymbolPolynomial:
    """Collect the orbit matrix by powers of the character."""
    g = fw.gain_graph
    dx, dy = fw.dim_x, fw.dim_y
    zero = fw.group.zero()
    coeffs = {zero: np.zeros((fw.n_rows, fw.n_cols), dtype=complex)}
    for r, e in enumerate(g.edge_orbits):
        pair = fw.blocks[e.id]
        rows = slice(r * dy, (r + 1) * dy)
        t = g.vertex_index(e.tail)
        h = g.vertex_index(e.head)
        coeffs[zero][rows, t * dx:(t + 1) * dx] += pair.A
        target = coeffs.setdefault(e.gain, np.zeros((fw.n_rows, fw.n_cols), dtype=complex))
        target[rows, h * dx:(h + 1) * dx] += pair.B
    return SymbolPolynomial((fw.n_rows, fw.n_cols), coeffs)


def eval_symbol(p: SymbolPolynomial, chi: Character) -> np.ndarray:
    out = np.zeros(p.shape, dtype=complex)
    for gamma, c in p.coefficients.items():
        if gamma.spec != chi.spec:
            raise ValueError(f"character of {chi.spec} used with a symbol over {gamma.spec}")
        out += c if gamma.is_zero() else chi(gamma) * c
    return out


def block_diagonalize(fw: SymmetricFramework) -> list[tuple[Character, np.ndarray]]:
    """One orbit matrix per character of a finite symmetry group."""
    if not fw.group.is_finite:
        raise ValueError(f"infinite group {fw.group}: block diagonalisation needs a finite group")
    return [(chi, orbit_matrix(fw, chi)) for chi in enumerate_torsion_dual(fw.group)]
