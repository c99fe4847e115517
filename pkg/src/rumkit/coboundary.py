"""Coboundary matrices of finite windows of a symmetric framework.

These are the brute-force objects that symbol-level results are checked
against.  Rows are indexed by covering edges ``(orbit, gamma')`` and columns
by covering vertices ``(gamma, [v])``, both group-element-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .framework import SymmetricFramework
from .gain_graph import Window
from .groups import GroupElement


@dataclass
class CoboundaryMatrix:
    dim_x: int
    dim_y: int
    row_labels: list[tuple[str, GroupElement]]
    col_labels: list[tuple[GroupElement, str]]
    interior: np.ndarray
    # (row block, column block, dim_y x dim_x block)
    entries: list[tuple[int, int, np.ndarray]] = field(default_factory=list)
    _dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.dim_y * len(self.row_labels), self.dim_x * len(self.col_labels)

    def dense(self) -> np.ndarray:
        if self._dense is None:
            m = np.zeros(self.shape, dtype=complex)
            dy, dx = self.dim_y, self.dim_x
            for r, c, blk in self.entries:
                m[r * dy:(r + 1) * dy, c * dx:(c + 1) * dx] += blk
            self._dense = m
        return self._dense

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        out = np.zeros(self.shape[0], dtype=complex)
        dy, dx = self.dim_y, self.dim_x
        for r, c, blk in self.entries:
            out[r * dy:(r + 1) * dy] += blk @ x[c * dx:(c + 1) * dx]
        return out

    def block(self, row: tuple[str, GroupElement], col: tuple[GroupElement, str]) -> np.ndarray:
        """The ``dim_y x dim_x`` entry at a covering edge and covering vertex."""
        r = self.row_labels.index(row)
        c = self.col_labels.index(col)
        out = np.zeros((self.dim_y, self.dim_x), dtype=complex)
        for rr, cc, blk in self.entries:
            if rr == r and cc == c:
                out += blk
        return out

    def interior_row_mask(self) -> np.ndarray:
        return np.repeat(self.interior, self.dim_y)


def coboundary_window(fw: SymmetricFramework, w: Window) -> CoboundaryMatrix:
    """Truncate the coboundary matrix to the covering vertices over ``w``.

    The edge ``gamma' e~`` contributes ``A dtau(-gamma')`` at its tail and the
    negative at its head.  Heads outside ``w`` are omitted and the row is
    flagged as a boundary row.
    """
    g = fw.gain_graph
    rep = fw.representation
    vindex = {v: k for k, v in enumerate(g.vertex_orbits)}
    nv = len(g.vertex_orbits)
    col_labels = [(gamma, v) for gamma in w for v in g.vertex_orbits]
    row_labels, interior, entries = [], [], []
    for gamma in w:
        twist = rep.linear(-gamma)
        base = w.index(gamma) * nv
        for e in g.edge_orbits:
            r = len(row_labels)
            row_labels.append((e.id, gamma))
            blk = fw.blocks[e.id].A @ twist
            entries.append((r, base + vindex[e.tail], blk))
            head = gamma + e.gain
            inside = head in w
            interior.append(inside)
            if inside:
                entries.append((r, w.index(head) * nv + vindex[e.head], -blk))
    return CoboundaryMatrix(fw.dim_x, fw.dim_y, row_labels, col_labels, np.array(interior, dtype=bool), entries)


def coboundary_finite(fw: SymmetricFramework) -> CoboundaryMatrix:
    """The full coboundary matrix of a framework with a finite symmetry group."""
    if not fw.group.is_finite:
        raise ValueError(f"infinite group {fw.group}: use coboundary_window")
    return coboundary_window(fw, Window.full(fw.group))


def operator_norm_estimate(c: CoboundaryMatrix | np.ndarray) -> float:
    m = c.dense() if isinstance(c, CoboundaryMatrix) else np.asarray(c)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))
