"""Dense complex linear algebra with an explicit tolerance policy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10


def _as_matrix(m) -> np.ndarray:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def svd(m):
    """Full SVD ``m = U diag(s) V^*`` with a deterministic phase convention.

    The first non-negligible entry of each column of ``V`` is made real and
    positive; the matching column of ``U`` absorbs the conjugate phase.
    Returns ``(U, s, V)`` with ``s`` descending and ``V`` square.
    """
    m = _as_matrix(m)
    if m.size == 0:
        raise ValueError("empty matrix")
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    v = vh.conj().T
    for k in range(v.shape[1]):
        col = v[:, k]
        big = np.flatnonzero(np.abs(col) > 1e-12 * max(1.0, np.abs(col).max()))
        if big.size == 0:
            continue
        phase = col[big[0]] / abs(col[big[0]])
        v[:, k] = col / phase
        if k < u.shape[1] and k < s.size:
            u[:, k] = u[:, k] / phase
    return u, s, v


def threshold(s, shape, tol: float) -> float:
    smax = s[0] if s.size else 0.0
    return tol * max(shape) * smax


def rank_with_tol(m, tol: float = DEFAULT_TOL) -> int:
    m = _as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > threshold(s, m.shape, tol)))


def kernel_basis(m, tol: float = DEFAULT_TOL):
    """Orthonormal kernel basis from the right singular vectors.

    Returns ``(kernel_dim, basis, sigma_min)`` where ``basis`` has shape
    ``(cols, kernel_dim)``.  ``sigma_min`` is the smallest of the ``cols``
    singular values, counting the zeros implied when ``cols > rows``.
    A zero matrix has a full kernel.
    """
    m = _as_matrix(m)
    rows, cols = m.shape
    if rows == 0:
        return cols, np.eye(cols, dtype=complex), 0.0
    _, s, v = svd(m)
    padded = np.zeros(cols)
    padded[: s.size] = s[:cols]
    if s[0] == 0:
        null = np.ones(cols, dtype=bool)
    else:
        null = padded <= threshold(s, m.shape, tol)
    basis = v[:, null]
    return int(null.sum()), basis, float(padded.min())


@dataclass
class MultisetComparison:
    equal: bool
    max_deviation: float
    message: str = ""

    def __bool__(self):
        return self.equal


def compare_singular_values(a, b, rtol: float = 1e-9) -> MultisetComparison:
    """Compare singular value multisets, padding the shorter with zeros."""
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    b = np.sort(np.asarray(b, dtype=float))[::-1]
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    scale = max(1.0, float(np.max(np.abs(np.concatenate([a, b])), initial=0.0)))
    dev = float(np.max(np.abs(a - b), initial=0.0)) / scale
    if dev <= rtol:
        return MultisetComparison(True, dev)
    return MultisetComparison(False, dev, f"relative deviation {dev:.3g} exceeds {rtol:g}")


def singular_multiset_equal(a, b, rtol: float = 1e-9) -> bool:
    return compare_singular_values(a, b, rtol).equal


def principal_angles(a, b) -> np.ndarray:
    """Principal angles between the column spans of ``a`` and ``b``.

    Computed from sines so that tiny angles are resolved accurately.
    """
    qa, _ = np.linalg.qr(np.atleast_2d(np.asarray(a, dtype=complex)))
    qb, _ = np.linalg.qr(np.atleast_2d(np.asarray(b, dtype=complex)))
    resid = qb - qa @ (qa.conj().T @ qb)
    sines = np.linalg.svd(resid, compute_uv=False)
    return np.sort(np.arcsin(np.clip(sines, 0.0, 1.0)))


def same_span(a, b, max_angle: float = 1e-8) -> bool:
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    if a.shape[1] != b.shape[1]:
        return False
    return bool(np.all(principal_angles(a, b) < max_angle))
