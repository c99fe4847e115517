import numpy as np
import pytest

from rumkit import (
    EdgeOrbit,
    GainGraph,
    GroupSpec,
    Representation,
    Window,
    block_diagonalize,
    build_explicit,
    coboundary_finite,
    coboundary_window,
    operator_norm_estimate,
    orbit_matrix,
    rank_with_tol,
    singular_multiset_equal,
)
from rumkit.rum import build_flex, verify_flex


def test_cycle4_full_matrix(cycle4):
    c = coboundary_finite(cycle4)
    m = c.dense()
    assert m.shape == (4, 8)
    assert np.abs(m.imag).max() == 0
    assert rank_with_tol(m) == 4
    full = np.linalg.svd(m, compute_uv=False)
    parts = np.concatenate([np.linalg.svd(b, compute_uv=False) for _, b in block_diagonalize(cycle4)])
    assert singular_multiset_equal(full, parts, 1e-9)
    assert c.interior.all()
    norms = [np.linalg.norm(orbit_matrix(cycle4, chi), 2) for chi, _ in block_diagonalize(cycle4)]
    assert abs(operator_norm_estimate(c) - max(norms)) <= 1e-10


def test_cycle4_rows_have_two_blocks(cycle4):
    c = coboundary_finite(cycle4)
    for r in range(len(c.row_labels)):
        assert sum(1 for rr, _, _ in c.entries if rr == r) == 2


def test_boxkite_shape(boxkite):
    assert coboundary_finite(boxkite).shape == (16, 24)
    assert boxkite.group.order == 8


def test_diamond_flex_kills_interior_rows(diamond):
    chi = diamond.group.character([0.5], [1])
    w = Window.box(diamond.group, 2)
    assert len(w) == 10
    rep = verify_flex(diamond, build_flex(diamond, chi, [1, 0], w))
    assert rep.max_residual <= 1e-12
    assert rep.boundary_max_residual > 0


def test_zero_blocks():
    z2 = GroupSpec(0, (2,))
    g = GainGraph(z2, ("v", "w"), (EdgeOrbit("e", "v", "w", z2.element([], [1])),))
    fw = build_explicit(g, Representation.trivial(z2, 2), {"e": np.zeros((1, 2))})
    m = coboundary_finite(fw).dense()
    assert m.shape == (2, 8) and not m.any()
    assert operator_norm_estimate(coboundary_finite(fw)) == 0


def test_trivial_group_single_edge():
    g0 = GroupSpec(0)
    g = GainGraph(g0, ("v", "w"), (EdgeOrbit("e", "v", "w", g0.zero()),))
    a = np.array([[1.0, -2.0, 0.5]])
    fw = build_explicit(g, Representation.trivial(g0, 3), {"e": a})
    m = coboundary_finite(fw).dense()
    assert np.array_equal(m, np.hstack([a, -a]))
    blocks = block_diagonalize(fw)
    assert len(blocks) == 1 and np.array_equal(blocks[0][1], m)


def test_infinite_group_rejected(doublehelix):
    with pytest.raises(ValueError):
        coboundary_finite(doublehelix)


@pytest.mark.parametrize("name", ["doublehelix", "diamond"])
def test_restriction_consistency(name, request):
    fw = request.getfixturevalue(name)
    small, large = Window.box(fw.group, 2), Window.box(fw.group, 4)
    cs, cl = coboundary_window(fw, small), coboundary_window(fw, large)
    dense_s, dense_l = cs.dense(), cl.dense()
    dy, dx = fw.dim_y, fw.dim_x
    col_map = [cl.col_labels.index(lab) for lab in cs.col_labels]
    for r, lab in enumerate(cs.row_labels):
        if not cs.interior[r]:
            continue
        rl = cl.row_labels.index(lab)
        row_s = dense_s[r * dy:(r + 1) * dy]
        row_l = dense_l[rl * dy:(rl + 1) * dy]
        expanded = np.zeros_like(row_l)
        for c, cbig in enumerate(col_map):
            expanded[:, cbig * dx:(cbig + 1) * dx] = row_s[:, c * dx:(c + 1) * dx]
        assert np.array_equal(expanded, row_l)


def test_helix_norms_increase(doublehelix):
    norms = [operator_norm_estimate(coboundary_window(doublehelix, Window.box(doublehelix.group, r))) for r in (1, 2, 4)]
    assert norms == sorted(norms)
