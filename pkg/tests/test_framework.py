import numpy as np
import pytest

from rumkit import (
    BlockPair,
    EdgeOrbit,
    FrameworkError,
    GainGraph,
    GroupSpec,
    Representation,
    build_direction_length,
    build_euclidean,
    build_explicit,
    build_l2q,
    directional_derivative_oracle,
    validate_equivariance,
)
from rumkit.framework import direction_rows, edge_vector, l2q_row
from rumkit.gain_graph import ValidationError
from randomfw import random_framework, rot_z

Z = GroupSpec(1)
Z2 = GroupSpec(0, (2,))


def test_cycle4_blocks(cycle4):
    a1, a2 = cycle4.blocks["e1"], cycle4.blocks["e2"]
    assert np.array_equal(a1.A, [[-1, 0]]) and np.array_equal(a1.B, [[1, 0]])
    assert np.array_equal(a2.A, [[-1, -1]]) and np.array_equal(a2.B, [[1, -1]])


def test_helix_rung(doublehelix):
    assert np.allclose(doublehelix.blocks["rung"].A, [[2, 0, 0]], atol=0)


def test_zero_bar_rejected():
    rep = Representation(Z, [(np.eye(2), [1.0, 0.0])])
    g = GainGraph(Z, ("v", "w"), (EdgeOrbit("e", "v", "w", Z.element([1])),))
    with pytest.raises(FrameworkError) as err:
        build_euclidean(g, {"v": [1.0, 0.0], "w": [0.0, 0.0]}, rep)
    assert err.value.orbit == "e"


def test_diamond_blocks(diamond):
    a1, a2 = diamond.blocks["e1"].A, diamond.blocks["e2"].A
    # hand choice (0,1) for the direction row agrees up to sign
    assert np.allclose(np.abs(a1), [[0, 1]])
    assert np.allclose(a2, [[-1, -2]])


def test_direction_perp_convention():
    assert np.array_equal(direction_rows([1.0, 0.0]), [[0.0, 1.0]])
    assert np.array_equal(direction_rows([3.0, 4.0]), [[-4.0, 3.0]])


@pytest.mark.parametrize("d", [3, 4, 5])
def test_direction_rows_high_dim(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        v = rng.normal(size=d)
        rows = direction_rows(v)
        assert rows.shape == (d - 1, d)
        assert np.allclose(rows @ v, 0, atol=1e-12)
        assert np.linalg.matrix_rank(rows) == d - 1
        assert np.allclose(rows @ rows.T, np.eye(d - 1), atol=1e-12)
    assert np.array_equal(direction_rows(np.eye(d)[0]), direction_rows(np.eye(d)[0]))


def test_direction_annihilates_edge_and_length_is_euclidean():
    rng = np.random.default_rng(3)
    spec = GroupSpec(1, (2,))
    rep = Representation(spec, [(np.eye(2), [rng.normal(), 0.0])], [(np.diag([1.0, -1.0]), [0.0, 0.0])])
    g = GainGraph(spec, ("a", "b"), (
        EdgeOrbit("d", "a", "b", spec.element([1], [1])),
        EdgeOrbit("l", "a", "a", spec.element([1], [0])),
        EdgeOrbit("m", "b", "a", spec.element([2], [1])),
    ))
    placements = {"a": rng.normal(size=2), "b": rng.normal(size=2)}
    fw = build_direction_length(g, placements, rep, {"d": "direction", "l": "length", "m": "length"})
    e = g.edge("d")
    assert abs(fw.blocks["d"].A @ edge_vector(e, placements, rep)).max() <= 1e-12
    eu = build_euclidean(g, placements, rep)
    for eid in ("l", "m"):
        assert np.allclose(fw.blocks[eid].A, eu.blocks[eid].A, atol=0)
    assert validate_equivariance(fw).ok


def test_boxkite_rows():
    for q in (1.5, 2.0, 3.0):
        alpha = (2**q + 1) ** (1 / q - 1)
        assert np.allclose(l2q_row([-4, 0, 0], q), [[-1, 0, 0]], atol=1e-12)
        assert np.allclose(l2q_row([-4, 0, -2], q), alpha * np.array([[-2 ** (q - 1), 0, -1]]), atol=1e-12)


def test_l2q_matches_euclidean_at_q2():
    rng = np.random.default_rng(11)
    for _ in range(10):
        fw = random_framework(rng)
        l2 = build_l2q(fw.gain_graph, fw.placements, fw.representation, 2.0)
        for eid, pair in fw.blocks.items():
            a, b = pair.A.real.ravel(), l2.blocks[eid].A.real.ravel()
            ratio = b @ a / (a @ a)
            assert ratio > 0
            assert np.allclose(b, ratio * a, atol=1e-12)


def test_l2q_rejects_nonsmooth_points():
    rep = Representation(Z, [(np.eye(3), [0.0, 0.0, 1.0])])
    g = GainGraph(Z, ("v",), (EdgeOrbit("e", "v", "v", Z.element([1])),))
    with pytest.raises(FrameworkError, match="non-smooth"):
        build_l2q(g, {"v": [0.0, 0.0, 0.0]}, rep, 1.5)
    fw = build_l2q(g, {"v": [0.0, 0.0, 0.0]}, rep, 3.0)
    assert np.allclose(fw.blocks["e"].A, [[0, 0, -1]])
    with pytest.raises(ValueError):
        build_l2q(g, {"v": [0.0, 0.0, 0.0]}, rep, 1.0)


def test_oracle_examples():
    assert directional_derivative_oracle([-4, 0, 0], [1, 0, 0], 3) == pytest.approx(-1, abs=1e-8)
    assert directional_derivative_oracle([-4, 0, -2], [0, 0, 0], 2) == 0
    assert directional_derivative_oracle([-4, 0, -2], [0, 0, 1], 2) == pytest.approx(-2 / np.sqrt(20), abs=1e-8)


def test_oracle_agrees_with_rows():
    rng = np.random.default_rng(5)
    for q in (1.5, 2.5, 4.0):
        for _ in range(30):
            e, x = rng.normal(size=3), rng.normal(size=3)
            assert abs((l2q_row(e, q) @ x)[0] - directional_derivative_oracle(e, x, q)) <= 1e-6


def cycle_graph():
    return GainGraph(Z2, ("v1", "v2"), (
        EdgeOrbit("e1", "v1", "v2", Z2.element([], [0])),
        EdgeOrbit("e2", "v1", "v2", Z2.element([], [1])),
    ))


def test_explicit_passthrough_and_completion():
    rep = Representation(Z2, [], [(np.diag([1.0, -1.0]), [0.0, 1.0])])
    fw = build_explicit(cycle_graph(), rep, {"e1": [[0.3, -1.7]], "e2": ([[2.0, 5.0]], [[-2.0, 5.0]])})
    assert np.allclose(fw.blocks["e1"].B, [[-0.3, 1.7]])
    assert np.allclose(fw.blocks["e2"].B, [[-2.0, 5.0]])
    assert validate_equivariance(fw).ok
    zero = build_explicit(cycle_graph(), rep, {"e1": np.zeros((1, 2)), "e2": np.zeros((1, 2))})
    assert all(not p.A.any() and not p.B.any() for p in zero.blocks.values())


def test_explicit_dimension_mismatch():
    rep = Representation(Z2, [], [(np.diag([1.0, -1.0]), [0.0, 1.0])])
    with pytest.raises(ValidationError):
        build_explicit(cycle_graph(), rep, {"e1": np.zeros((1, 2)), "e2": np.zeros((2, 2))})
    with pytest.raises(ValidationError):
        build_explicit(cycle_graph(), rep, {"e1": np.zeros((1, 3)), "e2": np.zeros((1, 3))})


def test_perturbed_b_fails():
    rep = Representation(Z2, [], [(np.diag([1.0, -1.0]), [0.0, 1.0])])
    a = np.array([[-1.0, -1.0]])
    b = -a @ np.diag([1.0, -1.0])
    fw = build_explicit(cycle_graph(), rep, {"e1": [[-1.0, 0.0]], "e2": BlockPair(a, b + 1e-3)})
    report = validate_equivariance(fw)
    assert not report.ok
    assert report.max_deviation == pytest.approx(1e-3, rel=1e-6)
    assert [v.code for v in report.violations] == ["equivariance"]


def test_fixtures_equivariant(cycle4, doublehelix, diamond, boxkite):
    for fw in (cycle4, doublehelix, diamond, boxkite):
        assert validate_equivariance(fw).ok


def test_representation_checks():
    bad = Representation(Z2, [], [(np.eye(2), [1.0, 0.0])])
    assert any("torsion" in v.code for v in bad.validate())
    skew = Representation(Z, [(np.array([[1.0, 1.0], [0.0, 1.0]]), [0.0, 0.0])])
    assert any("orthogonal" in v.code for v in skew.validate())
    zz = GroupSpec(2)
    noncommuting = Representation(zz, [(rot_z(0.3), [1.0, 0, 0]), (np.eye(3), [0, 1.0, 0])])
    assert any("commut" in v.code for v in noncommuting.validate())


def test_representation_composition():
    rep = Representation(Z, [(rot_z(0.7), [0.0, 0.0, 1.5])])
    p = np.array([1.0, 2.0, 3.0])
    two = rep.apply(Z.element([1]), rep.apply(Z.element([1]), p))
    assert np.allclose(rep.apply(Z.element([2]), p), two)
    assert np.allclose(rep.apply(Z.element([-1]), rep.apply(Z.element([1]), p)), p)
    assert np.allclose(rep.linear(Z.element([3])), rot_z(2.1))
