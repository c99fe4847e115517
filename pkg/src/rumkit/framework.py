"""Symmetric frameworks: isometry representations, edge blocks and builders.

Every edge orbit ``[e] = ([v], [w])`` with gain ``gamma`` carries a pair of
linear maps ``(A, B)`` from ``C^dim_x`` to ``C^dim_y``:

* ``A`` acts on the tail representative ``v~`` of the representative edge
  ``v~ (gamma w~)``;
* ``B = -A @ dtau(gamma)`` is the same constraint seen from the head,
  translated back by ``-gamma``.

Placements are only ever given for orbit representatives.  Every other
covering vertex sits at ``tau(gamma) p_v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .gain_graph import EdgeOrbit, GainGraph, ValidationError, Violation
from .groups import GroupElement, GroupSpec

EQUIVARIANCE_TOL = 1e-10


class FrameworkError(ValueError):
    """A constraint could not be built for a particular edge orbit."""

    def __init__(self, message: str, orbit: str | None = None):
        self.orbit = orbit
        super().__init__(f"{orbit}: {message}" if orbit else message)


class Representation:
    """Affine isometries ``tau(gamma)`` of ``R^dim`` for each group element.

    Given by one orthogonal matrix and translation per generator (free
    generators first, then torsion generators).
    """

    def __init__(self, spec: GroupSpec, free: Sequence = (), torsion: Sequence = (), dim: int | None = None):
        self.spec = spec
        gens = [_as_affine(g) for g in free] + [_as_affine(g) for g in torsion]
        if len(free) != spec.free_rank or len(torsion) != len(spec.torsion):
            raise ValueError(
                f"need {spec.free_rank} free and {len(spec.torsion)} torsion generators, "
                f"got {len(free)} and {len(torsion)}"
            )
        if dim is None:
            if not gens:
                raise ValueError("dim is required when the group has no generators")
            dim = gens[0][0].shape[0]
        self.dim = dim
        for q, t in gens:
            if q.shape != (dim, dim) or t.shape != (dim,):
                raise ValueError(f"generator shapes {q.shape}, {t.shape} do not match dim {dim}")
        self.free_generators = gens[: spec.free_rank]
        self.torsion_generators = gens[spec.free_rank:]
        self._cache: dict[GroupElement, np.ndarray] = {}

    @classmethod
    def trivial(cls, spec: GroupSpec, dim: int) -> Representation:
        eye = (np.eye(dim), np.zeros(dim))
        return cls(spec, [eye] * spec.free_rank, [eye] * len(spec.torsion), dim=dim)

    def _homogeneous(self, q, t) -> np.ndarray:
        h = np.eye(self.dim + 1)
        h[: self.dim, : self.dim] = q
        h[: self.dim, self.dim] = t
        return h

    def affine(self, g: GroupElement) -> np.ndarray:
        """``tau(g)`` as a ``(dim+1, dim+1)`` homogeneous matrix."""
        if g.spec != self.spec:
            raise ValueError(f"element of {g.spec} given to representation of {self.spec}")
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        out = np.eye(self.dim + 1)
        powers = list(g.free) + list(g.torsion)
        for (q, t), k in zip(self.free_generators + self.torsion_generators, powers):
            if k == 0:
                continue
            h = self._homogeneous(q, t)
            if k < 0:
                h = np.linalg.inv(h)
                k = -k
            out = out @ np.linalg.matrix_power(h, k)
        out.setflags(write=False)
        if len(self._cache) < 100_000:
            self._cache[g] = out
        return out

    def linear(self, g: GroupElement) -> np.ndarray:
        """The orthogonal linear part ``dtau(g)``."""
        return self.affine(g)[: self.dim, : self.dim]

    def apply(self, g: GroupElement, x) -> np.ndarray:
        h = self.affine(g)
        return h[: self.dim, : self.dim] @ np.asarray(x, dtype=float) + h[: self.dim, self.dim]

    def generators(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(self.free_generators) + list(self.torsion_generators)

    def validate(self, tol: float = EQUIVARIANCE_TOL) -> list[Violation]:
        out = []
        gens = self.generators()
        hs = [self._homogeneous(q, t) for q, t in gens]
        for i, (q, _) in enumerate(gens):
            dev = np.abs(q.T @ q - np.eye(self.dim)).max()
            if dev > tol:
                out.append(Violation("non-orthogonal", f"generator {i} deviates from orthogonal by {dev:.3g}", f"representation[{i}]"))
        for j, n in enumerate(self.spec.torsion):
            i = self.spec.free_rank + j
            dev = np.abs(np.linalg.matrix_power(hs[i], n) - np.eye(self.dim + 1)).max()
            if dev > tol:
                out.append(
                    Violation("torsion order", f"torsion generator {j} to the power {n} misses the identity by {dev:.3g}", f"representation[{i}]")
                )
        for i in range(len(hs)):
            for k in range(i + 1, len(hs)):
                dev = np.abs(hs[i] @ hs[k] - hs[k] @ hs[i]).max()
                if dev > tol:
                    out.append(Violation("non-commuting", f"generators {i} and {k} do not commute ({dev:.3g})", "representation"))
        return out


def _as_affine(g) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(g, Mapping):
        q, t = g["matrix"], g.get("translation")
    else:
        q, t = g
    q = np.array(q, dtype=float)
    t = np.zeros(q.shape[0]) if t is None else np.array(t, dtype=float)
    return q, t


@dataclass
class BlockPair:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        self.A = np.atleast_2d(np.asarray(self.A, dtype=complex))
        self.B = np.atleast_2d(np.asarray(self.B, dtype=complex))


@dataclass
class SymmetricFramework:
    gain_graph: GainGraph
    dim_x: int
    dim_y: int
    representation: Representation
    blocks: dict[str, BlockPair]
    placements: dict[str, np.ndarray] | None = None
    recipes: dict[str, dict] = field(default_factory=dict)

    @property
    def group(self) -> GroupSpec:
        return self.gain_graph.group

    @property
    def n_rows(self) -> int:
        return self.dim_y * len(self.gain_graph.edge_orbits)

    @property
    def n_cols(self) -> int:
        return self.dim_x * len(self.gain_graph.vertex_orbits)

    def block(self, eid: str) -> BlockPair:
        return self.blocks[eid]

    def covering_placement(self, gamma: GroupElement, vid: str) -> np.ndarray:
        if self.placements is None:
            raise ValueError("framework has no placements")
        return self.representation.apply(gamma, self.placements[vid])


def edge_vector(e: EdgeOrbit, placements: Mapping, rep: Representation) -> np.ndarray:
    """``p_v~ - tau(gain) p_w~`` for the representative edge of ``e``."""
    return np.asarray(placements[e.tail], dtype=float) - rep.apply(e.gain, placements[e.head])


def _complete(g: GainGraph, rep: Representation, dim_y: int, rows: dict, placements=None, recipes=None) -> SymmetricFramework:
    blocks = {}
    for e in g.edge_orbits:
        a = np.atleast_2d(np.asarray(rows[e.id], dtype=complex))
        blocks[e.id] = BlockPair(a, -a @ rep.linear(e.gain))
    pl = None if placements is None else {k: np.asarray(v, dtype=float) for k, v in placements.items()}
    return SymmetricFramework(g, rep.dim, dim_y, rep, blocks, pl, dict(recipes or {}))


def _precheck(g: GainGraph, placements, rep: Representation):
    g.checked()
    if rep.spec != g.group:
        raise ValueError(f"representation is for {rep.spec}, gain graph for {g.group}")
    missing = [v for v in g.vertex_orbits if v not in placements]
    if missing:
        raise ValueError(f"missing placements for {missing}")


def _nonzero_edge(e, placements, rep) -> np.ndarray:
    vec = edge_vector(e, placements, rep)
    if np.allclose(vec, 0.0, atol=1e-12):
        raise FrameworkError("degenerate edge: endpoints coincide", e.id)
    return vec


def euclidean_row(vec) -> np.ndarray:
    return np.asarray(vec, dtype=float)[None, :]


def direction_rows(vec) -> np.ndarray:
    """A ``(d-1, d)`` matrix whose kernel is spanned by ``vec``.

    In the plane this is the counterclockwise perpendicular ``(-y, x)``.  In
    higher dimensions the standard basis is orthonormalised against ``vec``
    after dropping the basis vector most aligned with it.
    """
    vec = np.asarray(vec, dtype=float)
    d = vec.size
    if d == 2:
        return np.array([[-vec[1], vec[0]]])
    u = vec / np.linalg.norm(vec)
    drop = int(np.argmax(np.abs(u)))
    basis = [u]
    for k in range(d):
        if k == drop:
            continue
        x = np.zeros(d)
        x[k] = 1.0
        for b in basis:
            x = x - (b @ x) * b
        basis.append(x / np.linalg.norm(x))
    return np.array(basis[1:])


def length_rows(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    return np.tile(vec, (vec.size - 1, 1))


def l2q_norm(v, q: float) -> float:
    x, y, z = np.asarray(v, dtype=float)
    return ((x * x + y * y) ** (q / 2) + abs(z) ** q) ** (1 / q)


def l2q_row(vec, q: float) -> np.ndarray:
    """Gradient of the mixed (2,q)-norm at ``vec`` as a ``1 x 3`` row."""
    x, y, z = (float(c) for c in vec)
    d = np.hypot(x, y)
    planar = d ** (q - 2) if d > 0 else 0.0
    vertical = np.sign(z) * abs(z) ** (q - 1) if z != 0 else 0.0
    scale = (d**q + abs(z) ** q) ** (1 / q - 1)
    return scale * np.array([[planar * x, planar * y, vertical]])


def l2q_smooth(vec, q: float) -> bool:
    x, y, z = (float(c) for c in vec)
    if x == 0 and y == 0:
        return z != 0 and q >= 2
    return True


def build_euclidean(g: GainGraph, placements: Mapping, rep: Representation) -> SymmetricFramework:
    """Bar constraints ``x -> (p_v - p_w) . x``."""
    _precheck(g, placements, rep)
    rows = {e.id: euclidean_row(_nonzero_edge(e, placements, rep)) for e in g.edge_orbits}
    recipes = {e.id: {"type": "euclidean"} for e in g.edge_orbits}
    return _complete(g, rep, 1, rows, placements, recipes)


def build_direction_length(g: GainGraph, placements: Mapping, rep: Representation, edge_kinds: Mapping[str, str]) -> SymmetricFramework:
    _precheck(g, placements, rep)
    d = rep.dim
    if d < 2:
        raise ValueError("direction-length frameworks need dimension >= 2")
    rows, recipes = {}, {}
    for e in g.edge_orbits:
        kind = edge_kinds.get(e.id)
        vec = _nonzero_edge(e, placements, rep)
        if kind == "direction":
            rows[e.id] = direction_rows(vec)
        elif kind == "length":
            rows[e.id] = length_rows(vec)
        else:
            raise FrameworkError(f"edge kind must be 'direction' or 'length', got {kind!r}", e.id)
        recipes[e.id] = {"type": kind}
    return _complete(g, rep, d - 1, rows, placements, recipes)


def build_l2q(g: GainGraph, placements: Mapping, rep: Representation, q: float) -> SymmetricFramework:
    """Distance constraints for the mixed norm ``((x^2+y^2)^(q/2) + |z|^q)^(1/q)`` on ``R^3``."""
    if rep.dim != 3:
        raise ValueError("the (2,q)-norm builder needs dim_x = 3")
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    _precheck(g, placements, rep)
    rows = {}
    for e in g.edge_orbits:
        vec = _nonzero_edge(e, placements, rep)
        if not l2q_smooth(vec, q):
            raise FrameworkError(f"non-smooth point {tuple(vec)} of the (2,{q})-norm", e.id)
        rows[e.id] = l2q_row(vec, q)
    recipes = {e.id: {"type": "l2q", "q": q} for e in g.edge_orbits}
    return _complete(g, rep, 1, rows, placements, recipes)


def build_explicit(g: GainGraph, rep: Representation, blocks: Mapping, dim_y: int | None = None, placements=None) -> SymmetricFramework:
    """Frameworks from given blocks: each value is ``A``, ``(A, B)`` or a :class:`BlockPair`."""
    g.checked()
    problems = []
    out = {}
    for k, e in enumerate(g.edge_orbits):
        if e.id not in blocks:
            problems.append(Violation("missing block", f"no block for edge orbit {e.id!r}", f"edge_orbits[{k}]"))
            continue
        spec = blocks[e.id]
        if isinstance(spec, BlockPair):
            pair = BlockPair(spec.A, spec.B)
        elif isinstance(spec, tuple) and len(spec) == 2:
            pair = BlockPair(*spec)
        else:
            a = np.atleast_2d(np.asarray(spec, dtype=complex))
            b = -a @ rep.linear(e.gain) if a.shape[1] == rep.dim else np.zeros_like(a)
            pair = BlockPair(a, b)
        if dim_y is None:
            dim_y = pair.A.shape[0]
        for name, m in (("A", pair.A), ("B", pair.B)):
            if m.shape != (dim_y, rep.dim):
                problems.append(
                    Violation("dimension mismatch", f"{name} of {e.id!r} has shape {m.shape}, expected {(dim_y, rep.dim)}", f"edge_orbits[{k}]")
                )
        out[e.id] = pair
    if problems:
        raise ValidationError(problems)
    if dim_y is None:
        dim_y = 1
    pl = None if placements is None else {k: np.asarray(v, dtype=float) for k, v in placements.items()}
    return SymmetricFramework(g, rep.dim, dim_y, rep, out, pl, {e.id: {"type": "explicit"} for e in g.edge_orbits})


def recipe_rows(recipe: Mapping, vec) -> np.ndarray:
    kind = recipe["type"]
    if kind == "euclidean":
        return euclidean_row(vec)
    if kind == "direction":
        return direction_rows(vec)
    if kind == "length":
        return length_rows(vec)
    if kind == "l2q":
        return l2q_row(vec, recipe["q"])
    raise ValueError(f"no placement recipe for constraint type {kind!r}")


@dataclass
class EquivarianceReport:
    violations: list[Violation]
    max_deviation: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_equivariance(fw: SymmetricFramework, tol: float = EQUIVARIANCE_TOL) -> EquivarianceReport:
    """Check ``B = -A dtau(gain)`` per orbit, the representation, and placement recipes."""
    violations = list(fw.gain_graph.validate()) + fw.representation.validate(tol)
    worst = 0.0
    for k, e in enumerate(fw.gain_graph.edge_orbits):
        pair = fw.blocks.get(e.id)
        if pair is None:
            violations.append(Violation("missing block", f"no block for {e.id!r}", f"edge_orbits[{k}]"))
            continue
        if pair.A.shape != (fw.dim_y, fw.dim_x) or pair.B.shape != (fw.dim_y, fw.dim_x):
            violations.append(Violation("dimension mismatch", f"blocks of {e.id!r} are not {fw.dim_y}x{fw.dim_x}", f"edge_orbits[{k}]"))
            continue
        dev = float(np.abs(pair.B + pair.A @ fw.representation.linear(e.gain)).max(initial=0.0))
        worst = max(worst, dev)
        if dev > tol:
            violations.append(Violation("equivariance", f"B differs from -A dtau(gain) by {dev:.3g} on {e.id!r}", f"edge_orbits[{k}]"))
        recipe = fw.recipes.get(e.id, {})
        if fw.placements is not None and recipe.get("type", "explicit") != "explicit":
            expected = recipe_rows(recipe, edge_vector(e, fw.placements, fw.representation))
            dev = float(np.abs(pair.A - expected).max(initial=0.0))
            worst = max(worst, dev)
            if dev > tol:
                violations.append(Violation("placement", f"A of {e.id!r} differs from its {recipe['type']} recipe by {dev:.3g}", f"edge_orbits[{k}]"))
    return EquivarianceReport(violations, worst)


def directional_derivative_oracle(edge_vector, x, q: float, t: float = 1e-6) -> float:
    """Central difference of the (2,q)-norm at ``edge_vector`` along ``x``."""
    e = np.asarray(edge_vector, dtype=float)
    x = np.asarray(x, dtype=float)
    return (l2q_norm(e + t * x, q) - l2q_norm(e - t * x, q)) / (2 * t)
