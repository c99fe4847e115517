"""Gain graphs and their finite covering windows.

A gain graph lists vertex orbits and directed edge orbits ``[v] -> [w]``
labelled by a group element ``psi``.  The covering edge ``gamma * e~`` joins
``(gamma, [v])`` to ``(gamma + psi, [w])``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import GroupElement, GroupSpec, box


@dataclass(frozen=True)
class EdgeOrbit:
    id: str
    tail: str
    head: str
    gain: GroupElement

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    path: str = ""

    def __str__(self):
        where = f"{self.path}: " if self.path else ""
        return f"{where}{self.code}: {self.message}"


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class GainGraph:
    group: GroupSpec
    vertex_orbits: tuple[str, ...]
    edge_orbits: tuple[EdgeOrbit, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertex_orbits", tuple(self.vertex_orbits))
        object.__setattr__(self, "edge_orbits", tuple(self.edge_orbits))

    def vertex_index(self, vid: str) -> int:
        return self.vertex_orbits.index(vid)

    def edge(self, eid: str) -> EdgeOrbit:
        for e in self.edge_orbits:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def nonzero_gains(self) -> list[GroupElement]:
        seen = []
        for e in self.edge_orbits:
            if not e.gain.is_zero() and e.gain not in seen:
                seen.append(e.gain)
        return seen

    def validate(self) -> list[Violation]:
        return validate_gain_graph(self)

    def checked(self) -> GainGraph:
        problems = self.validate()
        if problems:
            raise ValidationError(problems)
        return self


def _orbit_key(e: EdgeOrbit):
    # ([v],[w],psi) and ([w],[v],-psi) name the same undirected edge orbit
    a = (e.tail, e.head, e.gain)
    b = (e.head, e.tail, -e.gain)
    return min(a, b, key=lambda k: (k[0], k[1], k[2].free, k[2].torsion))


def validate_gain_graph(g: GainGraph) -> list[Violation]:
    """Every invariant violation in ``g``; never raises on malformed input."""
    out: list[Violation] = []
    if not g.vertex_orbits:
        out.append(Violation("empty", "a gain graph needs at least one vertex orbit", "vertex_orbits"))
    for vid, count in Counter(g.vertex_orbits).items():
        if count > 1:
            out.append(Violation("duplicate id", f"vertex orbit {vid!r} listed {count} times", "vertex_orbits"))
    for eid, count in Counter(e.id for e in g.edge_orbits).items():
        if count > 1:
            out.append(Violation("duplicate id", f"edge orbit {eid!r} listed {count} times", "edge_orbits"))

    vertices = set(g.vertex_orbits)
    keys: dict = {}
    for k, e in enumerate(g.edge_orbits):
        path = f"edge_orbits[{k}]"
        if not isinstance(e.gain, GroupElement) or e.gain.spec != g.group:
            out.append(Violation("group mismatch", f"gain of {e.id!r} is not an element of {g.group}", f"{path}.gain"))
            continue
        for end in ("tail", "head"):
            if getattr(e, end) not in vertices:
                out.append(
                    Violation("dangling endpoint", f"{end} {getattr(e, end)!r} of {e.id!r} is not a vertex orbit", f"{path}.{end}")
                )
        if e.is_loop and e.gain.is_zero():
            out.append(Violation("degenerate loop", f"loop {e.id!r} has gain 0", f"{path}.gain"))
        elif e.is_loop and (e.gain + e.gain).is_zero():
            out.append(
                Violation("non-free loop", f"loop {e.id!r} has gain of order 2, so its edge is fixed by the action", f"{path}.gain")
            )
        key = _orbit_key(e)
        if key in keys:
            out.append(Violation("duplicate edge orbit", f"{e.id!r} names the same edge orbit as {keys[key]!r}", path))
        else:
            keys[key] = e.id
    return out


class Window:
    """A finite set of group elements used to truncate the covering graph."""

    def __init__(self, spec: GroupSpec, elements: Iterable[GroupElement]):
        self.spec = spec
        self.elements = tuple(elements)
        for g in self.elements:
            if g.spec != spec:
                raise ValueError(f"window element {g} is not in {spec}")
        self._index = {g: i for i, g in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("window contains duplicate elements")

    @classmethod
    def box(cls, spec: GroupSpec, radius: int | Sequence[int]) -> Window:
        return cls(spec, box(spec, radius))

    @classmethod
    def full(cls, spec: GroupSpec) -> Window:
        return cls(spec, spec.elements())

    def __contains__(self, g) -> bool:
        return g in self._index

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    def issubset(self, other: Window) -> bool:
        return all(g in other for g in self.elements)


@dataclass(frozen=True)
class CoveringEdge:
    orbit: EdgeOrbit
    shift: GroupElement
    tail: tuple[GroupElement, str]
    head: tuple[GroupElement, str]
    interior: bool


@dataclass
class CoveringGraph:
    gain_graph: GainGraph
    window: Window
    vertices: list[tuple[GroupElement, str]]
    edges: list[CoveringEdge]

    def interior_edges(self) -> list[CoveringEdge]:
        return [e for e in self.edges if e.interior]


def expand_window(g: GainGraph, w: Window) -> CoveringGraph:
    """Covering graph restricted to ``w``; edges leaving ``w`` are kept but flagged."""
    g.checked()
    vertices = [(gamma, vid) for gamma in w for vid in g.vertex_orbits]
    edges = []
    for gamma in w:
        for e in g.edge_orbits:
            head = gamma + e.gain
            edges.append(CoveringEdge(e, gamma, (gamma, e.tail), (head, e.head), head in w))
    return CoveringGraph(g, w, vertices, edges)


def degree_check(c: CoveringGraph) -> int:
    """Maximum vertex degree over interior edges; at most ``2 |E_0|`` for a free action."""
    deg = Counter()
    for e in c.interior_edges():
        deg[e.tail] += 1
        deg[e.head] += 1
    top = max(deg.values(), default=0)
    bound = 2 * len(c.gain_graph.edge_orbits)
    if top > bound:
        raise AssertionError(f"vertex degree {top} exceeds 2|E_0| = {bound}")
    return top
