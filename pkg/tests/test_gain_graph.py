import pytest

from rumkit import EdgeOrbit, GainGraph, GroupSpec, Window, degree_check, expand_window, validate_gain_graph
from rumkit.gain_graph import ValidationError

Z = GroupSpec(1)
Z2 = GroupSpec(0, (2,))
ZZ2 = GroupSpec(1, (2,))


def cycle4_graph():
    return GainGraph(Z2, ("v1", "v2"), (
        EdgeOrbit("e1", "v1", "v2", Z2.element([], [0])),
        EdgeOrbit("e2", "v1", "v2", Z2.element([], [1])),
    ))


def helix_graph():
    return GainGraph(Z, ("v0", "v1"), (
        EdgeOrbit("rung", "v0", "v1", Z.element([0])),
        EdgeOrbit("s0", "v0", "v0", Z.element([1])),
        EdgeOrbit("s1", "v1", "v1", Z.element([1])),
    ))


def diamond_graph():
    return GainGraph(ZZ2, ("v",), (
        EdgeOrbit("e1", "v", "v", ZZ2.element([1], [0])),
        EdgeOrbit("e2", "v", "v", ZZ2.element([1], [1])),
    ))


def codes(g):
    return [v.code for v in validate_gain_graph(g)]


def test_valid_graphs():
    for g in (cycle4_graph(), helix_graph(), diamond_graph()):
        assert codes(g) == []


def test_degenerate_loop():
    g = GainGraph(Z, ("v",), (EdgeOrbit("e", "v", "v", Z.zero()),))
    assert codes(g) == ["degenerate loop"]


def test_dangling_endpoint():
    g = GainGraph(Z, ("v",), (EdgeOrbit("e", "v", "w", Z.zero()),))
    assert codes(g) == ["dangling endpoint"]
    assert validate_gain_graph(g)[0].path == "edge_orbits[0].head"


def test_all_violations_reported():
    g = GainGraph(Z, ("v", "v"), (
        EdgeOrbit("e", "v", "x", Z.zero()),
        EdgeOrbit("e", "y", "y", Z.zero()),
    ))
    found = codes(g)
    assert found.count("dangling endpoint") == 3
    assert "degenerate loop" in found
    assert found.count("duplicate id") == 2


def test_non_free_and_duplicate_orbits():
    g = GainGraph(Z2, ("v",), (EdgeOrbit("e", "v", "v", Z2.element([], [1])),))
    assert codes(g) == ["non-free loop"]
    g = GainGraph(Z, ("v", "w"), (
        EdgeOrbit("a", "v", "w", Z.element([1])),
        EdgeOrbit("b", "w", "v", Z.element([-1])),
    ))
    assert codes(g) == ["duplicate edge orbit"]


def test_group_mismatch():
    g = GainGraph(Z, ("v",), (EdgeOrbit("e", "v", "v", Z2.element([], [1])),))
    assert codes(g) == ["group mismatch"]


def test_empty_vertex_set():
    assert codes(GainGraph(Z, (), ())) == ["empty"]
    with pytest.raises(ValidationError):
        expand_window(GainGraph(Z, (), ()), Window.box(Z, 1))


def test_window_rejects_duplicates():
    with pytest.raises(ValueError):
        Window(Z2, [Z2.element([], [1]), Z2.element([], [3])])


def test_helix_window():
    c = expand_window(helix_graph(), Window(Z, [Z.element([k]) for k in range(4)]))
    assert len(c.vertices) == 8
    assert len(c.edges) == 12
    assert len(c.interior_edges()) == 10
    lost = [(e.orbit.id, e.shift.free[0]) for e in c.edges if not e.interior]
    assert sorted(lost) == [("s0", 3), ("s1", 3)]


def test_diamond_window():
    w = Window(ZZ2, [ZZ2.element([m], [j]) for m in (0, 1) for j in (0, 1)])
    c = expand_window(diamond_graph(), w)
    assert (len(c.vertices), len(c.edges), len(c.interior_edges())) == (4, 8, 4)


def test_cycle4_full_window():
    c = expand_window(cycle4_graph(), Window.full(Z2))
    assert all(e.interior for e in c.edges)
    # v_1=(0,v1), v_2=(0,v2), v_3=(1,v1), v_4=(1,v2)
    label = {(Z2.element([], [0]), "v1"): 1, (Z2.element([], [0]), "v2"): 2,
             (Z2.element([], [1]), "v1"): 3, (Z2.element([], [1]), "v2"): 4}
    got = {frozenset((label[e.tail], label[e.head])) for e in c.edges}
    assert got == {frozenset(p) for p in [(1, 2), (3, 4), (1, 4), (2, 3)]}
    orbit_sizes = {}
    for e in c.edges:
        orbit_sizes[e.orbit.id] = orbit_sizes.get(e.orbit.id, 0) + 1
    assert orbit_sizes == {"e1": 2, "e2": 2}


def test_degree():
    assert degree_check(expand_window(helix_graph(), Window.box(Z, 3))) == 3
    assert degree_check(expand_window(diamond_graph(), Window.box(ZZ2, 3))) == 4
    assert degree_check(expand_window(GainGraph(Z, ("v",), ()), Window.box(Z, 2))) == 0


@pytest.mark.parametrize("graph", [helix_graph, diamond_graph])
def test_truncation_monotone(graph):
    g = graph()
    small, large = Window.box(g.group, 2), Window.box(g.group, 4)
    assert small.issubset(large)
    inner = {(e.orbit.id, e.shift) for e in expand_window(g, small).interior_edges()}
    outer = {(e.orbit.id, e.shift) for e in expand_window(g, large).interior_edges()}
    assert inner <= outer


def test_box_window_shape():
    w = Window.box(ZZ2, 2)
    assert len(w) == 10
    assert ZZ2.element([-2], [1]) in w and ZZ2.element([3], [0]) not in w
