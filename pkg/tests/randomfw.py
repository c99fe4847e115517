"""Seeded random Euclidean frameworks over Z and Z x Z_3 in three dimensions."""

import numpy as np

from rumkit import GainGraph, GroupSpec, build_euclidean
from rumkit.framework import FrameworkError, Representation
from rumkit.gain_graph import EdgeOrbit


def rot_z(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def random_framework(rng, torsion=False, max_tries=50):
    """Screw about the z-axis for the free generator, order-3 rotation for the torsion one."""
    spec = GroupSpec(1, (3,) if torsion else ())
    for _ in range(max_tries):
        theta = rng.uniform(0, 2 * np.pi)
        free = [(rot_z(theta), np.array([0.0, 0.0, rng.uniform(0.5, 2.0)]))]
        tors = [(rot_z(2 * np.pi / 3), np.zeros(3))] if torsion else []
        rep = Representation(spec, free, tors, dim=3)
        nv = int(rng.integers(1, 4))
        vids = tuple(f"v{i}" for i in range(nv))
        placements = {v: rng.normal(size=3) for v in vids}
        edges = []
        for k in range(int(rng.integers(1, 5))):
            t, h = rng.choice(nv), rng.choice(nv)
            gain = spec.element([int(rng.integers(-2, 3))], [int(rng.integers(0, 3))] if torsion else [])
            edges.append(EdgeOrbit(f"e{k}", vids[t], vids[h], gain))
        g = GainGraph(spec, vids, tuple(edges))
        if g.validate():
            continue
        try:
            return build_euclidean(g, placements, rep)
        except FrameworkError:
            continue
    raise RuntimeError("could not draw a valid framework")
