"""Cross-check the symbol against windowed coboundary matrices on random frameworks.

Each framework is a screw-symmetric bar framework in space, possibly with an
extra three-fold rotation.  The checks compare symbol evaluation, Fourier
coefficients, flexes and norms against brute-force windowed matrices.
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from randomfw import random_framework  # noqa: E402

from rumkit.checks import run_all  # noqa: E402

rng = np.random.default_rng(7)
for k in range(6):
    fw = random_framework(rng, torsion=k % 2 == 1)
    edges = ", ".join(f"{e.tail}->{e.head} [{e.gain}]" for e in fw.gain_graph.edge_orbits)
    print(f"framework {k} over {fw.group}: {edges}")
    for result in run_all(fw, radius=3, grid=8):
        print("   ", result)
