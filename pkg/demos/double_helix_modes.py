"""Rigid unit modes of a double helix with a screw symmetry.

Every character of Z carries at least a three dimensional kernel.  At the
trivial character the symbol loses rank once more: the rotation about the
helix axis is an extra periodic motion.
"""

import numpy as np

from rumkit import Window, build_flex, fourier_coefficients, load_fixture, rum_spectrum, verify_flex

fw = load_fixture("doublehelix")
poly = fourier_coefficients(fw)
np.set_printoptions(precision=4, suppress=True)
for g in poly.support:
    print(f"Fourier coefficient at {g}:")
    print(poly.coefficient(g).real)

samples = rum_spectrum(fw, 16)
print("\nturn   kernel_dim   sigma_min")
for s in samples:
    print(f"{str(s.character.turns[0]):>5}   {s.kernel_dim:>10}   {s.sigma_min:.2e}")

w = Window.box(fw.group, 6)
worst = 0.0
for s in samples:
    for k in range(s.kernel_dim):
        worst = max(worst, verify_flex(fw, build_flex(fw, s.character, s.kernel_basis[:, k], w)).max_residual)
print(f"\nlargest interior residual over all sampled modes: {worst:.2e}")
