"""A planar direction-length lattice with an isolated spectrum.

One loop fixes a direction, the other a length.  Sampling the dual group of
Z x Z_2 finds three spectrum points; refinement shows the point at
omega = iota = -1 is isolated.
"""

from fractions import Fraction

from rumkit import Window, build_flex, load_fixture, orbit_matrix, rum_spectrum, spectrum_scan_refine, verify_flex

fw = load_fixture("diamond")
for s in rum_spectrum(fw, 4):
    mark = "*" if s.in_spectrum else " "
    print(f"{mark} turn {str(s.character.turns[0]):>4}  torsion {s.character.indices[0]}  sigma_min {s.sigma_min:.4f}")

chi = fw.group.character([Fraction(1, 2)], [1])
print("\nsymbol at omega = iota = -1:")
print(orbit_matrix(fw, chi).real)

flex = build_flex(fw, chi, [1, 0], Window.box(fw.group, 3))
print("flex values along the free axis (torsion 0):")
for gamma in flex.window:
    if gamma.torsion == (0,):
        print(f"  {gamma}: {flex[(gamma, 'v')].real}")
print("verification:", "PASS" if verify_flex(fw, flex).passed else "FAIL")

near = [s for s in spectrum_scan_refine(fw, 4, 4) if s.character.indices == (1,) and s.in_spectrum]
print("\nrefined spectrum points with torsion 1:", [str(s.character.turns[0]) for s in near])
