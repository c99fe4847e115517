"""The box kite in the mixed (2,q)-norm.

Every character of Z_4 x Z_2 is in the spectrum for each q.  The flex at
(-1,-1) depends on q through its vertical component.
"""

import numpy as np

from rumkit import Window, build_flex, kernel_basis, load_fixture, orbit_matrix, verify_flex

for q in (1.5, 2.0, 3.0):
    fw = load_fixture("boxkite", q=q)
    spec = fw.group
    chi = spec.character([], [2, 1])
    dim, basis, _ = kernel_basis(orbit_matrix(fw, chi))
    a = basis[:, 0] / basis[0, 0]
    flex = build_flex(fw, chi, a, Window.full(spec))
    report = verify_flex(fw, flex)
    print(f"q = {q}: kernel at (-1,-1) spanned by {np.round(a.real, 6)}, flex residual {report.max_residual:.1e}")
    for j in (0, 1):
        print(f"   z at (0,{j}) = {np.round(flex[(spec.element([], [0, j]), 'v')].real, 6)}")
