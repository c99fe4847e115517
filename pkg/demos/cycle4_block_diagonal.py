"""A four-cycle with a Z_2 symmetry splits into two orbit matrices.

The full 4x8 coboundary matrix and the two 2x4 orbit matrices share their
singular values, so rank and flexes can be read off per character.
"""

import numpy as np

from rumkit import block_diagonalize, coboundary_finite, load_fixture, rank_with_tol

fw = load_fixture("cycle4")
full = coboundary_finite(fw).dense().real
print("coboundary matrix over the whole group:")
print(full)
print("rank", rank_with_tol(full))

blocks = block_diagonalize(fw)
for chi, m in blocks:
    print(f"\norbit matrix at character {chi}:")
    print(m.real)

s_full = np.sort(np.linalg.svd(full, compute_uv=False))
s_blocks = np.sort(np.concatenate([np.linalg.svd(m, compute_uv=False) for _, m in blocks]))
print("\nsingular values, full matrix:", np.round(s_full, 6))
print("singular values, blocks:     ", np.round(s_blocks, 6))
