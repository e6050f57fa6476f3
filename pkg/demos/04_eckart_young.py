"""
Best low-rank approximations
============================

Truncating the T-SVD gives the best tubal-rank-i approximation, and
keeping the j largest transform-domain values gives the best B-rank-j one.
Both errors are predicted by the tail energies tau and nu.
"""
import numpy as np

import tubal
import tubal.transform as tf
from tubal import oracle

rng = np.random.default_rng(3)
A = rng.standard_normal((5, 4, 4))
L = tf.make_dct(4)
f = tubal.tsvd(L, A)
sp = tubal.spectrum_from(f.S)

print(" i   ||A - A_i||   tau_i")
for i in range(1, 4):
    err = tubal.frobenius(A - tubal.truncate_tubal(f, i))
    print(f"{i:2d}   {err:10.6f}   {sp.tau[i]:10.6f}")

print("\n j   ||A - A_j||   nu_j")
for j in (1, 4, 8, 12):
    err = tubal.frobenius(A - tubal.truncate_brank(f, j))
    print(f"{j:2d}   {err:10.6f}   {sp.nu[j]:10.6f}")

# B-rank p*i never does worse than tubal rank i
print("\nnu_4 <= tau_1:", sp.nu[4] <= sp.tau[1])

# random competitors of the same rank all do worse
rep = oracle.random_search_optimality(L, A, tubal.truncate_tubal(f, 2), oracle.CompetitorSpec("tubal", 2, 200))
print("tubal rank 2 beats 200 competitors:", rep.dominated, " margin", rep.worst_margin)

# the B-rank result agrees with a best rank-j cut of the block diagonal matrix
X, off, _ = oracle.bldg_best_rank(L, A, 6)
print("block-diagonal cut agrees:", tubal.frobenius(X - tubal.truncate_brank(f, 6)) < 1e-8)

# under the DFT some cuts would split a conjugate pair of slices
Fu = tf.make_unitary_dft(4)
g = tubal.tsvd(Fu, A)
print("real cuts under the unitary DFT:", [j for j in range(1, 16) if tubal.brank_cut_is_real(g, j)])
