"""
The T-SVD
=========

Factor A = U * S * V^T with U, V orthogonal and S diagonal with
symmetric, positive semidefinite, ordered diagonal tubes.
"""
import numpy as np

import tubal
import tubal.transform as tf

rng = np.random.default_rng(7)
A = rng.standard_normal((4, 3, 5))
L = tf.make_unitary_dft(5)

f = tubal.tsvd(L, A)
print("residual        ", tubal.frobenius(A - f.reconstruct()))
print("U orthogonal    ", tubal.is_orthogonal(L, f.U))
print("V orthogonal    ", tubal.is_orthogonal(L, f.V))
print("S checks        ", tubal.validate_s_diagonal(L, f.S.tensor()))

# the diagonal tubes, and their values in the transform domain
np.set_printoptions(precision=4, suppress=True)
print("diagonal tubes:\n", f.S.tubes)
print("transform-domain values:\n", f.S.transform_values)

sp = tubal.spectrum_from(f.S)
print("T-singular values", sp.sigma)
print("B-singular values", sp.mu)
print("tubal rank", sp.rank_t, " B-rank", sp.rank_b)

# sum of squares matches the norm either way
print(np.sum(sp.sigma ** 2), np.sum(sp.mu ** 2), tubal.frobenius(A) ** 2)

# a rank-2 tensor factors through 2 columns
Low = tubal.mat_tprod(L, rng.standard_normal((4, 2, 5)), rng.standard_normal((2, 3, 5)))
B, C = tubal.rank_factorization(L, Low)
print("\nrank factorization shapes", B.shape, C.shape,
      "error", tubal.frobenius(Low - tubal.mat_tprod(L, B, C)))
