"""
Tubal scalars
=============

A tubal scalar is a length-p real vector.  Multiplication goes through an
invertible transform L: transform both, multiply entrywise, transform back.
"""
import numpy as np

import tubal
import tubal.transform as tf

# under the DFT the product is circular convolution
F = tf.make_dft(4)
a = np.array([1.0, 2.0, 0.0, 3.0])
b = np.array([0.0, 1.0, 0.0, 0.0])
print("a * b      =", np.round(tubal.tprod(F, a, b), 12))
print("circ_conv  =", tubal.oracle.circ_conv(a, b))

# the unit is (1, 0, ..., 0) for the DFT but not for the unitary DFT
print("unit (F)   =", np.round(tubal.unit(F), 12))
print("unit (F/2) =", np.round(tubal.unit(tf.make_unitary_dft(4)), 12))

# inverses exist whenever no transform-domain entry vanishes
ainv = tubal.invert(F, a)
print("a * a^-1   =", np.round(tubal.tprod(F, a, ainv), 12))

# the transpose reverses indices 2..p
print("a^T        =", tubal.transpose_scalar(F, a))

# a^T * a is symmetric positive semidefinite
g = tubal.tprod(F, tubal.transpose_scalar(F, a), a)
print("a^T a sym? ", tubal.is_symmetric(F, g), " psd?", tubal.is_psd(F, g))

# not every transform keeps real tubes real
s = np.sqrt(2) / 2
P = np.array([[s, s, 0], [s, -s, 0], [0, 0, 1]])
PF = tf.from_matrix(P @ tf.make_dft(3).L)
print("\nPF real-preserving:", PF.cls.is_real_preserving)
print("PF product:", np.round(tubal.tprod_complex(PF, [1, 2, 3], [3, 4, 5]), 4))
try:
    tubal.tprod(PF, [1, 2, 3], [3, 4, 5])
except tubal.NotRealPreserving as exc:
    print("tprod refuses:", exc)
