"""
Transforms and their properties
===============================

Which transforms keep real tensors real, which also give a well-behaved
transpose, and which are unitary (needed for the norm results).
"""
import numpy as np

import tubal.transform as tf

rows = []
for name in tf.BUILTINS:
    L = tf.builtin(name, 5, seed=1)
    c = L.cls
    rows.append((name, c.is_real_preserving, c.is_doubly_real_preserving, c.is_unitary, c.conj_structure.kind))

print(f"{'name':<10} {'RP':<6} {'DRP':<6} {'unitary':<8} conjugation")
for r in rows:
    print(f"{r[0]:<10} {str(r[1]):<6} {str(r[2]):<6} {str(r[3]):<8} {r[4]}")

# right-multiplying by any invertible real matrix keeps real-preservation
rng = np.random.default_rng(0)
P = tf.from_matrix(rng.standard_normal((5, 5)))
print("\nF P real-preserving:", tf.compose(tf.make_dft(5), P).cls.is_real_preserving)
print("P F real-preserving:", tf.compose(P, tf.make_dft(5)).cls.is_real_preserving)

# under the DFT, conjugation in the transform domain pairs slice k with p-k
print("DFT pairing:", tf.make_dft(6).cls.conj_structure.perm)

# the transpose map as a real matrix
print("transpose map for F, p=4:\n", tf.make_dft(4).cls.psi.astype(int))

# save and reload
tf.save(tf.make_unitary_dft(3), "/tmp/ndft3.json")
print("reloaded unitary:", tf.load("/tmp/ndft3.json").cls.is_unitary)
