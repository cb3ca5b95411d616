"""
Bloch vectors beyond the qubit
==============================

Build generator bases, move states between matrix and vector form, and see
that only part of the generalized Bloch ball holds positive operators.
"""

import numpy as np

from ebloch import build_gell_mann, classify, from_bloch, purity, random_mixed, random_pure, stream, to_bloch

rng = stream(1)

# For N = 2 the Gell-Mann construction returns the Pauli matrices.
print(build_gell_mann(2).matrices)

# A qutrit pure state lands on the unit sphere of R^8.
b3 = build_gell_mann(3)
r = to_bloch(random_pure(3, rng), b3)
print("|r| for a pure qutrit state:", np.linalg.norm(r), classify(r, b3))

# Mixed states sit inside; purity is (1 + (N - 1)|r|^2) / N.
D = random_mixed(3, rng)
r = to_bloch(D, b3)
print("purity from r:", purity(r), " Tr D^2:", np.trace(D @ D).real)

# Not every unit vector is a state: this one gives a negative eigenvalue.
e8 = np.zeros(8)
e8[7] = 1
print("eigenvalues of D(e_8):", np.linalg.eigvalsh(from_bloch(e8, b3)), classify(e8, b3))
