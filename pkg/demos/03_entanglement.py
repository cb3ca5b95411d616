"""
Direct-sum picture of two entangled qubits
==========================================

In the tensor-product basis the 15-component Bloch vector of a two-qubit
state splits into the two reduced Bloch vectors and a correlation part.
"""

import numpy as np

from ebloch import build_entangled, build_tensor_basis, decompose_direct_sum, is_product, to_bloch
from ebloch.composite import SINGLET, EntangledParams

tb = build_tensor_basis(2, 2)

for label, params in [
    ("product", EntangledParams(1.0, 0.0)),
    ("partially entangled", EntangledParams(0.6, 0.8, 0.3)),
    ("singlet", SINGLET),
]:
    d = decompose_direct_sum(to_bloch(build_entangled(params).joint, tb), tb)
    print(f"{label:>20}: rA={d.rA.round(3)}, rB={d.rB.round(3)}, |rcorr|={np.linalg.norm(d.rcorr):.4f}, product={is_product(d)}")

print("singlet correlation block:\n", decompose_direct_sum(to_bloch(build_entangled(SINGLET).joint, tb), tb).corr_matrix.round(4))
