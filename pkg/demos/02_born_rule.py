"""
The Born rule as a symmetry breaking on a simplex
=================================================

A qutrit state falls onto the measurement triangle, the landing point splits
the triangle into three regions, and a uniformly chosen breaking point picks
the outcome.  Frequencies converge to Tr(D P_i).
"""

import numpy as np

from ebloch import born_probabilities, build_gell_mann, measurement_simplex, monte_carlo_report, stream, to_bloch
from ebloch.hidden_measurement import eigenbasis_matrix, project_onto_simplex, trajectory_stage1
from ebloch.state_space import random_pure

rng = stream(2)
basis = build_gell_mann(3)
O = np.diag([1.0, 0.0, -1.0])
sx = measurement_simplex(O, basis)
print("vertex Gram matrix (equilateral triangle):\n", sx.gram().round(12))

D = random_pure(3, rng)
r = to_bloch(D, basis)
on = project_onto_simplex(r, sx)
print("on-simplex barycentric coordinates:", on.barycentric)
print("Tr(D P_i):                          ", np.array([np.trace(D @ P).real for P in sx.projectors]))

# Stage one only damps coherences; populations are untouched.
for tau in (0.0, 0.5, 1.0):
    M = eigenbasis_matrix(trajectory_stage1(r, sx, tau), sx)
    print(f"tau={tau}: |off-diagonal| = {np.abs(M[0, 1]):.4f}, diagonal = {np.diag(M).real.round(4)}")

report = monte_carlo_report(r, sx, trials=200_000, seed=2)
print("frequencies:", report.frequencies, " Born:", born_probabilities(r, sx))
print("chi-square p-value:", report.p_value)
