"""
Moments and conditioning
========================

The moments ``tau_i = int T_i(M_alpha(x)) dx`` are cosine-transform
coefficients of a smooth function; they decay with i for alpha < 1 and
collapse to ``(2, 0, 0, ...)`` at alpha = 1.
"""

import numpy as np

from mappedquad import build_design, condition_estimate, equispaced_closed, ls_mu_weights, moments

for alpha in (0.0, 0.5, 0.9, 0.99, 1.0):
    mv = moments(alpha, 16)
    print(f"alpha={alpha:<5} ({mv.method:>11s}) tau_0..tau_8 even:", np.round(mv.entries[:9:2], 6))

# %%
# Condition number of the weighted design matrix W A on 141 equispaced nodes,
# for a few alpha and degree ratios n/m.
nodes = equispaced_closed(140)
print("\n alpha  " + "".join(f"  n/m={r:<5}" for r in (0.1, 0.25, 0.5, 1.0)))
for alpha in (0.5, 0.8, 0.9, 0.98, 1.0):
    mu = ls_mu_weights(alpha, nodes)
    row = [condition_estimate(build_design(alpha, nodes, int(r * 140)), mu) for r in (0.1, 0.25, 0.5, 1.0)]
    print(f"{alpha:6.2f}  " + "".join(f"{c:11.2e}" for c in row))
