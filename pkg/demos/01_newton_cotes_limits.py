"""
Mapped quadrature and its Newton-Cotes limits
=============================================

The interpolatory (KTI) rule on equispaced nodes interpolates the samples with
a polynomial in the mapped variable ``y = M_alpha(x)``. At the two ends of the
parameter range it reduces to familiar rules.
"""

import numpy as np

from mappedquad import (
    cosine_map,
    equispaced_closed,
    equispaced_midpoint,
    kti_rule,
    mapped_interp_rule,
    mapped_simpson_rule,
)

np.set_printoptions(precision=6, suppress=True, linewidth=100)
m = 8

# alpha = 1 sends the closed grid to Chebyshev-Lobatto points; the weights are
# the composite trapezoidal ones
print("alpha = 1, closed nodes:     ", kti_rule(1.0, equispaced_closed(m)).weights)

# on the midpoint grid every weight is 2/(m+1)
print("alpha = 1, midpoint nodes:   ", kti_rule(1.0, equispaced_midpoint(m)).weights)

# alpha -> 0 is plain polynomial interpolation, i.e. closed Newton-Cotes
nc = mapped_interp_rule(lambda t: t, equispaced_closed(m)).weights
print("Newton-Cotes (identity map): ", nc)
print("alpha = 1e-6:                ", kti_rule(1e-6, equispaced_closed(m)).weights)

# the limits are approached continuously
for alpha in (0.9, 0.99, 0.999, 1 - 1e-6):
    w = kti_rule(alpha, equispaced_closed(m)).weights
    trap = np.r_[1 / m, np.full(m - 1, 2 / m), 1 / m]
    print(f"alpha = {alpha:<10g} max |w - trapezoid| = {np.max(np.abs(w - trap)):.2e}")

# %%
# Any smooth injective map works. The cosine map on [a, b] reproduces the
# trapezoidal and midpoint rules, and a convex combination of the two gives
# composite Cavalieri-Simpson.
a, b = 0.0, 3.0
x, w = mapped_simpson_rule(a, b, 4)
print("\nSimpson weights * 6m/(b-a):", w * 6 * 4 / (b - a))
xm = a + (np.arange(5) + 0.5) * (b - a) / 5
print("cosine map, midpoint grid:  ", mapped_interp_rule(lambda t: cosine_map(a, b, t), xm, a, b).weights)
