"""
Why the moments are not computed in the monomial basis
======================================================

The monomial moments of the map follow from an integration-by-parts
recursion. A seed error ``e_0`` propagates as ``e_2k = (2k-1)/(2k) e_2k-2``,
which is harmless by itself, but the moments carry a factor
``sin(alpha pi/2)^(-2k)`` that grows geometrically when alpha < 1.
"""

import math

from mappedquad import sine_power_integral_recursive

for alpha in (0.3, 0.5, 0.7, 1.0):
    tr = sine_power_integral_recursive(alpha * math.pi / 2, 400, s0=2.0 + 1e-12)
    s = abs(tr.even("scaled_errors"))
    print(f"alpha={alpha}: scaled error k=1 {s[1]:.2e}, k=50 {s[50]:.2e}, k=200 {s[200]:.2e}")

# %%
# The error itself obeys the predicted ratio law to rounding level.
tr = sine_power_integral_recursive(math.pi / 4, 20, s0=2.0 + 1e-12)
E = tr.even("errors")
for k in range(1, 6):
    print(f"k={k}: E_2k/E_2k-2 = {E[k] / E[k - 1]:.15f}   (2k-1)/(2k) = {(2 * k - 1) / (2 * k):.15f}")
