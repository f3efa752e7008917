"""
Sign and size of the weights
============================

Negative weights inflate the conditioning functional ``sum |w_i|``. On 141
equispaced nodes the interpolatory rule needs alpha very close to 1 to keep
all weights positive, while the least-squares (KTL) rule with a modest degree
is positive for every alpha.
"""

from mappedquad import equispaced_closed, kti_rule, ktl_rule, weight_diagnostics

nodes = equispaced_closed(140)

print(" alpha   KTI: negatives  min weight   sum|w|     KTL n=12: negatives  sum|w|")
for alpha in (0.5, 0.9, 0.96, 0.98, 0.99, 1.0):
    try:
        d = weight_diagnostics(kti_rule(alpha, nodes))
        kti = f"{d.num_negative:14d}  {d.min_weight:11.3e}  {d.sum_abs_weights:9.3e}"
    except ArithmeticError as e:
        # small alpha: the 141x141 system is numerically singular
        kti = f"{'refused: ' + type(e).__name__:>36s}"
    dl = weight_diagnostics(ktl_rule(alpha, nodes, 12))
    print(f"{alpha:6.2f}  {kti}     {dl.num_negative:9d}         {dl.sum_abs_weights:.6f}")

# %%
# Halving the degree already helps a lot at moderate alpha.
for alpha in (0.5, 0.9):
    d = weight_diagnostics(ktl_rule(alpha, nodes, 70))
    print(f"KTL n=70 alpha={alpha}: {d.num_negative} negative weights, sum|w| = {d.sum_abs_weights:.3e}")

# %%
# Without the map (alpha = 0) the interpolatory weights are the Newton-Cotes
# weights, whose absolute sum grows exponentially with m.
for m in (10, 20, 30):
    d = weight_diagnostics(kti_rule(0.0, equispaced_closed(m)))
    print(f"Newton-Cotes m={m}: sum|w| = {d.sum_abs_weights:.3e}")
