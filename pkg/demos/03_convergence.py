"""
Convergence on equispaced, perturbed and Halton nodes
=====================================================

With the degree tied to the grid (``n = m/2``) and the map parameter chosen
as ``alpha_n = 1 - 2|ln eps| / (n pi)``, the least-squares rule converges on
the three benchmark integrands. The same sweep is available from the command
line::

    mappedquad converge --function f1 --strategy dynlog:eps=1e-12,ratio=0.5
"""

from mappedquad import get_test_function, integrate, ktl_rule, make_nodes, parse_strategy, relative_error, resolve

spec = parse_strategy("dynlog:eps=1e-12,ratio=0.5")
families = [("closed", 0), ("perturbed", 0), ("halton", 0)]

for fid in ("f1", "f2", "f3"):
    tf = get_test_function(fid)
    print(f"\n{fid} = {tf.description}, reference {tf.reference_integral:.16f} ({tf.reference_source})")
    print("    m    n   alpha   " + "".join(f"{name:>12s}" for name, _ in families))
    for m in (50, 100, 200, 300, 400, 500):
        alpha, n = resolve(spec, m)
        errs = []
        for family, seed in families:
            rule = ktl_rule(alpha, make_nodes(family, m, seed=seed), n)
            errs.append(relative_error(integrate(rule, tf), tf.reference_integral))
        print(f"{m:5d} {n:4d}  {alpha.alpha:.4f}  " + "".join(f"{e:12.2e}" for e in errs))

# %%
# The Halton column lags behind: the first m+1 van der Corput points never
# reach x = 1, and the fit has to extrapolate over the last gap.
h = make_nodes("halton", 100).nodes
print(f"\nlargest Halton node for m=100: {h[-1]:.5f} (gap to 1: {1 - h[-1]:.3f}, spacing ~{2 / 100:.3f})")
