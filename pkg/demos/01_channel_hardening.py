"""
Channel hardening of the IRS-assisted link
==========================================

The received power is ``G~ = (g0 + sqrt(Delta) * sum_i g_i1 g_i2)**2``: a direct
Nakagami link plus ``N`` cascaded two-hop links scaled by the triangle
parameter ``Delta``.  Normalising by its mean gives ``G`` with unit mean,
and as ``N * Delta`` grows the cascaded sum dominates and ``G`` hardens.
"""

import numpy as np

from irs_netgeo import FadingSpec, mean_tilde_g
from irs_netgeo.channel import approx_cdf, approx_spec, classify_regime, sample_g
from irs_netgeo.montecarlo import EmpiricalDistribution
from irs_netgeo.sampling import make_rng

# The mean amplification is closed form.  With Rayleigh fading and a
# triangle parameter typical of an IRS a few meters from the UE:
for n in (10, 20, 100):
    print(f"N={n:3d}  E[G~ | Delta=1.3e-3] = {mean_tilde_g(n, 1.3e-3):.4f}")

# The variance of G shrinks with N once N*Delta is not tiny.  Without an
# IRS it stays at 1/mu.
print("\nvar(G) by N and Delta (Rayleigh, 1e5 draws)")
print("    N " + "".join(f"{d:>10g}" for d in (0.0, 1e-4, 1e-2, 1.0)))
for n in (1, 10, 100):
    row = [sample_g(n, d, FadingSpec(), make_rng(1, n, i), size=100_000).var()
           for i, d in enumerate((0.0, 1e-4, 1e-2, 1.0))]
    print(f"{n:5d} " + "".join(f"{v:10.4f}" for v in row) + f"   N^-0.75 = {n**-0.75:.4f}")

# Each regime of N*Delta gets an Erlang approximation with shape
# round(N^0.25) ("m") or round(N^0.75) ("l"); "s" keeps the bare fading.
print("\nKolmogorov-Smirnov distance of the Erlang approximation")
for n in (10, 100):
    for nd in (1e-6, 1e-2, 10.0):
        d = nd / n
        chi = classify_regime(n, d)
        spec = approx_spec(chi, n)
        g = sample_g(n, d, FadingSpec(), make_rng(2, n, int(np.log10(nd) + 6)), size=100_000)
        ks = EmpiricalDistribution(g).ks_distance(lambda y: approx_cdf(spec, y))
        print(f"N={n:3d} N*Delta={nd:<6g} regime {chi}  {spec.kind:11s} M={spec.M}  KS={ks:.3f}")
