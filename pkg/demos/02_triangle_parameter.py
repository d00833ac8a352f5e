"""
Where the IRS sits: the triangle parameter
==========================================

``Delta = (R0 l0 / (R1 R2))**eta`` compares the direct path with the two IRS
hops.  Two placements are built in: an IRS at fixed distance ``r2`` from
the UE in a random direction, and an IRS equidistant from BS and UE.
"""

import math

import numpy as np

from irs_netgeo import NetworkParams
from irs_netgeo.geometry import (model1_cdf_delta, model1_delta_quantile, model1_R1,
                                 model2_delta)
from irs_netgeo.sampling import make_rng, sample_R0

p = NetworkParams()
r2 = p.default_r2
print(f"lambda={p.lam:g} /m^2, mean serving distance {p.mean_R0:.1f} m, r2={r2:.2f} m")

# Random direction: the CDF needs one integral over the serving distance.
for q_ in (0.05, 0.25, 0.5, 0.75, 0.95):
    print(f"  {q_:4.0%} quantile of Delta: {model1_delta_quantile(q_):.3e}")
mass = model1_cdf_delta(1.6e-3) - model1_cdf_delta(1.0e-3)
print(f"  P(1e-3 <= Delta <= 1.6e-3) = {mass:.3f}")

# Sampling the geometry directly agrees with the integral.
rng = make_rng(5)
R0 = sample_R0(p.lam, p.q, 200_000, rng)
delta = (R0 / (model1_R1(R0, r2, 2 * math.pi * rng.random(R0.size)) * r2)) ** 4
for x in (1e-3, 1.3e-3, 2e-3):
    print(f"  P(Delta <= {x:g}): sampled {np.mean(delta <= x):.4f}, "
          f"integral {model1_cdf_delta(x):.4f}")

# Equidistant placement gives a deterministic Delta that is tiny at l0=1
# and grows as l0**4.
for l0 in (1.0, 20.0):
    print(f"equidistant, l0={l0:g}: Delta = {model2_delta(p.lam, p.q, l0):.3e}")
