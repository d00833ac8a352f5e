"""Stochastic-geometry analysis of IRS-assisted cellular downlinks.

Analytic SIR coverage, throughput and diversity for a Poisson network
whose typical link is helped by an intelligent reflecting surface,
together with a Monte Carlo simulator that checks every analytic result.
"""

__version__ = "0.1.0"

from .channel import (ApproxSpec, FadingSpec, approx_cdf, approx_spec, classify_regime,
                      mean_tilde_g, mu_fad, sample_g, sample_tilde_g)
from .errors import (ConfigError, DomainError, GeometryInfeasible, InsufficientTailMass,
                     InvalidParameterWarning, IrsNetGeoError, NonConvergence,
                     RejectionBudgetExceeded, SingularMatrix, WindowTooSmall)
from .geometry import (FixedDelta, IrsConfig, ModelI, ModelII, NoIrs, TriangleGeometry,
                       model1_cdf_delta, model1_cdf_R1_given_R0, model1_pdf_delta, model1_R1,
                       model2_delta, model2_geometry, triangle_delta)
from .interference import InterferenceLT
from .montecarlo import (EmpiricalDistribution, SimMode, SimResult, diversity_slope,
                         empirical_ccdf, estimate_diversity, simulate_sir, voronoi_typical_ue)
from .params import NetworkParams
from .sampling import (PointSet2D, RngStreamSpec, make_rng, sample_nakagami, sample_ppp_disk,
                       sample_R0, sample_Rd_given_R0)
from .sir import (SirCurve, SirQuery, ToeplitzSystem, ccdf, ccdf_erlang_toeplitz,
                  ccdf_exp_route, ccdf_no_irs, ck_coeff, db_to_linear, diversity_bound,
                  mu_tilde_g_bar, throughput, toeplitz_ccdf)
from .specfun import EvalTolerance, hyp2f1_negarg, pochhammer, reg_lower_inc_gamma
