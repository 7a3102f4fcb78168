"""Random affine iterations whose limits are beta and gamma laws.

Forward chains, backward nested intervals, gamma-side chains and products of
2x2 stochastic matrices driven by i.i.d. pairs (A, B), a catalog of pairs with
known beta fixed points, and statistical checks of the limit laws.
"""

from ._core import COMPILED
from .ifs import (AffineState, ConvergenceError, DriftError, MuSampler, PreconditionError,
                  SchemeClass, StochMat2, backward_nest, backward_samples, forward_run,
                  forward_samples, gamma_forward_run, gamma_forward_samples, left_product_n,
                  left_product_run, left_product_samples)
from .identities import check_identity, run_suite
from .models import CATALOG, ModelCase, ParameterError, build_case, perpetuity_form, predicted_limit
from .rngdist import (Bernoulli, Beta, DistSpec, Gamma, PointMass, StreamKey, TentPower, Uniform,
                      draw, sample)
from .specfun import hyp2f1, log_gamma, reg_inc_beta, reg_inc_gamma
from .stats import (CfReport, KsReport, beta_moments, empirical_cf_compare, ingest, ks_one_sample,
                    ks_two_sample)

__version__ = "0.1.0"
