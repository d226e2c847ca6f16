"""Asymptotic tetration: the beta function, its Abel corrections, and orbit dynamics."""
from .abel import (AbelResult, TauConfig, inverse_abel, locate_singularity, radius_estimate,
                   rho_step, tau_jet, tau_n)
from .beta import (FundamentalCoords, GSeries, beta_backward, beta_compose, beta_eval,
                   beta_jet, beta_series, default_series, g_coefficients, to_fundamental)
from .composer import CompositionResult, CompositionTerm, inner_compose, tail_summability
from .core import (NonConvergent, Overflow, Params, PoleHit, Sentinel, exp_b, is_sentinel,
                   log1p_b, log_b)
from .dynamics import (Classification, ClassifyConfig, FixedPointData, KoenigsSeries,
                       ThetaValue, Verdict, a_mu_estimate, abel_regular, classify_point,
                       koenigs_series, omega_fixed_point, regular_s0, regular_tet,
                       residue_check, theta_map)
from .jets import Jet
from .render import GridSpec, PixelMap, julia_mask, phase_plot

__all__ = [name for name in dir() if not name.startswith("_")]
