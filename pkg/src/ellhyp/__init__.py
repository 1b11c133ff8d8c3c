"""Numerical toolkit for elliptic hypergeometric functions and identities."""

from .numerics import (
    CheckResult,
    DegenerateError,
    DomainError,
    EllipticContext,
    EllipticError,
    PoleError,
    QuadratureStall,
    relative_residual,
    sample_annulus,
    trapezoid_contour,
)
from .theta import (
    qpochhammer_inf,
    quasi_shift,
    theta,
    theta_multi,
    theta_pm,
    theta_ratio,
    theta_scaled,
    theta_series,
)
from .toolkit import efac, efac_multi, efac_ratio
from .series import SeriesSpec, bailey_transform, e_sum, frenkel_turaev, v_sum
from .biorthogonal import BiorthogonalFamily, r_fn
from .gamma import egamma
from .beta_integral import IntegralSpec, spiridonov_eval
from .sos import R, W, FusedWeightSpec, fused_weight
from .suites import SUITES, run_suite

__version__ = "0.1.0"
