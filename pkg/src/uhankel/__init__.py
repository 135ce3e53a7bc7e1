"""Hankel determinants of inverse functions for the class U(lambda)."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    SearchConfig,
    Target,
    bound_h2,
    bound_h3,
    brute_force_oracle,
    maximize_h2,
    maximize_h3,
    phi1,
    phi2,
    phi2_max,
)
from .coeffs import (
    DirectCoeffs,
    InverseCoeffs,
    SchwarzCoeffs,
    UFunctionParams,
    direct_coeffs_from_params,
    inverse_coeffs_from_direct,
    inverse_coeffs_from_params,
)
from .hankel import HankelSpec, h22_inverse_reduced, h31_inverse_reduced, hankel_det
from .series import TruncatedSeries, series_compose, series_mul, series_reciprocal, series_revert
from .uclass import ClosedFormFunction, extremal, is_in_u_lambda, schwarz_feasible, schwarz_to_series, u_deviation
