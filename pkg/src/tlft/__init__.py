"""Timelike Liouville correlators at b = 1/sqrt(2).

Coulomb-gas coefficients, Mellin-Barnes contour evaluation, Gaussian
regularized zero-mode limits and the Hankel-contour prescription.
"""

from .coulomb import CorrelatorCase, SphereOracleSpec, coeff, disk_moment, gamma_sum_identity, \
    green_sphere, oracle_coeff
from .correlator import QuadratureSpec, SeriesSpec, contour_correlator, f_eval, integrand_bound, \
    series_correlator
from .errors import TlftError
from .specfun import barnes_g, digamma, gamma_power, hyp2f1, log_barnes_g, log_gamma
from .zeromode import ContourPrescription, RegularizationSchedule, TestFunction, ac_zero_point, \
    closed_form_limit, delta_target, half_gaussian_moment, hankel_correlator, heaviside_pairing, \
    regularized_correlator, renormalized_limit, two_point_pairing, vertical_segment

__version__ = "0.1.0"
