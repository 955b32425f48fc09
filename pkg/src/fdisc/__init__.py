"""Fourier Discrepancy between discrete probability measures on a uniform grid."""

from .bounds import (
    DipoleDecomposition,
    TightBoundReport,
    conjecture_scan,
    decompose_null_sum,
    dipole_discrepancy,
    fourier_from_coefficients,
    g_function,
    lower_tight_bound,
    random_bound_audit,
    spectral_coefficients,
    upper_tight_bound,
)
from .discrepancy import (
    DiscrepancyReport,
    compare_all,
    delta_curve,
    fourier_discrepancy,
    fourier_discrepancy_delta,
    kullback_leibler,
    total_variation,
    total_variation_delta,
    wasserstein1,
)
from .errors import FdiscError
from .loss import fit, loss_gradient, loss_hessian, loss_value, project_simplex
from .measures import (
    DipoleMeasure,
    NullSumMeasure,
    ProbabilityMeasure,
    diff,
    dirac,
    jordan_split,
    lift_to_pair,
    new_probability,
    random_probability,
)
from .spectral import apply_h, circulant_kernel, dft, eigenvalues_h, idft, weight_b, weight_beta
from .stats import NoiseModel, log_likelihood, mle_demo, sample_noise

__version__ = "0.1.0"
