"""Wigner functions, Wigner norms and mana of random qudit states."""

from .algebra import InvalidDimensionError, phase_point_op, phase_point_ops, verify_algebra
from .ensembles import EnsembleSpec, SeededStream, batch_statistics, sample, sample_haar_pure
from .predictions import (
    ExactMixedParams,
    GaussianParams,
    exact_mixed_norm,
    exact_pure_norm,
    gaussian_variance,
    gaussian_wigner_norm,
    mana_quick_estimate,
)
from .wigner import StateError, WignerFunction, mana, wigner_fft, wigner_norm, wigner_pure, wigner_rho

__version__ = "0.1.0"
