"""Exact functionals of piecewise densities and a quadrature cross-check."""

from .entropy import (
    EntropyParts,
    entropy,
    entropy_contributions,
    entropy_integrand_mass,
    entropy_parts,
    integrate_pieces,
    log_abs,
    piece_terms,
)
from .integrability import (
    INTEGRANDS,
    Integrand,
    equi_integrability_mass,
    information_tail,
    log_threshold_mass,
    support_extent,
    tail_mass,
)
from .moments import (
    abs_moment,
    alpha_moment,
    log_sup_density,
    orlicz_contributions,
    orlicz_moment,
    ratio_sup,
    sup_density,
)
from .quadrature import (
    ConvergenceError,
    NonNormalizedError,
    entropy_quadrature,
    integrate_adaptive,
)
