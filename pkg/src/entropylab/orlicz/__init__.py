"""Orlicz test functions Ψ, φ(T) profiles and superlinearity evidence."""

from .functions import (
    KINDS,
    DomainError,
    OrliczFn,
    PsiNotFoundError,
    SuperlinearityReport,
    log_ratio_at,
    parse_psi,
    phi,
    power,
    psi_eval,
    psi_log_eval,
    superlinearity_report,
    threshold_t0,
)
