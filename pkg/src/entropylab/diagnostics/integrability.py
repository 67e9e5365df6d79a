"""Finite-threshold and finite-window faces of uniform integrability.

The entropy integrand ``g = f |log f|`` is constant on every piece, so the
sets ``{g > M}`` and ``{|log f| > T}`` are unions of pieces and the integrals
below are exact.
"""
import math
from typing import Literal

from entropylab.density import Piece, PiecewisePdf, safe_exp
from entropylab.orlicz import DomainError

from .entropy import integrate_pieces, log_abs

Integrand = Literal["density", "entropy_integrand"]
INTEGRANDS: tuple[Integrand, ...] = ("density", "entropy_integrand")


def _no_factor(_: float) -> float:
    return 0.0


def _log_factor(integrand: Integrand):
    if integrand == "density":
        return _no_factor
    if integrand == "entropy_integrand":
        return log_abs
    raise ValueError(
        f"`integrand` must be one of {INTEGRANDS}. Got: {integrand}."
    )


def equi_integrability_mass(pdf: PiecewisePdf, M: float) -> float:
    """``∫_{g > M} g`` with ``g = f |log f|`` (strict inequality).

    Raises:
        DomainError: ``M`` is not positive.
    """
    if math.isnan(M) or M <= 0:
        raise DomainError("M", M)
    log_m = math.log(M)
    return integrate_pieces(
        pdf.pieces,
        log_abs,
        select=lambda piece: piece.log_value + log_abs(piece.log_value)
        > log_m,
    )


def log_threshold_mass(pdf: PiecewisePdf, T: float) -> float:
    """``∫_{|log f| > T} g``, the left side of the Orlicz tail bound."""
    if math.isnan(T) or T < 0:
        raise DomainError("T", T)
    return integrate_pieces(
        pdf.pieces, log_abs, select=lambda piece: abs(piece.log_value) > T
    )


def information_tail(pdf: PiecewisePdf, t: float) -> float:
    """``P(|log f(X)| > t)`` for ``X ~ pdf``."""
    if math.isnan(t) or t < 0:
        raise DomainError("t", t)
    return integrate_pieces(
        pdf.pieces, _no_factor, select=lambda piece: abs(piece.log_value) > t
    )


def _log_length_outside(piece: Piece, R: float) -> float:
    """Log of the length of ``piece`` lying in ``{|x| > R}``."""
    start, width = piece.start, piece.width
    if start >= R or piece.end <= -R:
        return piece.log_length
    outside = 0.0
    inside_right = R - start
    if inside_right < width:
        outside += width - inside_right
    if start < -R:
        outside += min(-R - start, width)
    if outside <= 0:
        return -math.inf
    return math.log(outside)


def tail_mass(
    pdf: PiecewisePdf,
    R: float,
    integrand: Integrand = "entropy_integrand",
) -> float:
    """Integral of ``f`` or ``f |log f|`` over ``{|x| > R}``.

    Pieces straddling ``±R`` are split at the window edge.

    Raises:
        DomainError: ``R`` is not positive.
    """
    if math.isnan(R) or R <= 0:
        raise DomainError("R", R)
    log_factor = _log_factor(integrand)
    terms = []
    for piece in pdf.pieces:
        if piece.is_zero:
            continue
        log_length = _log_length_outside(piece, R)
        terms.append(
            safe_exp(
                piece.log_value + log_length + log_factor(piece.log_value)
            )
        )
    return math.fsum(terms)


def support_extent(pdf: PiecewisePdf) -> float:
    """Largest ``|x|`` reached by a piece with positive value."""
    low, high = pdf.support
    return max(abs(low), abs(high))
