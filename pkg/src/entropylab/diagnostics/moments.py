"""Orlicz and absolute moments, density sup and density ratio."""
import math

from entropylab.density import Piece, PiecewisePdf, refine, safe_exp
from entropylab.orlicz import DomainError, OrliczFn, power, psi_log_eval

from .entropy import integrate_pieces, piece_terms


def _orlicz_log_factor(psi: OrliczFn):
    def log_factor(log_value: float) -> float:
        return psi_log_eval(psi, abs(log_value))

    return log_factor


def orlicz_moment(pdf: PiecewisePdf, psi: OrliczFn) -> float:
    """``∫ f Ψ(|log f|)``."""
    return integrate_pieces(pdf.pieces, _orlicz_log_factor(psi))


def orlicz_contributions(pdf: PiecewisePdf, psi: OrliczFn) -> list[float]:
    """Per-piece terms of :func:`orlicz_moment`, in piece order."""
    return piece_terms(pdf.pieces, _orlicz_log_factor(psi))


def alpha_moment(pdf: PiecewisePdf, alpha: float) -> float:
    """``∫ f |log f|^α`` for α > 1.

    Raises:
        DomainError: ``alpha`` is not greater than 1.
    """
    if math.isnan(alpha) or alpha <= 1:
        raise DomainError("alpha", alpha)
    return orlicz_moment(pdf, power(alpha))


def log_sup_density(pdf: PiecewisePdf) -> float:
    """Log of the largest piece value."""
    return max(piece.log_value for piece in pdf.pieces)


def sup_density(pdf: PiecewisePdf) -> float:
    """Essential supremum of ``pdf``; inf if it exceeds the float range."""
    return safe_exp(log_sup_density(pdf))


def ratio_sup(f_n: PiecewisePdf, f: PiecewisePdf) -> float:
    """Essential supremum of ``f_n / f`` over the support of ``f_n``.

    Returns inf when ``f_n`` is positive on a set where ``f`` vanishes.
    """
    pieces_n, pieces_f = refine(f_n, f)
    log_ratio = -math.inf
    for piece_n, piece_f in zip(pieces_n, pieces_f):
        if piece_n.is_zero:
            continue
        if piece_f.is_zero:
            return math.inf
        log_ratio = max(log_ratio, piece_n.log_value - piece_f.log_value)
    return safe_exp(log_ratio)


def _log_expm1(value: float) -> float:
    """log(e^value - 1) for value > 0 without overflow."""
    if value > 50.0:
        return value + math.log1p(-math.exp(-value))
    return math.log(math.expm1(value))


def _log1p_exp(value: float) -> float:
    """log(1 + e^value) without overflow."""
    if value > 0:
        return value + math.log1p(math.exp(-value))
    return math.log1p(math.exp(value))


def _log_power_integral(start: float, log_length: float, beta: float) -> float:
    """log ∫_start^{start + width} x^β dx for start >= 0."""
    exponent = beta + 1.0
    if start == 0:
        return exponent * log_length - math.log(exponent)
    log_start = math.log(start)
    log_ratio = log_length - log_start
    if log_ratio < -40.0:
        # (1 + r)^k - 1 = k r to double precision
        log_growth = math.log(exponent) + log_ratio
    else:
        log_growth = _log_expm1(exponent * _log1p_exp(log_ratio))
    return exponent * log_start - math.log(exponent) + log_growth


def _nonnegative_parts(piece: Piece) -> list[tuple[float, float]]:
    """Split a piece into (start, log_length) parts on the half-line x >= 0.

    Parts on the negative half-line are mirrored.
    """
    start, end = piece.start, piece.end
    if start >= 0:
        return [(start, piece.log_length)]
    if end <= 0:
        return [(-end, piece.log_length)]
    return [(0.0, math.log(-start)), (0.0, math.log(end))]


def abs_moment(pdf: PiecewisePdf, beta: float) -> float:
    """``∫ |x|^β f(x) dx`` via closed-form power integrals per piece.

    Raises:
        DomainError: ``beta`` is not positive.
    """
    if math.isnan(beta) or beta <= 0:
        raise DomainError("beta", beta)
    terms = []
    for piece in pdf.pieces:
        if piece.is_zero:
            continue
        for start, log_length in _nonnegative_parts(piece):
            terms.append(
                safe_exp(
                    piece.log_value
                    + _log_power_integral(start, log_length, beta)
                )
            )
    return math.fsum(terms)
