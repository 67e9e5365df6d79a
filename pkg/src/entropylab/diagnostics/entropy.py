"""Differential entropy and entropy-integrand functionals.

Every functional is a closed-form sum over pieces of
``value * width * factor(log value)``. The sum is formed as
``exp(log_value + log_length + log factor)`` so that spikes of height e^n and
width e^-n stay representable. Pieces with value 0 are skipped, which is the
convention 0 log 0 = 0.
"""
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from entropylab.density import Piece, PiecewisePdf, safe_exp


def log_abs(value: float) -> float:
    """log|value|, -inf at 0."""
    if value == 0:
        return -math.inf
    return math.log(abs(value))


def piece_terms(
    pieces: Iterable[Piece],
    log_factor: Callable[[float], float],
    select: Callable[[Piece], bool] | None = None,
) -> list[float]:
    """Per-piece integrals ``value * width * exp(log_factor(log_value))``.

    Zero pieces and pieces rejected by ``select`` contribute 0.
    """
    terms = []
    for piece in pieces:
        if piece.is_zero or (select is not None and not select(piece)):
            terms.append(0.0)
            continue
        terms.append(safe_exp(piece.log_mass + log_factor(piece.log_value)))
    return terms


def integrate_pieces(
    pieces: Iterable[Piece],
    log_factor: Callable[[float], float],
    select: Callable[[Piece], bool] | None = None,
) -> float:
    """Compensated sum of :func:`piece_terms`."""
    return math.fsum(piece_terms(pieces, log_factor, select))


@dataclass(frozen=True)
class EntropyParts:
    """Split of ``h = f log f`` into ``h⁺ - h⁻``.

    ``positive_part`` integrates pieces with value > 1, ``negative_part``
    pieces with value in (0, 1); the entropy is
    ``negative_part - positive_part``.
    """

    positive_part: float
    negative_part: float

    @property
    def entropy(self) -> float:
        return self.negative_part - self.positive_part


def entropy_parts(pdf: PiecewisePdf) -> EntropyParts:
    """Integrals of the positive and negative parts of ``f log f``."""
    positive = integrate_pieces(
        pdf.pieces, log_abs, select=lambda piece: piece.log_value > 0
    )
    negative = integrate_pieces(
        pdf.pieces, log_abs, select=lambda piece: piece.log_value < 0
    )
    return EntropyParts(positive_part=positive, negative_part=negative)


def entropy(pdf: PiecewisePdf) -> float:
    """Differential entropy ``H(f) = -∫ f log f`` (natural log)."""
    return entropy_parts(pdf).entropy


def entropy_contributions(pdf: PiecewisePdf) -> list[float]:
    """Per-piece contributions ``-value log(value) width`` to H(f)."""
    return [
        -math.copysign(term, piece.log_value)
        for piece, term in zip(
            pdf.pieces, piece_terms(pdf.pieces, log_abs)
        )
    ]


def entropy_integrand_mass(pdf: PiecewisePdf) -> float:
    """``∫ f |log f|``, the L1 norm of the entropy integrand."""
    return integrate_pieces(pdf.pieces, log_abs)
