"""Common refinement of two densities, overlap and total variation."""
import math

from .core import Piece, PiecewisePdf, log_value_at, safe_exp


def _is_degenerate(piece: Piece) -> bool:
    """True if the piece is narrower than the coordinate resolution."""
    return piece.end == piece.start


def refine(
    f: PiecewisePdf, g: PiecewisePdf
) -> tuple[list[Piece], list[Piece]]:
    """Re-express ``f`` and ``g`` over their common breakpoints.

    Both returned lists share starts and widths piece by piece; zero pieces
    are materialized where only one density is positive. Pieces narrower than
    the coordinate resolution (``start + width == start``) keep their
    log-space width and are paired with the other density's value at their
    start.
    """
    known_lengths: dict[tuple[float, float], float] = {}
    for piece in (*g.pieces, *f.pieces):
        known_lengths[(piece.start, piece.end)] = piece.log_length

    breakpoints: set[float] = set()
    for piece in (*f.pieces, *g.pieces):
        if not _is_degenerate(piece):
            breakpoints.update((piece.start, piece.end))
    edges = sorted(breakpoints)

    rows: list[tuple[float, float, float, float]] = []
    for left, right in zip(edges, edges[1:]):
        log_f = log_value_at(f, left)
        log_g = log_value_at(g, left)
        if log_f == -math.inf and log_g == -math.inf:
            continue
        log_length = known_lengths.get((left, right))
        if log_length is None:
            log_length = math.log(right - left)
        rows.append((left, log_length, log_f, log_g))

    for piece in f.pieces:
        if _is_degenerate(piece):
            rows.append(
                (
                    piece.start,
                    piece.log_length,
                    piece.log_value,
                    log_value_at(g, piece.start),
                )
            )
    for piece in g.pieces:
        if _is_degenerate(piece):
            rows.append(
                (
                    piece.start,
                    piece.log_length,
                    log_value_at(f, piece.start),
                    piece.log_value,
                )
            )

    rows.sort(key=lambda row: (row[0], row[0] + safe_exp(row[1])))
    f_pieces = [
        Piece(start, length, log_f) for start, length, log_f, _ in rows
    ]
    g_pieces = [
        Piece(start, length, log_g) for start, length, _, log_g in rows
    ]
    return f_pieces, g_pieces


def overlap_mass(f: PiecewisePdf, g: PiecewisePdf) -> float:
    """Exact integral of ``min(f, g)``."""
    f_pieces, g_pieces = refine(f, g)
    return math.fsum(
        safe_exp(
            min(piece_f.log_value, piece_g.log_value) + piece_f.log_length
        )
        for piece_f, piece_g in zip(f_pieces, g_pieces)
    )


def _abs_difference_mass(piece_f: Piece, piece_g: Piece) -> float:
    """Integral of ``|f - g|`` over one refined piece."""
    high = max(piece_f.log_value, piece_g.log_value)
    low = min(piece_f.log_value, piece_g.log_value)
    if high == -math.inf:
        return 0.0
    return -math.expm1(low - high) * safe_exp(high + piece_f.log_length)


def tv_distance(f: PiecewisePdf, g: PiecewisePdf) -> float:
    """Exact L1 distance ``∫|f - g|``, in ``[0, 2]`` for densities."""
    f_pieces, g_pieces = refine(f, g)
    return math.fsum(
        _abs_difference_mass(piece_f, piece_g)
        for piece_f, piece_g in zip(f_pieces, g_pieces)
    )
