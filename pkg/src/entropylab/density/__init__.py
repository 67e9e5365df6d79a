"""Piecewise-constant densities: construction, refinement and distances."""

from .core import (
    DEFAULT_MASS_TOLERANCE,
    DensityError,
    MassError,
    OverlapError,
    Piece,
    PiecewisePdf,
    ScaleError,
    WidthError,
    dilate,
    evaluate,
    log_value_at,
    make_pdf,
    mass,
    mass_of,
    safe_exp,
    uniform,
)
from .refine import overlap_mass, refine, tv_distance
