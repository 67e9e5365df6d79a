"""Piecewise-constant probability densities stored in log space."""
import bisect
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

DEFAULT_MASS_TOLERANCE = 1e-9
# relative to max(1, |coordinate|)
GAP_TOLERANCE = 1e-12


def safe_exp(value: float) -> float:
    """Return exp(value), saturating to infinity instead of raising."""
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class Piece:
    """Constant piece on ``[start, start + width)``.

    ``log_length`` and ``log_value`` are natural logarithms of the width and
    of the density value; ``log_value == -inf`` encodes the value 0.
    """

    start: float
    log_length: float
    log_value: float

    @property
    def width(self) -> float:
        return safe_exp(self.log_length)

    @property
    def value(self) -> float:
        return safe_exp(self.log_value)

    @property
    def end(self) -> float:
        return self.start + self.width

    @property
    def log_mass(self) -> float:
        return self.log_value + self.log_length

    @property
    def is_zero(self) -> bool:
        return self.log_value == -math.inf


@dataclass(frozen=True)
class PiecewisePdf:
    """Validated 1-D piecewise-constant probability density.

    Construct through :func:`make_pdf`, which sorts and validates the pieces.
    """

    pieces: tuple[Piece, ...]
    mass_tolerance: float = DEFAULT_MASS_TOLERANCE

    def __post_init__(self) -> None:
        _validate(self.pieces, self.mass_tolerance)
        # cached lookup table for evaluate()
        object.__setattr__(
            self, "_starts", tuple(piece.start for piece in self.pieces)
        )

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    @property
    def support(self) -> tuple[float, float]:
        """Smallest interval containing all pieces with positive value."""
        nonzero = [piece for piece in self.pieces if not piece.is_zero]
        return nonzero[0].start, max(piece.end for piece in nonzero)


class DensityError(Exception):
    """Base class for invalid piecewise densities.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, message: str = "Invalid piecewise density.") -> None:
        self.message = message
        super().__init__(self.message)


class OverlapError(DensityError):
    """Exception raised when two pieces overlap beyond the gap tolerance.

    Attributes:
        left -- piece that ends too late
        right -- following piece
    """

    def __init__(
        self,
        left: Piece,
        right: Piece,
        message: str = "Pieces overlap.",
    ) -> None:
        self.left = left
        self.right = right
        super().__init__(message)

    def __str__(self) -> str:
        return "\n".join(
            (
                self.message,
                f"Left piece ends at {self.left.end!r}: {self.left}.",
                f"Right piece starts at {self.right.start!r}: {self.right}.",
            )
        )


class MassError(DensityError):
    """Exception raised when the total mass is not 1 within tolerance.

    Attributes:
        total -- computed total mass
        tolerance -- allowed deviation from 1
    """

    def __init__(
        self,
        total: float,
        tolerance: float,
        message: str = "Total mass of density is not 1.",
    ) -> None:
        self.total = total
        self.tolerance = tolerance
        super().__init__(message)

    def __str__(self) -> str:
        return (
            f"{self.message} Got: {self.total!r}"
            f" (tolerance: {self.tolerance!r})."
        )


class WidthError(DensityError):
    """Exception raised when a piece has no finite positive width.

    Attributes:
        piece -- offending piece
    """

    def __init__(
        self,
        piece: Piece,
        message: str = "Piece width must be finite and positive.",
    ) -> None:
        self.piece = piece
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.message} Got log_length={self.piece.log_length!r}."


class ScaleError(DensityError):
    """Exception raised for a non-positive or non-finite dilation factor."""

    def __init__(
        self,
        scale: float,
        message: str = "Dilation factor must be finite and positive.",
    ) -> None:
        self.scale = scale
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.message} Got: {self.scale!r}."


def _validate(pieces: Sequence[Piece], mass_tolerance: float) -> None:
    if not pieces:
        raise DensityError("A density needs at least one piece.")
    if not mass_tolerance > 0:
        raise DensityError(
            f"mass_tolerance must be positive. Got: {mass_tolerance!r}."
        )
    for piece in pieces:
        if not math.isfinite(piece.log_length):
            raise WidthError(piece)
        if not math.isfinite(piece.start):
            raise DensityError(f"Piece start must be finite. Got: {piece}.")
        if math.isnan(piece.log_value) or piece.log_value == math.inf:
            raise DensityError(
                f"Piece log_value must be finite or -inf. Got: {piece}."
            )
    for left, right in zip(pieces, pieces[1:]):
        tolerance = GAP_TOLERANCE * max(1.0, abs(right.start))
        if left.end > right.start + tolerance:
            raise OverlapError(left, right)
    total = mass_of(pieces)
    if not abs(total - 1.0) <= mass_tolerance:
        raise MassError(total, mass_tolerance)


def _sort_key(piece: Piece) -> tuple[float, float]:
    # pieces narrower than the coordinate resolution sort before the
    # piece that shares their start
    return piece.start, piece.end


def make_pdf(
    pieces: Iterable[Piece],
    mass_tolerance: float = DEFAULT_MASS_TOLERANCE,
) -> PiecewisePdf:
    """Sort and validate pieces into a :class:`PiecewisePdf`.

    Raises:
        OverlapError: two pieces overlap beyond the gap tolerance.
        MassError: the total mass differs from 1 by more than
            ``mass_tolerance``.
        WidthError: a piece has a NaN or infinite ``log_length``.
    """
    return PiecewisePdf(
        pieces=tuple(sorted(pieces, key=_sort_key)),
        mass_tolerance=mass_tolerance,
    )


def mass_of(pieces: Iterable[Piece]) -> float:
    """Compensated sum of piece masses; zero pieces contribute 0."""
    return math.fsum(
        safe_exp(piece.log_mass) for piece in pieces if not piece.is_zero
    )


def mass(pdf: PiecewisePdf) -> float:
    """Total mass of ``pdf``."""
    return mass_of(pdf.pieces)


def log_value_at(pdf: PiecewisePdf, x: float) -> float:
    """Log of the density value at ``x``; -inf on gaps."""
    index = bisect.bisect_right(pdf._starts, x) - 1  # type: ignore
    if index < 0:
        return -math.inf
    piece = pdf.pieces[index]
    if x < piece.end:
        return piece.log_value
    return -math.inf


def evaluate(pdf: PiecewisePdf, x: float) -> float:
    """Density value at ``x`` (pieces are left-closed, right-open)."""
    return safe_exp(log_value_at(pdf, x))


def uniform(start: float = 0.0, stop: float = 1.0) -> PiecewisePdf:
    """Uniform density on ``[start, stop)``."""
    if not stop > start:
        raise DensityError(
            f"Uniform density needs start < stop. Got: {start}, {stop}."
        )
    log_length = math.log(stop - start)
    return make_pdf([Piece(start, log_length, -log_length)])


def dilate(pdf: PiecewisePdf, a: float) -> PiecewisePdf:
    """Density of ``a * X`` for ``X ~ pdf``.

    Raises:
        ScaleError: ``a`` is not finite and positive.
    """
    if not (math.isfinite(a) and a > 0):
        raise ScaleError(a)
    log_a = math.log(a)
    return make_pdf(
        (
            Piece(
                start=piece.start * a,
                log_length=piece.log_length + log_a,
                log_value=piece.log_value - log_a,
            )
            for piece in pdf.pieces
        ),
        mass_tolerance=pdf.mass_tolerance,
    )
