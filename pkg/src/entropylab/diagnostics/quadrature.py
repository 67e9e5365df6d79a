"""Adaptive quadrature, used only to cross-check the exact piecewise sums."""
import logging
from collections.abc import Callable, Sequence

import scipy.integrate
import scipy.special

logger = logging.getLogger(__name__)

MAX_INTERVALS = 1_000_000
MASS_TOLERANCE = 1e-6


class NonNormalizedError(ValueError):
    """Exception raised when a density does not integrate to 1.

    Attributes:
        total -- mass found by quadrature
    """

    def __init__(
        self,
        total: float,
        message: str = "Density does not integrate to 1.",
    ) -> None:
        self.total = total
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return (
            f"{self.message} Got mass: {self.total!r}"
            f" (tolerance: {MASS_TOLERANCE})."
        )


class ConvergenceError(RuntimeError):
    """Exception raised when the error target is not met within budget.

    Attributes:
        error -- error estimate when the budget ran out
        intervals -- number of subintervals used
    """

    def __init__(
        self,
        error: float,
        intervals: int,
        message: str = "Quadrature did not reach the error target.",
    ) -> None:
        self.error = error
        self.intervals = intervals
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return (
            f"{self.message} Error estimate {self.error!r} after"
            f" {self.intervals} subintervals."
        )


def integrate_adaptive(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_intervals: int = MAX_INTERVALS,
    points: Sequence[float] | None = None,
) -> tuple[float, float]:
    """Globally adaptive quadrature of ``func`` over ``[a, b]``.

    Wraps :func:`scipy.integrate.quad` with an absolute error target only.
    Subintervals are bisected until the summed error estimate is at most
    ``tol``. Known discontinuities of ``func`` go into ``points``.

    Returns:
        Tuple of (integral, error estimate).

    Raises:
        ConvergenceError: ``max_intervals`` subintervals did not reach
            ``tol``, or the integrand defeated the error estimate.
    """
    if not tol > 0:
        raise ValueError(f"`tol` must be positive. Got: {tol}.")
    if not b > a:
        raise ValueError(f"Need a < b. Got: a={a}, b={b}.")
    if max_intervals < 1:
        raise ValueError(
            f"`max_intervals` must be positive. Got: {max_intervals}."
        )
    inner = sorted({point for point in points or () if a < point < b})
    value, error, info, *problem = scipy.integrate.quad(
        func,
        a,
        b,
        epsabs=tol,
        epsrel=0.0,
        limit=max_intervals,
        points=inner or None,
        full_output=True,
    )
    intervals = int(info["last"])
    if problem:
        raise ConvergenceError(
            error,
            intervals,
            message=f"Quadrature did not reach the error target: {problem[0]}",
        )
    logger.debug("Quadrature used %d subintervals.", intervals)
    return float(value), float(error)


def entropy_quadrature(
    density: Callable[[float], float],
    support: tuple[float, float],
    tol: float = 1e-10,
    max_intervals: int = MAX_INTERVALS,
    points: Sequence[float] | None = None,
) -> float:
    """Entropy ``-∫ f log f`` of a density by adaptive quadrature.

    The mass of ``density`` over ``support`` is checked with the same
    quadrature first. ``points`` lists jumps of ``density`` inside the
    support, such as the breakpoints of a piecewise-constant density.

    Raises:
        NonNormalizedError: the mass differs from 1 by more than 1e-6.
        ConvergenceError: the error target was not met within budget.
    """
    a, b = support
    total, _ = integrate_adaptive(density, a, b, tol, max_intervals, points)
    if not abs(total - 1.0) <= MASS_TOLERANCE:
        raise NonNormalizedError(total)

    def integrand(x: float) -> float:
        # entr(0) = 0 encodes 0 log 0 = 0
        return float(scipy.special.entr(density(x)))

    value, _ = integrate_adaptive(integrand, a, b, tol, max_intervals, points)
    return value
