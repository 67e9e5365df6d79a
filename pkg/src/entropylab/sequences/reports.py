"""Per-n convergence reports and finite-grid UI&T profiles."""
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from entropylab.density import PiecewisePdf, tv_distance
from entropylab.diagnostics import (
    Integrand,
    entropy,
    entropy_integrand_mass,
    equi_integrability_mass,
    orlicz_moment,
    tail_mass,
)
from entropylab.orlicz import OrliczFn, parse_psi, power

from .families import Family, gh_alpha

logger = logging.getLogger(__name__)

Axis = Literal["M", "R"]
MOVING_ALPHA = "alpha_n"


class GridError(ValueError):
    """Exception raised when a profile grid is empty, nonpositive or unsorted.

    Attributes:
        grid -- input grid which caused the error
    """

    def __init__(
        self,
        grid: Sequence[float],
        message: str = "Grid must be positive and strictly increasing.",
    ) -> None:
        self.grid = list(grid)
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message} Got: {self.grid}."


def check_grid(grid: Sequence[float]) -> list[float]:
    values = [float(value) for value in grid]
    if (
        not values
        or not all(math.isfinite(value) for value in values)
        or values[0] <= 0
        or not bool(np.all(np.diff(values) > 0))
    ):
        raise GridError(grid)
    return values


def map_members(
    spec: Family,
    n_values: Sequence[int],
    func: Callable[[PiecewisePdf, int], object],
    n_jobs: int = 1,
) -> list:
    """Apply ``func(f_n, n)`` to every member, preserving the order of n."""

    def _apply(n: int):
        return func(spec.generate(n), n)

    for n in n_values:
        spec.check_n(n)
    if n_jobs == 1:
        return [_apply(n) for n in n_values]
    return Parallel(n_jobs=n_jobs)(delayed(_apply)(n) for n in n_values)


@dataclass(frozen=True)
class RangeSup:
    """Supremum of a per-n diagnostic over a finite range of n.

    ``argmax`` is the first n attaining the supremum and ``at_range_end`` the
    value at the largest n of the range.
    """

    value: float
    argmax: int
    at_range_end: float

    @classmethod
    def from_values(
        cls, n_values: Sequence[int], values: Sequence[float]
    ) -> "RangeSup":
        best = int(np.argmax(values))
        return cls(
            value=float(values[best]),
            argmax=int(n_values[best]),
            at_range_end=float(values[-1]),
        )


@dataclass(frozen=True)
class DiagnosticsRow:
    """Diagnostics of one member f_n against the family limit."""

    n: int
    entropy: float
    tv_to_limit: float
    integrand_mass: float
    moments: dict[str, float] = field(default_factory=dict)

    def to_record(self) -> dict[str, float]:
        record: dict[str, float] = {
            "n": self.n,
            "entropy": self.entropy,
            "tv_to_limit": self.tv_to_limit,
            "integrand_mass": self.integrand_mass,
        }
        record.update(self.moments)
        return record


def _moment_psi(descriptor: str, n: int) -> OrliczFn:
    if descriptor == MOVING_ALPHA:
        return power(gh_alpha(n))
    return parse_psi(descriptor)


def _diagnostics_row(
    pdf: PiecewisePdf,
    n: int,
    target: PiecewisePdf,
    moment_descriptors: Sequence[str],
) -> DiagnosticsRow:
    return DiagnosticsRow(
        n=n,
        entropy=entropy(pdf),
        tv_to_limit=tv_distance(pdf, target),
        integrand_mass=entropy_integrand_mass(pdf),
        moments={
            descriptor: orlicz_moment(pdf, _moment_psi(descriptor, n))
            for descriptor in moment_descriptors
        },
    )


def convergence_report(
    spec: Family,
    n_values: Sequence[int],
    moment_descriptors: Sequence[str] = (),
    n_jobs: int = 1,
) -> list[DiagnosticsRow]:
    """Entropy, TV to the limit, integrand mass and moments for every n.

    Parameters
    ----------
    spec : Family
        Density family.
    n_values : sequence of int
        Indices to evaluate. Rows are returned sorted by n.
    moment_descriptors : sequence of str
        Ψ selectors such as ``"tlog1p"`` or ``"power:1.5"``; ``"alpha_n"``
        stands for Ψ(t) = t^α_n with the moving exponent of each row.
    n_jobs : int
        Number of joblib workers for the per-n sweep.

    Returns
    -------
    list of DiagnosticsRow
    """
    # fail early on bad selectors
    for descriptor in moment_descriptors:
        if descriptor != MOVING_ALPHA:
            parse_psi(descriptor)
    target = spec.limit()
    n_sorted = sorted(set(n_values))
    logger.info(
        "Convergence report for %s over %d values of n.",
        spec.name,
        len(n_sorted),
    )
    return map_members(
        spec,
        n_sorted,
        lambda pdf, n: _diagnostics_row(pdf, n, target, moment_descriptors),
        n_jobs=n_jobs,
    )


def report_frame(rows: Sequence[DiagnosticsRow]) -> pd.DataFrame:
    """Rows as a DataFrame with columns in declaration order."""
    return pd.DataFrame.from_records([row.to_record() for row in rows])


@dataclass(frozen=True)
class ProfileTable:
    """Sup over a range of n of a diagnostic, on a grid of M or R."""

    axis: Axis
    grid: list[float]
    values: list[float]
    argmax: list[int]
    n_range: tuple[int, int]
    integrand: Integrand = "entropy_integrand"

    @property
    def is_monotone(self) -> bool:
        """Whether the values are nonincreasing along the grid."""
        return bool(np.all(np.diff(self.values) <= 0))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                self.axis: self.grid,
                "value": self.values,
                "argmax_n": self.argmax,
            }
        )


def _profile(
    spec: Family,
    axis: Axis,
    grid: Sequence[float],
    n_range: tuple[int, int],
    diagnostic: Callable[[PiecewisePdf, float], float],
    integrand: Integrand,
    n_jobs: int,
) -> ProfileTable:
    grid_values = check_grid(grid)
    n_values = spec.members(n_range)
    per_member = map_members(
        spec,
        n_values,
        lambda pdf, _: [diagnostic(pdf, point) for point in grid_values],
        n_jobs=n_jobs,
    )
    table = np.asarray(per_member, dtype=float)
    sups = [
        RangeSup.from_values(n_values, table[:, column])
        for column in range(len(grid_values))
    ]
    return ProfileTable(
        axis=axis,
        grid=grid_values,
        values=[sup.value for sup in sups],
        argmax=[sup.argmax for sup in sups],
        n_range=(n_range[0], n_range[1]),
        integrand=integrand,
    )


def ui_profile(
    spec: Family,
    M_grid: Sequence[float],
    n_range: tuple[int, int],
    n_jobs: int = 1,
) -> ProfileTable:
    """``sup_n ∫_{g_n > M} g_n`` for every M of the grid.

    Raises:
        GridError: ``M_grid`` is not positive and strictly increasing.
        RangeError: ``n_range`` leaves the family's range.
    """
    return _profile(
        spec,
        "M",
        M_grid,
        n_range,
        equi_integrability_mass,
        "entropy_integrand",
        n_jobs,
    )


def tightness_profile(
    spec: Family,
    R_grid: Sequence[float],
    n_range: tuple[int, int],
    integrand: Integrand = "entropy_integrand",
    n_jobs: int = 1,
) -> ProfileTable:
    """``sup_n`` of the mass of ``integrand`` outside ``[-R, R]`` per R.

    Raises:
        GridError: ``R_grid`` is not positive and strictly increasing.
        RangeError: ``n_range`` leaves the family's range.
    """
    return _profile(
        spec,
        "R",
        R_grid,
        n_range,
        lambda pdf, R: tail_mass(pdf, R, integrand),
        integrand,
        n_jobs,
    )


def integrand_l1_profile(
    spec: Family, n_range: tuple[int, int], n_jobs: int = 1
) -> RangeSup:
    """``sup_n ∫ g_n`` over the range (uniform L1 bound)."""
    n_values = spec.members(n_range)
    values = map_members(
        spec, n_values, lambda pdf, _: entropy_integrand_mass(pdf), n_jobs
    )
    return RangeSup.from_values(n_values, values)
