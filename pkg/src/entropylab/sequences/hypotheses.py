"""Finite-range evidence for the sufficient conditions of entropy convergence.

Each condition quantifies over all n; a verdict only states whether the sup
over the requested range of n stays below a configured bound.
"""
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from entropylab.density import PiecewisePdf, safe_exp, tv_distance
from entropylab.diagnostics import (
    abs_moment,
    alpha_moment,
    entropy,
    equi_integrability_mass,
    information_tail,
    orlicz_moment,
    ratio_sup,
    sup_density,
    support_extent,
    tail_mass,
)
from entropylab.orlicz import DomainError, parse_psi

from .families import Family, gh_alpha
from .reports import (
    RangeSup,
    integrand_l1_profile,
    map_members,
    ui_profile,
)

logger = logging.getLogger(__name__)

EVIDENCE = "finite-range"


@dataclass(frozen=True)
class CheckerSettings:
    """Bounds and thresholds used by :func:`check_hypotheses`.

    ``alphas`` and ``psis`` select the fixed-exponent and Orlicz rows;
    ``moment_bound`` bounds every moment-type sup, ``epsilon`` the UI and
    tightness masses and ``tv_tolerance`` the TV distance at the range end.
    The information tail P(|log f_n| > t) is compared with
    ``tail_scale * exp(-tail_rate * t**tail_shape)`` at every
    ``tail_levels`` t.
    """

    alphas: tuple[float, ...] = (2.0,)
    psis: tuple[str, ...] = ("tlog1p",)
    beta: float = 2.0
    moment_bound: float = 10.0
    density_bound: float = 10.0
    ratio_bound: float = 2.0
    support_bound: float = 10.0
    ui_threshold: float = 1e3
    tail_radius: float = 10.0
    epsilon: float = 0.05
    tv_tolerance: float = 0.05
    tail_levels: tuple[float, ...] = (1.0, 2.0, 5.0, 10.0, 20.0)
    tail_scale: float = 1.0
    tail_rate: float = 1.0
    tail_shape: float = 1.0

    def __post_init__(self) -> None:
        if not self.tail_levels:
            raise DomainError("tail_levels", math.nan)
        for level in self.tail_levels:
            if not level > 0:
                raise DomainError("tail level", level)
        if not self.tail_scale > 0:
            raise DomainError("tail_scale", self.tail_scale)
        if not self.tail_rate >= 0:
            raise DomainError("tail_rate", self.tail_rate)
        if not self.tail_shape > 0:
            raise DomainError("tail_shape", self.tail_shape)


@dataclass(frozen=True)
class Verdict:
    """Whether a condition held on the evaluated range of n.

    ``witness`` is the sup over the range, attained at ``witness_n``;
    ``details`` holds the sups of secondary quantities of compound
    conditions.
    """

    condition: str
    holds_on_range: bool
    witness: float
    witness_n: int
    bound: float
    sup_at_range_end: float
    details: dict[str, float] = field(default_factory=dict)
    evidence: str = EVIDENCE

    def to_dict(self) -> dict:
        return {
            "holds_on_range": self.holds_on_range,
            "witness": self.witness,
            "witness_n": self.witness_n,
            "bound": self.bound,
            "sup_at_range_end": self.sup_at_range_end,
            "details": dict(self.details),
            "evidence": self.evidence,
        }


def _verdict(
    condition: str,
    n_values: Sequence[int],
    values: Sequence[float],
    bound: float,
) -> Verdict:
    sup = RangeSup.from_values(n_values, values)
    return Verdict(
        condition=condition,
        holds_on_range=bool(sup.value <= bound),
        witness=sup.value,
        witness_n=sup.argmax,
        bound=bound,
        sup_at_range_end=sup.at_range_end,
    )


def _suffixed(prefix: str, labels: Sequence[str]) -> list[str]:
    if len(labels) == 1:
        return [prefix]
    return [f"{prefix}:{label}" for label in labels]


def _member_stats(
    pdf: PiecewisePdf,
    n: int,
    target: PiecewisePdf,
    settings: CheckerSettings,
) -> dict[str, float]:
    stats = {
        "sup_density": sup_density(pdf),
        "abs_moment": abs_moment(pdf, settings.beta),
        "ratio": ratio_sup(pdf, target),
        "support": support_extent(pdf),
        "ui_mass": equi_integrability_mass(pdf, settings.ui_threshold),
        "tail_mass": tail_mass(pdf, settings.tail_radius),
        "tv": tv_distance(pdf, target),
    }
    for alpha in settings.alphas:
        stats[f"alpha:{alpha:g}"] = alpha_moment(pdf, alpha)
    for selector in settings.psis:
        stats[f"psi:{selector}"] = orlicz_moment(pdf, parse_psi(selector))
    for level in settings.tail_levels:
        stats[f"info:{level:g}"] = information_tail(pdf, level)
    if n >= 3:
        stats["moving_alpha"] = alpha_moment(pdf, gh_alpha(n))
    return stats


def _tail_excess(probability: float, log_envelope: float) -> float:
    """Tail probability over its envelope; 0 for an empty tail."""
    if probability == 0:
        return 0.0
    return safe_exp(math.log(probability) - log_envelope)


def _information_tail_verdict(
    n_values: Sequence[int],
    stats: Sequence[dict[str, float]],
    settings: CheckerSettings,
) -> Verdict:
    sups: dict[float, RangeSup] = {}
    for level in settings.tail_levels:
        log_envelope = (
            math.log(settings.tail_scale)
            - settings.tail_rate * level**settings.tail_shape
        )
        excess = [
            _tail_excess(row[f"info:{level:g}"], log_envelope)
            for row in stats
        ]
        sups[level] = RangeSup.from_values(n_values, excess)
    worst = max(sups, key=lambda level: sups[level].value)
    return Verdict(
        condition="information_tail",
        holds_on_range=sups[worst].value <= 1.0,
        witness=sups[worst].value,
        witness_n=sups[worst].argmax,
        bound=1.0,
        sup_at_range_end=max(sup.at_range_end for sup in sups.values()),
        details={
            "worst_t": worst,
            "scale": settings.tail_scale,
            "rate": settings.tail_rate,
            "shape": settings.tail_shape,
        },
    )


def check_hypotheses(
    spec: Family,
    n_range: tuple[int, int],
    settings: CheckerSettings | None = None,
    n_jobs: int = 1,
) -> dict[str, Verdict]:
    """Evaluate every sufficient condition over ``n_range``.

    Parameters
    ----------
    spec : Family
        Density family; its limit is the reference for ratio and TV rows.
    n_range : tuple of int
        Closed range (n_min, n_max) of members to evaluate.
    settings : CheckerSettings | None
        Bounds; defaults to ``CheckerSettings()``.
    n_jobs : int
        Number of joblib workers for the per-n sweep.

    Returns
    -------
    dict
        Condition name mapped to its :class:`Verdict`. Fixed-α and Orlicz
        rows carry a ``:ALPHA`` or ``:PSI`` suffix when several are
        requested; ``moving_alpha`` is only present when n >= 3 occurs.
        ``information_tail`` holds when the tail stays under its envelope
        at every level, so its witness is bounded by 1.
    """
    if settings is None:
        settings = CheckerSettings()
    for selector in settings.psis:
        parse_psi(selector)
    target = spec.limit()
    n_values = spec.members(n_range)
    logger.info(
        "Checking hypotheses for %s on n in [%d, %d].",
        spec.name,
        n_range[0],
        n_range[1],
    )
    stats = map_members(
        spec,
        n_values,
        lambda pdf, n: _member_stats(pdf, n, target, settings),
        n_jobs=n_jobs,
    )

    def column(key: str) -> list[float]:
        return [row[key] for row in stats]

    verdicts: dict[str, Verdict] = {}
    alpha_names = _suffixed(
        "fixed_alpha", [f"{alpha:g}" for alpha in settings.alphas]
    )
    for name, alpha in zip(alpha_names, settings.alphas):
        verdicts[name] = _verdict(
            name, n_values, column(f"alpha:{alpha:g}"), settings.moment_bound
        )
    for name, selector in zip(
        _suffixed("orlicz", settings.psis), settings.psis
    ):
        verdicts[name] = _verdict(
            name, n_values, column(f"psi:{selector}"), settings.moment_bound
        )

    moving = [n for n, row in zip(n_values, stats) if "moving_alpha" in row]
    if moving:
        verdicts["moving_alpha"] = _verdict(
            "moving_alpha",
            moving,
            [row["moving_alpha"] for row in stats if "moving_alpha" in row],
            settings.moment_bound,
        )

    density = _verdict(
        "bounded_density_moment",
        n_values,
        column("sup_density"),
        settings.density_bound,
    )
    moment = RangeSup.from_values(n_values, column("abs_moment"))
    verdicts["bounded_density_moment"] = Verdict(
        condition="bounded_density_moment",
        holds_on_range=density.holds_on_range
        and moment.value <= settings.moment_bound,
        witness=density.witness,
        witness_n=density.witness_n,
        bound=density.bound,
        sup_at_range_end=density.sup_at_range_end,
        details={
            "abs_moment": moment.value,
            "abs_moment_n": moment.argmax,
            "beta": settings.beta,
        },
    )
    verdicts["bounded_ratio"] = _verdict(
        "bounded_ratio", n_values, column("ratio"), settings.ratio_bound
    )
    verdicts["bounded_support"] = _verdict(
        "bounded_support",
        n_values,
        column("support"),
        settings.support_bound,
    )
    l1 = integrand_l1_profile(spec, n_range, n_jobs=n_jobs)
    verdicts["uniform_l1_bound"] = Verdict(
        condition="uniform_l1_bound",
        holds_on_range=l1.value <= settings.moment_bound,
        witness=l1.value,
        witness_n=l1.argmax,
        bound=settings.moment_bound,
        sup_at_range_end=l1.at_range_end,
    )
    verdicts["information_tail"] = _information_tail_verdict(
        n_values, stats, settings
    )

    tv = RangeSup.from_values(n_values, column("tv"))
    verdicts["tv_bounded_moment"] = Verdict(
        condition="tv_bounded_moment",
        holds_on_range=tv.at_range_end <= settings.tv_tolerance
        and verdicts["bounded_density_moment"].holds_on_range,
        witness=tv.at_range_end,
        witness_n=n_values[-1],
        bound=settings.tv_tolerance,
        sup_at_range_end=tv.at_range_end,
        details={
            "sup_density": density.witness,
            "abs_moment": moment.value,
        },
    )
    verdicts["entropy_integrand_ui"] = _verdict(
        "entropy_integrand_ui",
        n_values,
        column("ui_mass"),
        settings.epsilon,
    )
    verdicts["entropy_integrand_tight"] = _verdict(
        "entropy_integrand_tight",
        n_values,
        column("tail_mass"),
        settings.epsilon,
    )
    return verdicts


@dataclass(frozen=True)
class CrossCheck:
    """UI verdict and entropy-convergence verdict side by side."""

    ui_value: float
    ui_holds: bool
    entropy_gap: float
    entropy_converges: bool

    @property
    def agree(self) -> bool:
        return self.ui_holds == self.entropy_converges


def bounded_domain_crosscheck(
    spec: Family,
    M: float = 1e3,
    n_min: int = 100,
    n_max: int | None = None,
    n_entropy: int = 1000,
    epsilon: float = 0.05,
) -> CrossCheck:
    """Compare uniform integrability with entropy convergence on a grid.

    On a bounded domain the two are equivalent, so for families supported in
    [0, 1] both verdicts should agree.

    Args:
        spec: density family.
        M: threshold of the equi-integrability mass.
        n_min: first n of the UI sup.
        n_max: last n of the UI sup; defaults to ``n_entropy``.
        n_entropy: index at which ``|H(f_n) - H(f)|`` is measured.
        epsilon: bound for both the UI mass and the entropy gap.
    """
    if n_max is None:
        n_max = n_entropy
    profile = ui_profile(spec, [M], (n_min, n_max))
    gap = entropy_gap(spec, n_entropy)
    result = CrossCheck(
        ui_value=profile.values[0],
        ui_holds=profile.values[0] < epsilon,
        entropy_gap=gap,
        entropy_converges=gap < epsilon,
    )
    if not result.agree:
        logger.warning(
            "UI and entropy verdicts disagree for %s: %s.", spec.name, result
        )
    return result


def entropy_gap(spec: Family, n: int) -> float:
    """``|H(f_n) - H(f)|``."""
    return math.fabs(entropy(spec.generate(n)) - entropy(spec.limit()))
