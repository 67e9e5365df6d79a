"""Self-checking reproductions of the convergence counterexamples.

Every demo builds a table over its n values and compares each column against
a closed form. A demo passes when every check passes.
"""
import logging
import math
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import pandas as pd

from entropylab.diagnostics import (
    abs_moment,
    orlicz_contributions,
    ratio_sup,
    sup_density,
    tail_mass,
)
from entropylab.orlicz import parse_psi, power
from entropylab.sequences import (
    MOVING_ALPHA,
    Family,
    FamilyNotFoundError,
    convergence_report,
    get_family,
    gh_alpha,
    map_members,
)

logger = logging.getLogger(__name__)

CLOSED_FORM_TOLERANCE = 1e-10
TAIL_RADIUS = 10.0


def _log_space_tolerance(n: int) -> float:
    """Closed-form tolerance for quantities built from logs of size ~n."""
    return CLOSED_FORM_TOLERANCE + 8.0 * n * sys.float_info.epsilon


@dataclass(frozen=True)
class Check:
    """One closed-form assertion of a demo."""

    claim: str
    n: int | None
    expected: float
    computed: float
    passed: bool

    def __str__(self) -> str:
        where = "" if self.n is None else f" (n={self.n})"
        return (
            f"{self.claim}{where}: expected {self.expected!r},"
            f" computed {self.computed!r}"
        )


def close_to(
    claim: str, n: int, expected: float, computed: float, tolerance: float
) -> Check:
    return Check(
        claim, n, expected, computed, abs(computed - expected) <= tolerance
    )


def at_most(claim: str, n: int, bound: float, computed: float) -> Check:
    return Check(claim, n, bound, computed, computed <= bound)


def increasing(
    claim: str, n_values: Sequence[int], values: Sequence[float]
) -> list[Check]:
    """Checks that ``values`` grow strictly from one n to the next."""
    return [
        Check(claim, n, previous, value, value > previous)
        for n, previous, value in zip(n_values[1:], values, values[1:])
    ]


@dataclass(frozen=True)
class DemoResult:
    """Table, summary and closed-form checks of one demo run."""

    name: str
    table: pd.DataFrame
    summary: str
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [check for check in self.checks if not check.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def _report_columns(
    spec: Family,
    n_values: Sequence[int],
    moments: dict[str, str],
    n_jobs: int,
) -> pd.DataFrame:
    """Entropy, TV and the requested moments, renamed to demo columns."""
    rows = convergence_report(spec, n_values, list(moments), n_jobs=n_jobs)
    frame = pd.DataFrame(
        {
            "n": [row.n for row in rows],
            "entropy": [row.entropy for row in rows],
            "tv": [row.tv_to_limit for row in rows],
        }
    )
    for descriptor, column in moments.items():
        frame[column] = [row.moments[descriptor] for row in rows]
    return frame


def gh_counterexample(
    n_values: Sequence[int] = (10, 100, 1000), n_jobs: int = 1
) -> DemoResult:
    """Bounded moving-exponent moments while H(f_n) -> -1 and H(f) = 0."""
    spec = get_family("gh-counterexample")
    frame = _report_columns(
        spec,
        n_values,
        {MOVING_ALPHA: "alpha_n_moment", "power:2": "alpha2_moment"},
        n_jobs,
    )
    spike_terms = map_members(
        spec,
        list(frame["n"]),
        lambda pdf, n: orlicz_contributions(pdf, power(gh_alpha(n)))[0],
        n_jobs=n_jobs,
    )
    checks = []
    for row, spike in zip(frame.itertuples(index=False), spike_terms):
        n = int(row.n)
        tolerance = _log_space_tolerance(n)
        log_delta = -n - math.log(n)
        log_c = math.log1p(-1.0 / n) - math.log1p(-math.exp(log_delta))
        background = -math.exp(log_c) * log_c * -math.expm1(log_delta)
        checks += [
            close_to(
                "entropy = -1 - c log(c) (1 - δ)",
                n,
                -1.0 + background,
                row.entropy,
                tolerance,
            ),
            close_to(
                "spike α_n-moment = e", n, math.e, spike, tolerance
            ),
            at_most("α_n-moment <= e + 1", n, math.e + 1, row.alpha_n_moment),
            close_to(
                "TV = 2/n - 2δ",
                n,
                2.0 / n - 2.0 * math.exp(log_delta),
                row.tv,
                CLOSED_FORM_TOLERANCE,
            ),
        ]
    checks += increasing(
        "α=2 moment increasing", list(frame["n"]), list(frame.alpha2_moment)
    )
    summary = (
        "entropy column -> -1 while H(f) = 0; alpha_n_moment column stays"
        " <= e + 1; alpha2_moment column grows like n"
    )
    return DemoResult("gh-counterexample", frame, summary, checks)


def converse_fails(
    n_values: Sequence[int] = (11, 50, 200), n_jobs: int = 1
) -> DemoResult:
    """Entropy converges although the integrand mass escapes to infinity."""
    spec = get_family("converse-fails")
    frame = _report_columns(spec, n_values, {}, n_jobs)
    tails = map_members(
        spec,
        list(frame["n"]),
        lambda pdf, _: (
            tail_mass(pdf, TAIL_RADIUS, "entropy_integrand"),
            tail_mass(pdf, TAIL_RADIUS, "density"),
        ),
        n_jobs=n_jobs,
    )
    frame["tail_entropy_R10"] = [tail[0] for tail in tails]
    frame["tail_density_R10"] = [tail[1] for tail in tails]
    checks = []
    for row in frame.itertuples(index=False):
        n = int(row.n)
        background = 1.0 - 2.0 / n
        checks += [
            close_to(
                "entropy = -(1 - 2/n) log(1 - 2/n)",
                n,
                -background * math.log1p(-2.0 / n),
                row.entropy,
                _log_space_tolerance(n),
            ),
            close_to(
                "TV = 4/n", n, 4.0 / n, row.tv, CLOSED_FORM_TOLERANCE
            ),
        ]
        if n > TAIL_RADIUS:
            checks.append(
                close_to(
                    "entropy-integrand mass outside [-10, 10] = 2",
                    n,
                    2.0,
                    row.tail_entropy_R10,
                    _log_space_tolerance(n),
                )
            )
    summary = (
        "entropy column -> 0 = H(f) because the spikes cancel;"
        " tail_entropy_R10 column stays at 2, so tightness fails"
    )
    return DemoResult("converse-fails", frame, summary, checks)


def orlicz_spike(
    n_values: Sequence[int] = (10, 100, 1000), n_jobs: int = 1
) -> DemoResult:
    """Bounded t log(1 + t) moment while every fixed α-moment diverges."""
    spec = get_family("orlicz-spike")
    frame = _report_columns(
        spec,
        n_values,
        {"tlog1p": "tlog1p_moment", "power:1.5": "power1.5_moment"},
        n_jobs,
    )
    spike_terms = map_members(
        spec,
        list(frame["n"]),
        lambda pdf, _: orlicz_contributions(pdf, parse_psi("tlog1p"))[0],
        n_jobs=n_jobs,
    )
    checks = []
    for row, spike in zip(frame.itertuples(index=False), spike_terms):
        n = int(row.n)
        checks += [
            close_to(
                "spike t log(1 + t) moment = 1",
                n,
                1.0,
                spike,
                _log_space_tolerance(n),
            ),
            at_most("t log(1 + t) moment <= 1.1", n, 1.1, row.tlog1p_moment),
            at_most(
                "|entropy| <= 1/log(1 + n) + 0.05",
                n,
                1.0 / math.log1p(n) + 0.05,
                abs(row.entropy),
            ),
        ]
    checks += increasing(
        "α=1.5 moment increasing",
        list(frame["n"]),
        list(frame["power1.5_moment"]),
    )
    summary = (
        "tlog1p_moment column stays near 1 (Orlicz bound holds);"
        " power1.5_moment column grows without bound"
    )
    return DemoResult("orlicz-spike", frame, summary, checks)


def bounded_ratio(
    n_values: Sequence[int] = (2, 10, 100, 1000), n_jobs: int = 1
) -> DemoResult:
    """Density ratio f_n / f <= 1 + 1/n forces entropy convergence."""
    spec = get_family("bounded-ratio")
    target = spec.limit()
    frame = _report_columns(spec, n_values, {}, n_jobs)
    frame["ratio"] = map_members(
        spec,
        list(frame["n"]),
        lambda pdf, _: ratio_sup(pdf, target),
        n_jobs=n_jobs,
    )
    checks = []
    for row in frame.itertuples(index=False):
        n = int(row.n)
        high, low = 1.0 + 1.0 / n, 1.0 - 1.0 / n
        expected_entropy = -0.5 * (
            high * math.log1p(1.0 / n) + low * math.log1p(-1.0 / n)
        )
        checks += [
            close_to("ratio = 1 + 1/n", n, high, row.ratio, 1e-12),
            close_to(
                "entropy closed form",
                n,
                expected_entropy,
                row.entropy,
                CLOSED_FORM_TOLERANCE,
            ),
            close_to("TV = 1/n", n, 1.0 / n, row.tv, CLOSED_FORM_TOLERANCE),
        ]
    summary = (
        "ratio column <= 2 (bounded ratio holds); entropy column -> 0 = H(f)"
    )
    return DemoResult("bounded-ratio", frame, summary, checks)


def shrinking_uniform(
    n_values: Sequence[int] = (2, 4, 8), n_jobs: int = 1
) -> DemoResult:
    """Bounded density plus a bounded second moment force convergence."""
    spec = get_family("shrinking-uniform")
    frame = _report_columns(spec, n_values, {}, n_jobs)
    extras = map_members(
        spec,
        list(frame["n"]),
        lambda pdf, _: (sup_density(pdf), abs_moment(pdf, 2.0)),
        n_jobs=n_jobs,
    )
    frame["sup_density"] = [extra[0] for extra in extras]
    frame["abs_moment_2"] = [extra[1] for extra in extras]
    checks = []
    for row in frame.itertuples(index=False):
        n = int(row.n)
        width = 1.0 + 1.0 / n
        checks += [
            close_to(
                "entropy = log(1 + 1/n)",
                n,
                math.log1p(1.0 / n),
                row.entropy,
                1e-12,
            ),
            close_to(
                "TV = 2/(n + 1)",
                n,
                2.0 / (n + 1),
                row.tv,
                CLOSED_FORM_TOLERANCE,
            ),
            at_most("sup density <= 1", n, 1.0, row.sup_density),
            close_to(
                "β=2 moment = (1 + 1/n)^2 / 3",
                n,
                width**2 / 3.0,
                row.abs_moment_2,
                1e-12,
            ),
        ]
    summary = (
        "sup_density column <= 1 and abs_moment_2 column bounded;"
        " entropy column -> 0 = H(f)"
    )
    return DemoResult("shrinking-uniform", frame, summary, checks)


DEMOS: dict[str, Callable[..., DemoResult]] = {
    "gh-counterexample": gh_counterexample,
    "converse-fails": converse_fails,
    "orlicz-spike": orlicz_spike,
    "bounded-ratio": bounded_ratio,
    "shrinking-uniform": shrinking_uniform,
}


def run_demo(
    name: str, n_values: Sequence[int] | None = None, n_jobs: int = 1
) -> DemoResult:
    """Run the demo registered under ``name`` and log its outcome.

    Parameters
    ----------
    name : str
        Allowed values: keys of ``DEMOS``.
    n_values : sequence of int | None
        Indices to evaluate; each demo has its own default.
    n_jobs : int
        Number of joblib workers for the per-n sweeps.

    Returns
    -------
    DemoResult
    """
    key = name.lower()
    if key not in DEMOS:
        raise FamilyNotFoundError(name, DEMOS)
    if n_values is None:
        result = DEMOS[key](n_jobs=n_jobs)
    else:
        result = DEMOS[key](n_values=n_values, n_jobs=n_jobs)
    logger.info("%s: %s", result.name, result.summary)
    for failure in result.failures:
        logger.error("Check failed. %s", failure)
    return result
