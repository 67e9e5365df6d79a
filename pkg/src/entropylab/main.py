"""Command line front end: ``entropy-lab demo|report|profile|check``."""
import argparse
import logging
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

import entropylab
from entropylab.diagnostics import Integrand
from entropylab.filetools import (
    FamilyFileError,
    OutputFormat,
    build_document,
    document_to_json,
    dump_family,
    emit,
    load_family,
    render_table,
)
from entropylab.orlicz import DomainError, PsiNotFoundError
from entropylab.pipelines import DEMOS, run_demo
from entropylab.sequences import (
    CheckerSettings,
    Family,
    FamilyNotFoundError,
    GridError,
    RangeError,
    check_hypotheses,
    convergence_report,
    get_family,
    log_grid,
    report_frame,
    tightness_profile,
    ui_profile,
)

logger = logging.getLogger(__name__)

SEED_VARIABLE = "ENTROPY_LAB_SEED"
COMMANDS = ("demo", "report", "profile", "check")
INTEGRAND_CHOICES: dict[str, Integrand] = {
    "density": "density",
    "entropy": "entropy_integrand",
}
USAGE_ERRORS = (
    DomainError,
    FamilyFileError,
    FamilyNotFoundError,
    GridError,
    PsiNotFoundError,
    RangeError,
)


class UsageError(ValueError):
    """Exception raised for inconsistent command line options."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


@dataclass(frozen=True)
class NSpec:
    """Explicit list of n or a closed range ``A..B``."""

    values: tuple[int, ...] = ()
    bounds: tuple[int, int] | None = None

    @classmethod
    def parse(cls, text: str) -> "NSpec":
        text = text.strip()
        try:
            if ".." in text:
                low, _, high = text.partition("..")
                bounds = (int(low), int(high))
                if bounds[0] > bounds[1]:
                    raise UsageError(f"Empty range of n: {text}.")
                return cls(bounds=bounds)
            values = tuple(int(item) for item in text.split(",") if item)
        except ValueError as error:
            if isinstance(error, UsageError):
                raise
            raise UsageError(f"Cannot parse n values: {text!r}.") from error
        if not values:
            raise UsageError("No n values given.")
        return cls(values=values)

    def as_range(self) -> tuple[int, int]:
        if self.bounds is not None:
            return self.bounds
        return min(self.values), max(self.values)

    def as_values(self) -> list[int]:
        """Explicit values, or the log grid of a range."""
        if self.bounds is not None:
            return log_grid(*self.bounds)
        return sorted(set(self.values))


@dataclass(frozen=True)
class RunConfig:
    """Validated options of one command line run."""

    command: str
    family: str | None = None
    n_spec: NSpec | None = None
    psi_list: tuple[str, ...] = ()
    alpha_list: tuple[float, ...] = ()
    grid: tuple[float, ...] = ()
    axis: str = "M"
    integrand: Integrand = "entropy_integrand"
    output_format: OutputFormat = "csv"
    output_path: Path | None = None
    dump_pdf: Path | None = None
    n_jobs: int = 1
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        default_format = "json" if args.command == "check" else "csv"
        return cls(
            command=args.command,
            family=args.family,
            n_spec=None if args.n is None else NSpec.parse(args.n),
            psi_list=tuple(_split(args.psi)),
            alpha_list=tuple(float(item) for item in _split(args.alpha)),
            grid=tuple(float(item) for item in _split(args.grid)),
            axis=args.axis,
            integrand=INTEGRAND_CHOICES[args.integrand],
            output_format=args.format or default_format,
            output_path=None if args.out is None else Path(args.out),
            dump_pdf=None if args.dump_pdf is None else Path(args.dump_pdf),
            n_jobs=args.jobs,
        )


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [item.strip() for item in text.split(",") if item.strip()]


def resolve_family(selector: str | None) -> Family:
    """Built-in family by name or ``custom:PATH`` for a JSON family file."""
    if selector is None:
        raise UsageError("--family is required for this command.")
    if selector.lower().startswith("custom:"):
        return load_family(selector.partition(":")[2])
    return get_family(selector)


def _require_n(config: RunConfig) -> NSpec:
    if config.n_spec is None:
        raise UsageError(f"--n is required for `{config.command}`.")
    return config.n_spec


def _moment_descriptors(config: RunConfig) -> list[str]:
    return list(config.psi_list) + [
        f"power:{alpha:g}" for alpha in config.alpha_list
    ]


def run_demo_command(config: RunConfig) -> int:
    if config.family is None:
        raise UsageError(
            f"--family is required for `demo`. Allowed: {tuple(DEMOS)}."
        )
    n_values = None if config.n_spec is None else config.n_spec.as_values()
    result = run_demo(config.family, n_values, n_jobs=config.n_jobs)
    emit(
        render_table(
            result.table,
            config.output_format,
            "demo",
            result.name,
            summary=result.summary,
            passed=result.passed,
        ),
        config.output_path,
    )
    return 0 if result.passed else 1


def run_report(config: RunConfig) -> int:
    spec = resolve_family(config.family)
    if config.n_spec is None:
        n_values = spec.default_n_values()
    else:
        n_values = config.n_spec.as_values()
    rows = convergence_report(
        spec, n_values, _moment_descriptors(config), n_jobs=config.n_jobs
    )
    if config.dump_pdf is not None:
        dump_family(spec, [row.n for row in rows], config.dump_pdf)
    emit(
        render_table(
            report_frame(rows), config.output_format, "report", spec.name
        ),
        config.output_path,
    )
    return 0


def run_profile(config: RunConfig) -> int:
    spec = resolve_family(config.family)
    n_range = _require_n(config).as_range()
    if config.axis == "M":
        if config.integrand != "entropy_integrand":
            raise UsageError("--axis M profiles the entropy integrand only.")
        table = ui_profile(spec, config.grid, n_range, n_jobs=config.n_jobs)
    else:
        table = tightness_profile(
            spec, config.grid, n_range, config.integrand, config.n_jobs
        )
    emit(
        render_table(
            table.to_frame(),
            config.output_format,
            "profile",
            spec.name,
            axis=table.axis,
            n_range=list(table.n_range),
            integrand=table.integrand,
        ),
        config.output_path,
    )
    return 0


def run_check(config: RunConfig) -> int:
    spec = resolve_family(config.family)
    n_range = _require_n(config).as_range()
    settings = CheckerSettings()
    if config.alpha_list:
        settings = CheckerSettings(
            alphas=config.alpha_list, psis=settings.psis
        )
    if config.psi_list:
        settings = CheckerSettings(
            alphas=settings.alphas, psis=config.psi_list
        )
    verdicts = check_hypotheses(spec, n_range, settings, config.n_jobs)
    if config.output_format == "json":
        text = document_to_json(
            build_document(
                "check",
                spec.name,
                verdicts={
                    name: verdict.to_dict()
                    for name, verdict in verdicts.items()
                },
                n_range=list(n_range),
            )
        )
    else:
        frame = pd.DataFrame.from_records(
            [
                {"condition": name} | verdict.to_dict()
                for name, verdict in verdicts.items()
            ]
        ).drop(columns="details")
        text = render_table(frame, "csv", "check", spec.name)
    emit(text, config.output_path)
    return 0


RUNNERS = {
    "demo": run_demo_command,
    "report": run_report,
    "profile": run_profile,
    "check": run_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropy-lab",
        description=(
            "Entropy convergence diagnostics for sequences of piecewise"
            " constant densities."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=entropylab.__version__
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--family",
        help="family or demo name, or custom:PATH for a JSON family file",
    )
    parser.add_argument(
        "--n", help="comma separated list of n or a closed range A..B"
    )
    parser.add_argument("--psi", help="comma separated Ψ selectors")
    parser.add_argument("--alpha", help="comma separated exponents α > 1")
    parser.add_argument("--grid", help="comma separated M or R values")
    parser.add_argument("--axis", choices=("M", "R"), default="M")
    parser.add_argument(
        "--integrand", choices=tuple(INTEGRAND_CHOICES), default="entropy"
    )
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument(
        "--dump-pdf",
        help="report only: write the generated members as a family file",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="number of joblib workers"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface and return the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    if SEED_VARIABLE in os.environ:
        logger.warning(
            "%s is ignored; all computations are deterministic.",
            SEED_VARIABLE,
        )
    try:
        config = RunConfig.from_args(args)
        if not config.grid and config.command == "profile":
            raise UsageError("--grid is required for `profile`.")
        return RUNNERS[config.command](config)
    except (UsageError, *USAGE_ERRORS) as error:
        logger.error("%s", error)
        return 2
    except ValueError as error:
        # malformed numbers in --alpha or --grid
        logger.error("Invalid option value. %s", error)
        return 2


if __name__ == "__main__":
    sys.exit(main())
