"""Package for predefined, self-checking demonstrations."""

from .demos import (
    DEMOS,
    Check,
    DemoResult,
    at_most,
    bounded_ratio,
    close_to,
    converse_fails,
    gh_counterexample,
    increasing,
    orlicz_spike,
    run_demo,
    shrinking_uniform,
)
