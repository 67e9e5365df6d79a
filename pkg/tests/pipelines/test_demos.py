import logging

import pytest

from entropylab.pipelines import DEMOS, Check, DemoResult, run_demo
from entropylab.sequences import FamilyNotFoundError


@pytest.mark.parametrize("name", list(DEMOS))
def test_demo_passes(name):
    result = run_demo(name)
    assert result.passed, [str(check) for check in result.failures]
    assert result.name == name
    assert result.checks
    assert list(result.table["n"]) == sorted(result.table["n"])


def test_gh_demo_columns():
    result = run_demo("gh-counterexample")
    assert list(result.table.columns) == [
        "n",
        "entropy",
        "tv",
        "alpha_n_moment",
        "alpha2_moment",
    ]
    assert result.table["entropy"].iloc[-1] == pytest.approx(-1.0, abs=2e-3)


def test_converse_demo_tail_columns():
    result = run_demo("converse-fails", [20, 40])
    assert list(result.table["tail_entropy_R10"]) == pytest.approx([2, 2])
    assert list(result.table["tail_density_R10"]) == pytest.approx(
        [0.1, 0.05]
    )


def test_demo_with_custom_n_values():
    result = run_demo("shrinking-uniform", [16, 3])
    assert list(result.table["n"]) == [3, 16]
    assert result.passed


def test_unknown_demo():
    with pytest.raises(FamilyNotFoundError):
        run_demo("gaussian")


def test_failures_are_logged(caplog, monkeypatch):
    failing = DemoResult(
        "bounded-ratio",
        table=None,  # type: ignore
        summary="",
        checks=[Check("claim", 2, 1.0, 2.0, False)],
    )
    monkeypatch.setitem(DEMOS, "bounded-ratio", lambda **_: failing)
    with caplog.at_level(logging.ERROR):
        result = run_demo("bounded-ratio")
    assert not result.passed
    assert "claim (n=2): expected 1.0, computed 2.0" in caplog.text
