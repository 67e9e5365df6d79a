import json
import logging
from pathlib import Path

import pytest

from entropylab import main as cli
from entropylab.main import SEED_VARIABLE, NSpec, UsageError, main
from entropylab.pipelines import Check, DemoResult

SCHEMA = json.loads(
    (
        Path(__file__).parents[1] / "schemas" / "report.schema.json"
    ).read_text(encoding="utf-8")
)


def test_demo_exit_zero(capsys):
    assert main(["demo", "--family", "bounded-ratio"]) == 0
    out = capsys.readouterr().out
    assert out.split("\n")[0] == "n,entropy,tv,ratio"


def test_demo_exit_one_on_failed_check(capsys, monkeypatch):
    failing = DemoResult(
        "bounded-ratio",
        table=cli.report_frame([]),
        summary="",
        checks=[Check("claim", 2, 1.0, 2.0, False)],
    )
    monkeypatch.setattr(cli, "run_demo", lambda *args, **kwargs: failing)
    assert main(["demo", "--family", "bounded-ratio"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["demo"],
        ["demo", "--family", "gaussian"],
        ["report", "--family", "gaussian"],
        ["report", "--family", "gh-counterexample", "--n", "2,10"],
        ["report", "--family", "bounded-ratio", "--psi", "cosh"],
        ["report", "--family", "bounded-ratio", "--n", "5..2"],
        ["report", "--family", "bounded-ratio", "--alpha", "abc"],
        ["profile", "--family", "bounded-ratio", "--n", "2..5"],
        [
            "profile",
            "--family",
            "bounded-ratio",
            "--n",
            "2..5",
            "--grid",
            "10,1",
        ],
        [
            "profile",
            "--family",
            "bounded-ratio",
            "--n",
            "2..5",
            "--grid",
            "1",
            "--integrand",
            "density",
        ],
        ["check", "--family", "bounded-ratio"],
        ["check", "--family", "custom:/does/not/exist.json", "--n", "2..3"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().out == ""


def test_argparse_rejects_command():
    with pytest.raises(SystemExit) as error:
        main(["plot"])
    assert error.value.code == 2


def test_report_is_deterministic(tmp_path):
    paths = [tmp_path / "first.csv", tmp_path / "second.csv"]
    for path in paths:
        argv = [
            "report",
            "--family",
            "gh-counterexample",
            "--n",
            "3..1000",
            "--psi",
            "tlog1p",
            "--alpha",
            "1.5,2",
            "--out",
            str(path),
        ]
        assert main(argv) == 0
    first, second = (path.read_bytes() for path in paths)
    assert first == second
    header = first.split(b"\n")[0]
    assert header == (
        b"n,entropy,tv_to_limit,integrand_mass,tlog1p,power:1.5,power:2"
    )
    assert b"\r" not in first


def test_report_json(capsys):
    argv = ["report", "--family", "bounded-ratio", "--n", "2,10"]
    assert main(argv + ["--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["schema_version"] == "1.0"
    assert document["command"] == "report"
    assert document["family"] == "bounded-ratio"
    assert [row["n"] for row in document["rows"]] == [2, 10]


def test_profile_tightness(capsys):
    argv = [
        "profile",
        "--family",
        "converse-fails",
        "--axis",
        "R",
        "--integrand",
        "density",
        "--grid",
        "10",
        "--n",
        "11..100",
        "--format",
        "json",
    ]
    assert main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["axis"] == "R"
    assert document["n_range"] == [11, 100]
    assert document["integrand"] == "density"
    row = document["rows"][0]
    assert row["R"] == 10.0
    assert row["value"] == pytest.approx(2 / 11)
    assert row["argmax_n"] == 11


def test_check_json(capsys):
    argv = ["check", "--family", "bounded-ratio", "--n", "2..50"]
    assert main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["n_range"] == [2, 50]
    verdict = document["verdicts"]["bounded_ratio"]
    assert verdict["holds_on_range"] is True
    assert verdict["witness_n"] == 2
    assert verdict["evidence"] == "finite-range"


def test_check_orlicz_spike_full_range(capsys):
    argv = ["check", "--family", "orlicz-spike", "--psi", "tlog1p"]
    assert main(argv + ["--n", "2..1000"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["verdicts"]["orlicz"]["holds_on_range"] is True
    moment = document["verdicts"]["bounded_density_moment"]["details"]
    assert moment["abs_moment"] <= 1.0


def test_check_csv(capsys):
    argv = ["check", "--family", "bounded-ratio", "--n", "2..5"]
    assert main(argv + ["--format", "csv", "--alpha", "1.5,3"]) == 0
    lines = capsys.readouterr().out.split("\n")
    assert lines[0] == (
        "condition,holds_on_range,witness,witness_n,bound,"
        "sup_at_range_end,evidence"
    )
    conditions = [line.split(",")[0] for line in lines[1:] if line]
    assert "fixed_alpha:1.5" in conditions
    assert "fixed_alpha:3" in conditions


def test_custom_family_round_trip(tmp_path):
    family_file = tmp_path / "family.json"
    built_in, custom = tmp_path / "built_in.csv", tmp_path / "custom.csv"
    argv = ["report", "--family", "orlicz-spike", "--n", "2,10,100"]
    assert main(argv + ["--dump-pdf", str(family_file)]) == 0
    assert main(argv + ["--out", str(built_in)]) == 0
    assert (
        main(
            [
                "report",
                "--family",
                f"custom:{family_file}",
                "--out",
                str(custom),
            ]
        )
        == 0
    )
    assert custom.read_bytes() == built_in.read_bytes()


def test_seed_variable_is_ignored(monkeypatch, caplog, capsys):
    monkeypatch.setenv(SEED_VARIABLE, "42")
    with caplog.at_level(logging.WARNING):
        assert main(["demo", "--family", "shrinking-uniform"]) == 0
    warnings = [
        record
        for record in caplog.records
        if SEED_VARIABLE in record.getMessage()
    ]
    assert len(warnings) == 1
    assert warnings[0].levelno == logging.WARNING


@pytest.mark.parametrize(
    "text, values, bounds",
    [
        ("3,1,3", [1, 3], (1, 3)),
        ("3..30", [3, 10, 30], (3, 30)),
        (" 5 ", [5], (5, 5)),
    ],
)
def test_nspec(text, values, bounds):
    spec = NSpec.parse(text)
    assert spec.as_values() == values
    assert spec.as_range() == bounds


@pytest.mark.parametrize("text", ["", "a..b", "1,x", "9..3"])
def test_nspec_rejects(text):
    with pytest.raises(UsageError):
        NSpec.parse(text)


def _is_number(value) -> bool:
    return value is None or value in ("inf", "-inf") or (
        isinstance(value, (int, float)) and not isinstance(value, bool)
    )


@pytest.mark.parametrize(
    "argv",
    [
        ["demo", "--family", "orlicz-spike"],
        ["report", "--family", "converse-fails", "--n", "3..100"],
        ["profile", "--family", "gh-counterexample", "--n", "3..20"]
        + ["--grid", "1,100"],
        ["check", "--family", "gh-counterexample", "--n", "3..20"],
    ],
)
def test_json_output_follows_schema(argv, capsys):
    assert main(argv + ["--format", "json"]) in (0, 1)
    document = json.loads(capsys.readouterr().out)
    assert set(SCHEMA["required"]) <= set(document)
    assert document["schema_version"] == SCHEMA["properties"][
        "schema_version"
    ]["const"]
    assert document["command"] in SCHEMA["properties"]["command"]["enum"]
    assert ("rows" in document) != ("verdicts" in document)
    for row in document.get("rows", []):
        assert all(_is_number(value) for value in row.values())
    verdict_keys = set(SCHEMA["$defs"]["verdict"]["required"])
    for verdict in document.get("verdicts", {}).values():
        assert set(verdict) == verdict_keys
        assert type(verdict["holds_on_range"]) is bool
        assert type(verdict["witness_n"]) is int
        assert all(_is_number(value) for value in verdict["details"].values())
        assert verdict["evidence"] == "finite-range"
