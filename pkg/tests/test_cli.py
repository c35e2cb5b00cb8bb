"""End-to-end command-line checks; everything runs main(argv) in process."""

import argparse
import json

import pytest

from fermivac.cli import WORKERS_ENV, main, parse_grid_range, parse_sizes


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_grid_range():
    assert parse_grid_range("2.5") == (2.5, 2.5, 1)
    assert parse_grid_range("0:2:5") == (0.0, 2.0, 5)
    assert parse_grid_range("-1:1:21") == (-1.0, 1.0, 21)
    for bad in ("1:2", "a", "1:2:x", "1:2:3:4"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_grid_range(bad)


def test_parse_sizes():
    assert parse_sizes("8:72:8") == tuple(range(8, 73, 8))
    assert parse_sizes("2,5,9") == (2, 5, 9)
    assert parse_sizes("7") == (7,)
    for bad in ("8:4:2", "1:9:0", "x", "1:9"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_sizes(bad)


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, stdout, _ = run(
        capsys,
        "sweep",
        "--model", "kitaev",
        "--n", "4",
        "--mu", "0:2:3",
        "--delta", "0:1:2",
        "--out", str(out),
    )
    assert code == 0
    assert f"wrote 6 rows to {out}" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "model,n,t,mu,delta,quantity,value,flags"
    assert len(lines) == 7


def test_sweep_json_format(tmp_path, capsys):
    out = tmp_path / "grid.json"
    code, _, _ = run(
        capsys,
        "sweep",
        "--model", "kitaev",
        "--n", "4",
        "--mu", "1.0",
        "--delta", "0.5",
        "--quantity", "gap",
        "--quantity", "lambda1_site",
        "--format", "json",
        "--out", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert [r["quantity"] for r in payload["rows"]] == ["gap", "lambda1_site"]


def test_sweep_identical_across_worker_counts(tmp_path, capsys):
    argv = [
        "sweep",
        "--model", "kitaev",
        "--n", "6",
        "--mu", "0:2:3",
        "--delta", "0:1.5:3",
        "--quantity", "gap",
        "--quantity", "eta_half",
    ]
    outs = []
    for workers in ("1", "4"):
        out = tmp_path / f"w{workers}.csv"
        code, _, _ = run(capsys, *argv, "--workers", workers, "--out", str(out))
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_workers_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "2")
    out = tmp_path / "env.csv"
    code, _, _ = run(
        capsys,
        "sweep", "--model", "kitaev", "--n", "4",
        "--mu", "1.0", "--delta", "0.0", "--out", str(out),
    )
    assert code == 0
    monkeypatch.setenv(WORKERS_ENV, "not-a-number")
    code, _, err = run(
        capsys,
        "sweep", "--model", "kitaev", "--n", "4",
        "--mu", "1.0", "--delta", "0.0", "--out", str(tmp_path / "bad.csv"),
    )
    assert code == 1
    assert "error" in err


def test_scaling_classifies_critical_chain(capsys):
    code, stdout, _ = run(
        capsys,
        "scaling",
        "--model", "kitaev",
        "--mu", "1.0",
        "--delta", "1.0",
        "--sizes", "8:72:8",
    )
    assert code == 0
    assert "classification: polynomial" in stdout
    assert "loglog: slope=" in stdout
    assert "semilog: slope=" in stdout


def test_scaling_csv_export(tmp_path, capsys):
    out = tmp_path / "scaling.csv"
    code, stdout, _ = run(
        capsys,
        "scaling",
        "--model", "kitaev",
        "--mu", "1.0",
        "--delta", "1.0",
        "--sizes", "8,16,24",
        "--out", str(out),
    )
    assert code == 0
    assert f"wrote 3 rows to {out}" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "model,n,t,mu,delta,quantity,value,flags"
    assert len(lines) == 4


def test_series_output_shape(capsys):
    code, stdout, _ = run(
        capsys,
        "series",
        "--model", "kitaev",
        "--n", "6",
        "--mu", "2.0",
        "--delta", "1.0",
        "--scheme", "half",
    )
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "size source gap eta lambda1 flags"
    assert len(lines) == 4
    assert lines[1].startswith("2 1 ")
    assert lines[3].startswith("6 3 ")


def test_schmidt_point(capsys):
    code, stdout, _ = run(
        capsys,
        "schmidt",
        "--model", "kitaev",
        "--n", "6",
        "--mu", "1.0",
        "--delta", "1.0",
    )
    assert code == 0
    values = {line.split(":")[0]: line.split(":")[1] for line in stdout.splitlines()}
    assert abs(float(values["lambda1"]) - 0.8993622651407738) < 1e-9
    assert len(values["nus"].split()) == 3
    assert float(values["S2"]) < float(values["S1"]) < float(values["S0"])


def test_complexity_smoke(capsys):
    code, stdout, _ = run(
        capsys,
        "complexity",
        "--model", "kitaev",
        "--n", "6",
        "--mu", "2.0",
        "--delta", "1.0",
        "--scheme", "site",
    )
    assert code == 0
    assert "steps: 5" in stdout
    assert "total_cost:" in stdout
    assert "depth_cost:" in stdout


def test_oracle_check_small(capsys):
    code, stdout, _ = run(capsys, "oracle-check", "--trials", "5", "--max-n", "4", "--seed", "0")
    assert code == 0
    assert "max deviation:" in stdout


def test_usage_errors_exit_2(tmp_path, capsys):
    cases = [
        # --side only applies to the square lattice
        ["schmidt", "--model", "kitaev", "--side", "3", "--mu", "1", "--delta", "1"],
        # --n and --side are mutually exclusive
        ["schmidt", "--model", "square2d", "--n", "9", "--side", "3", "--mu", "1", "--delta", "1"],
        # one of them is required
        ["schmidt", "--model", "kitaev", "--mu", "1", "--delta", "1"],
        # half-scheme quantity at odd size is a configuration error
        ["sweep", "--model", "kitaev", "--n", "5", "--mu", "1", "--delta", "1",
         "--quantity", "eta_half", "--out", str(tmp_path / "x.csv")],
        # cut outside 1..n-1
        ["schmidt", "--model", "kitaev", "--n", "4", "--mu", "1", "--delta", "1", "--cut", "0"],
        ["schmidt", "--model", "kitaev", "--n", "4", "--mu", "1", "--delta", "1", "--cut", "4"],
    ]
    for argv in cases:
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert "error" in err


def test_bad_subcommand_arguments_exit_2(capsys):
    code, _, _ = run(capsys, "sweep", "--model", "kitaev", "--n", "4",
                     "--mu", "1", "--delta", "1", "--quantity", "nonsense", "--out", "x.csv")
    assert code == 2


def test_runtime_error_exits_1(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "sweep", "--model", "kitaev", "--n", "4",
        "--mu", "1", "--delta", "1",
        "--out", str(tmp_path / "missing" / "grid.csv"),
    )
    assert code == 1
    assert "error" in err


def test_version_exits_zero(capsys):
    code, stdout, _ = run(capsys, "--version")
    assert code == 0
    assert "fermivac" in stdout
