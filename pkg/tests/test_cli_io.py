import io
import json
import math

import numpy as np
import pytest

from hdbf import cli
from hdbf.dataio import DatasetFile, Layout, load_dataset, read_results_csv, write_results_csv
from hdbf.errors import ConfigError, ParseError
from hdbf.grid import grid_from_dict, list_presets, load_preset
from hdbf.report import format_table


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def null_files(tmp_path):
    rng = np.random.default_rng(4)
    header = ",".join(f"g{j}" for j in range(8))
    paths = []
    for name, n in (("a.csv", 12), ("b.csv", 15)):
        rows = [",".join(repr(float(v)) for v in r) for r in rng.standard_normal((n, 8))]
        paths.append(write(tmp_path / name, header + "\n" + "\n".join(rows) + "\n"))
    return paths


# -- dataset loading --------------------------------------------------------------

def test_two_file_round_trip(tmp_path, toy):
    a = write(tmp_path / "a.csv", "x,y\n1,0\n0,1\n")
    b = write(tmp_path / "b.csv", "x,y\n2,1\n1,2\n0,0\n")
    data = load_dataset(DatasetFile((a, b), min_per_group=2))
    assert np.array_equal(data.x1, toy.x1) and np.array_equal(data.x2, toy.x2)


def test_min_group_size_default(tmp_path):
    a = write(tmp_path / "a.csv", "x,y\n1,0\n0,1\n")
    b = write(tmp_path / "b.csv", "x,y\n2,1\n1,2\n0,0\n")
    with pytest.raises(ParseError, match="at least 3"):
        load_dataset(DatasetFile((a, b)))


def test_labeled_order_independent(tmp_path):
    rows = [("A", 1.0, 2.0), ("B", 0.5, 0.1), ("A", 3.0, 1.0), ("B", 2.0, 2.5),
            ("A", 0.0, 0.3), ("B", 1.5, 1.0)]
    text = "grp,u,v\n" + "".join(f"{g},{u},{v}\n" for g, u, v in rows)
    sorted_text = "grp,u,v\n" + "".join(f"{g},{u},{v}\n" for g, u, v in sorted(rows, key=lambda r: r[0]))
    shuffled = load_dataset(DatasetFile(write(tmp_path / "s.csv", text), Layout.LABELED, label_column="grp"))
    ordered = load_dataset(DatasetFile(write(tmp_path / "o.csv", sorted_text), Layout.LABELED, label_column="grp"))
    assert np.array_equal(shuffled.x1, ordered.x1) and np.array_equal(shuffled.x2, ordered.x2)
    by_index = load_dataset(DatasetFile(str(tmp_path / "s.csv"), Layout.LABELED, label_column=0))
    assert np.array_equal(by_index.x1, shuffled.x1)
    flipped = load_dataset(DatasetFile(str(tmp_path / "s.csv"), Layout.LABELED, label_column="grp",
                                       group_labels=("B", "A")))
    assert np.array_equal(flipped.x1, shuffled.x2)


def test_header_without_flag_names_line_one(tmp_path):
    a = write(tmp_path / "a.csv", "x,y\n1,0\n0,1\n3,3\n")
    b = write(tmp_path / "b.csv", "2,1\n1,2\n0,0\n")
    with pytest.raises(ParseError, match="line 1"):
        load_dataset(DatasetFile((a, b), has_header=False))


@pytest.mark.parametrize("body,pattern", [
    ("x,y\n1,0\n0\n3,3\n", "line 3: .*expected 2 fields"),
    ("x,y\n1,0\n0,abc\n3,3\n", "line 3: .*non-numeric"),
    ("x,y\n1,0\n0,nan\n3,3\n", "line 3: .*non-finite"),
])
def test_parse_errors_carry_line_numbers(tmp_path, body, pattern):
    a = write(tmp_path / "a.csv", body)
    b = write(tmp_path / "b.csv", "x,y\n2,1\n1,2\n0,0\n")
    with pytest.raises(ParseError, match=pattern):
        load_dataset(DatasetFile((a, b)))


def test_label_count_error(tmp_path):
    p = write(tmp_path / "l.csv", "g,u\nA,1\nB,2\nC,3\n")
    with pytest.raises(ParseError, match="exactly 2 group labels"):
        load_dataset(DatasetFile(p, Layout.LABELED, label_column="g"))


def test_transposed_and_tab_delimited(tmp_path):
    # genes in rows, samples in columns, a leading id column
    a = write(tmp_path / "a.tsv", "gene\ts1\ts2\ts3\nG1\t1\t2\t3\nG2\t4\t5\t6\n")
    b = write(tmp_path / "b.tsv", "gene\ts4\ts5\ts6\nG1\t0\t1\t1\nG2\t2\t2\t9\n")
    data = load_dataset(DatasetFile((a, b), delimiter="\t", transpose=True, skip_columns=(0,)))
    assert data.x1.shape == (3, 2)
    assert np.array_equal(data.x1[:, 1], [4, 5, 6])


def test_results_csv_round_trip(tmp_path):
    rows = [{"a": 1, "b": math.pi, "c": "x"}, {"a": 2, "b": 1e-300 / 3, "c": "y"}]
    path = tmp_path / "r.csv"
    write_results_csv(path, rows, ["a", "b", "c"])
    back = read_results_csv(path)
    assert back == rows


# -- grids and presets -------------------------------------------------------------------

def test_presets_present():
    names = list_presets()
    for t in range(1, 6):
        assert f"table{t}" in names and f"table{t}-quick" in names


def test_full_presets_cover_published_grid():
    g = load_preset("table1")
    assert len(g.cells) == 81
    assert {c.n_reps for c in g.cells} == {10000}
    assert len({c.seed for c in g.cells}) == 81
    power = load_preset("table3")
    first = power.cells[0]
    assert (first.p, first.n1, first.n2, first.delta) == (50, 30, 50, 1.5)
    assert {c.cov_family.value for c in load_preset("table4").cells} == {"drd"}


def test_grid_schema_errors():
    with pytest.raises(ConfigError):
        grid_from_dict({"table": "size", "grid": {"p": [50]}, "defaults": {"bogus": 1}})
    with pytest.raises(ConfigError):
        grid_from_dict({"table": "nope", "grid": {"p": [50]}})
    with pytest.raises(ConfigError):
        grid_from_dict({"table": "size"})
    g = grid_from_dict({"table": "size", "defaults": {"seed": 10},
                        "grid": {"rho2": [0.1, 0.5]}, "cells": [{"p": 20, "seed": 3}]})
    assert [c.seed for c in g.cells] == [10, 11, 3]


def test_format_table_alignment():
    text = format_table(["a", "bbb"], [[1, 2.5], [100, "x"]])
    lines = text.splitlines()
    assert len({len(l) for l in lines[1:] if not l.startswith("-")}) == 1


# -- command line ------------------------------------------------------------------------------

def test_cli_test_exit_codes(null_files, tmp_path):
    code_strict, out = run(["test", *null_files, "--alpha", "1e-9"])
    assert code_strict == 0
    assert "F_np" in out and "T_CQ" in out and "T_np" in out
    code_loose, _ = run(["test", *null_files, "--alpha", "0.999"])
    assert code_loose == 1
    csv_path = tmp_path / "res.csv"
    run(["test", *null_files, "--out", str(csv_path), "--methods", "FNP,TNP"])
    rows = read_results_csv(csv_path)
    assert [r["method"] for r in rows] == ["FNP", "TNP"]
    assert 0 <= rows[0]["p_value"] <= 1


def test_cli_toy_deterministic(null_files):
    assert run(["test", *null_files]) == run(["test", *null_files])


def test_cli_usage_errors(tmp_path, null_files, capsys):
    assert run(["test", null_files[0]])[0] == 2
    assert run(["test", str(tmp_path / "missing.csv"), null_files[1]])[0] == 2
    assert run(["test", *null_files, "--methods", "XYZ"])[0] == 2
    assert run(["test", *null_files, "--no-header"])[0] == 2
    assert "line 1" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2


def test_cli_numerical_failure(tmp_path):
    a = write(tmp_path / "a.csv", "x,y\n1,1\n1,1\n1,1\n")
    b = write(tmp_path / "b.csv", "x,y\n2,2\n2,2\n2,2\n")
    code, out = run(["test", a, b])
    assert code == 3
    assert "error" in out


def test_cli_simulate_single_cell(tmp_path, capsys):
    out_csv = tmp_path / "sim.csv"
    code, out = run(["simulate", "--reps", "1", "--seed", "3", "--out", str(out_csv)])
    assert code == 0
    assert "ARE" in out
    rows = read_results_csv(out_csv)
    assert len(rows) == 1
    assert rows[0]["rate_FNP"] in (0.0, 1.0)
    assert "[1/1]" in capsys.readouterr().err


def test_cli_simulate_config_file(tmp_path):
    cfg = {"name": "mini", "table": "df", "defaults": {"n_reps": 30, "seed": 5, "p": 20},
           "grid": {"rho2": [0.1, 0.5]}}
    path = write(tmp_path / "g.json", json.dumps(cfg))
    out_csv = tmp_path / "g.csv"
    code, out = run(["simulate", "--config", path, "--out", str(out_csv), "--quiet"])
    assert code == 0
    assert "d1_hat|rho2=0.1" in out
    rows = read_results_csv(out_csv)
    assert [r["rho2"] for r in rows] == [0.1, 0.5]
    assert [r["seed"] for r in rows] == [5, 6]
    assert run(["simulate", "--config", path, "--quiet"]) == run(["simulate", "--config", path, "--quiet"])


def test_cli_simulate_bad_config(tmp_path):
    path = write(tmp_path / "g.json", "{not json")
    assert run(["simulate", "--config", path])[0] == 2


def test_cli_oracle_identity_and_determinism():
    args = ["oracle", "--family", "identity", "--p", "30", "--draws", "5000", "--seed", "4"]
    code, out = run(args)
    assert code == 0
    assert "d_star" in out and "KS distance" in out
    table = {l.split()[0]: l.split()[-1] for l in out.splitlines() if l.strip().startswith(("d_star", "d1"))}
    assert float(table["d_star"]) == pytest.approx(30)
    assert float(table["d1"]) == pytest.approx(30)
    assert run(args) == (code, out)


def test_cli_oracle_spectra_file(tmp_path):
    path = write(tmp_path / "spec.csv", "lambda1,lambda2\n3,1\n1,2\n0.5,0.5\n")
    code, out = run(["oracle", "--spectra", path, "--n1", "10", "--n2", "12", "--draws", "2000"])
    assert code == 0 and "p=3" in out
    bad = write(tmp_path / "bad.csv", "a,b\n1,2\n")
    assert run(["oracle", "--spectra", bad])[0] == 2


def test_cli_oracle_strong_correlation_reports_small_d1():
    code, out = run(["oracle", "--rho2", "0.9", "--draws", "2000"])
    d1 = float(next(l for l in out.splitlines() if l.strip().startswith("d1")).split()[-1])
    assert code == 0 and 3.0 <= d1 <= 4.5
