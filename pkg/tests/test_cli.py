import csv
import json

import pytest

from vqebench.harness import RunRecord, toy_problem_paths, write_records
from vqebench.harness.cli import main


def write_config(tmp_path, **overrides):
    ham, circ = toy_problem_paths()
    data = {
        "hamiltonian_path": ham,
        "circuit_path": circ,
        "families": ["ideal"],
        "optimizers": ["bfgs"],
        "seeds": [0, 1],
    }
    data.update(overrides)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return path


def synthetic_records():
    """Two families, two optimizers; 'good' dominates everywhere."""
    records = []
    for fam_i, fam in enumerate(("fam_a", "fam_b")):
        for seed in range(6):
            e = 0.01 * seed + 0.02 * fam_i
            records.append(RunRecord(fam, "good", seed, -2.0 + e, -0.5 + e, -2.5 + 2 * e, 10, True, 1.0))
            e = 0.7 + 0.1 * seed
            records.append(RunRecord(fam, "bad", seed, -2.0 + e, -0.5 + e, -2.5 + 2 * e, 10, True, 1.0))
    return records


def test_catalog_lists_21(capsys):
    assert main(["catalog"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 21
    assert lines[0] == "ideal"


def test_unknown_flag_exits_2(capsys):
    assert main(["catalog", "--frobnicate"]) == 2


def test_unknown_subcommand_exits_2(capsys):
    assert main(["explode"]) == 2


def test_run_writes_csv(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = tmp_path / "runs.csv"
    assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    rows = list(csv.reader(open(out)))
    assert len(rows) == 3  # header + 2 seeds
    assert rows[0][0] == "family"


def test_run_bad_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "cfg.json"
    bad.write_text("{")
    assert main(["run", "--config", str(bad), "--out", str(tmp_path / "o.csv")]) == 2


def test_run_unknown_family_exits_2(tmp_path, capsys):
    cfg = write_config(tmp_path, families=["no-such-family"])
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o.csv")]) == 2


def test_analyze_bad_runs_exits_3(tmp_path, capsys):
    bad = tmp_path / "runs.csv"
    bad.write_text("nope\n")
    assert main(["analyze", "--runs", str(bad), "--per-optimizer", str(tmp_path / "a")]) == 3


def test_analyze_writes_reports(tmp_path, capsys):
    runs = tmp_path / "runs.csv"
    write_records(synthetic_records(), runs)
    out = tmp_path / "analysis"
    assert main(
        ["analyze", "--runs", str(runs), "--per-optimizer", str(out), "--n-perm", "199"]
    ) == 0
    for opt in ("good", "bad"):
        for name in (
            "mardia.json",
            "box_m.json",
            "levene.json",
            "brown_forsythe.json",
            "permanova.json",
            "permdisp.json",
            "ellipses.csv",
        ):
            assert (out / opt / name).exists()
        heat = list(csv.reader(open(out / opt / "permanova_pairwise.csv")))
        assert heat[0][1:] == ["fam_a", "fam_b"]


def test_rank_dominant_optimizer(tmp_path, capsys):
    runs = tmp_path / "runs.csv"
    write_records(synthetic_records(), runs)
    out = tmp_path / "rank"
    code = main(
        ["rank", "--runs", str(runs), "--reference", "-2.0", "-0.5", "--out", str(out)]
    )
    assert code == 0
    summary = json.loads((out / "rank_summary.json").read_text())
    assert summary["metrics"]["good"]["wins"] == 2
    assert summary["metrics"]["good"]["avg_place"] == pytest.approx(1.0)
    heat = list(csv.reader(open(out / "rank_heatmap.csv")))
    assert heat[0] == ["family", "bad", "good"]
    assert heat[-1][0] == "overall"


def test_rank_missing_runs_exits_3(tmp_path, capsys):
    assert main(
        ["rank", "--runs", str(tmp_path / "none.csv"), "--reference", "0", "0"]
    ) == 3
