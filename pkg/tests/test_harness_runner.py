import math

import numpy as np
import pytest

from vqebench.errors import ParameterDomainError
from vqebench.harness import (
    RunRecord,
    config_from_dict,
    derive_run_seed,
    read_records,
    run_experiment,
    summarize,
    toy_problem_paths,
    write_records,
)


def make_config(families=("ideal",), optimizers=("bfgs",), seeds=(0, 1), **extra):
    ham, circ = toy_problem_paths()
    data = {
        "hamiltonian_path": ham,
        "circuit_path": circ,
        "families": list(families),
        "optimizers": list(optimizers),
        "seeds": list(seeds),
    }
    data.update(extra)
    return config_from_dict(data)


# --- seed derivation -------------------------------------------------------

def test_run_seed_stable():
    assert derive_run_seed("ideal", "bfgs", 0) == derive_run_seed("ideal", "bfgs", 0)


def test_run_seed_distinguishes_fields():
    seeds = {
        derive_run_seed("ideal", "bfgs", 0),
        derive_run_seed("ideal", "bfgs", 1),
        derive_run_seed("ideal", "cobyla", 0),
        derive_run_seed("SN-256", "bfgs", 0),
    }
    assert len(seeds) == 4


def test_run_seed_is_64_bit():
    s = derive_run_seed("DEPOL-5%", "isoma", 7)
    assert 0 <= s < 2**64


# --- records and CSV -------------------------------------------------------

def test_record_invariants():
    with pytest.raises(ParameterDomainError):
        RunRecord("f", "o", 0, -1.0, -2.0, -3.0, 10, True, 1.0)
    with pytest.raises(ParameterDomainError):
        RunRecord("f", "o", 0, -2.0, -1.0, -3.0, 0, True, 1.0)


def test_nan_record_allowed():
    r = RunRecord("f", "o", 0, math.nan, math.nan, math.nan, 5, False, 1.0)
    assert not r.converged


def test_csv_round_trip(tmp_path):
    records = [
        RunRecord("ideal", "bfgs", 0, -2.0615528128088303, -0.5, -2.5615528128088303, 50, True, 12.5),
        RunRecord("SN-256", "cobyla", 3, -1.9999999999999998, -0.3333333333333333, -2.333333333333333, 7, False, 0.25),
    ]
    path = tmp_path / "runs.csv"
    write_records(records, path)
    back = read_records(path)
    assert back == records  # 17 significant digits survive the round trip


def test_read_records_rejects_bad_header(tmp_path):
    path = tmp_path / "runs.csv"
    path.write_text("foo,bar\n1,2\n")
    with pytest.raises(ParameterDomainError):
        read_records(path)


def test_read_records_missing_file(tmp_path):
    with pytest.raises(ParameterDomainError):
        read_records(tmp_path / "absent.csv")


# --- summarize -------------------------------------------------------------

def _rec(family, optimizer, seed, e_sa, n_evals=10):
    half = e_sa / 2.0
    return RunRecord(family, optimizer, seed, half, half, e_sa, n_evals, True, 1.0)


def test_summarize_hand_example():
    cells = summarize([_rec("f", "o", 0, -1.0), _rec("f", "o", 1, -1.2)])
    s = cells[("f", "o")]
    assert s.mu_final == pytest.approx(-1.1)
    assert s.sigma_final == pytest.approx(0.141421, abs=1e-6)


def test_summarize_single_record_flagged():
    s = summarize([_rec("f", "o", 0, -1.0)])[("f", "o")]
    assert s.single
    assert s.sigma_final == 0.0
    assert s.sigma_evals == 0.0


def test_summarize_identical_records():
    s = summarize([_rec("f", "o", i, -1.5) for i in range(4)])[("f", "o")]
    assert s.sigma_final == 0.0
    assert not s.single


def test_summarize_evals():
    s = summarize([_rec("f", "o", 0, -1.0, 10), _rec("f", "o", 1, -1.0, 20)])[("f", "o")]
    assert s.mu_evals == pytest.approx(15.0)
    assert s.sigma_evals == pytest.approx(np.std([10.0, 20.0], ddof=1))


# --- run_experiment --------------------------------------------------------

def test_grid_size_and_order():
    cfg = make_config(families=("ideal",), optimizers=("bfgs", "cobyla"), seeds=(0, 1))
    records = run_experiment(cfg)
    assert len(records) == 4
    assert [(r.optimizer, r.seed) for r in records] == [
        ("bfgs", 0), ("bfgs", 1), ("cobyla", 0), ("cobyla", 1)
    ]


def test_ideal_bfgs_reaches_reference(toy_reference):
    cfg = make_config(seeds=(0,))
    (record,) = run_experiment(cfg)
    assert record.converged
    assert record.e_sa == pytest.approx(toy_reference.e_sa, abs=1e-6)
    assert record.e_ground <= record.e_excited


def test_rerun_identical_modulo_wall_time():
    cfg = make_config(families=("SN-256",), optimizers=("cobyla",), seeds=(0, 1))
    first = run_experiment(cfg)
    second = run_experiment(cfg)
    for a, b in zip(first, second):
        assert (a.e_ground, a.e_excited, a.e_sa, a.n_evals, a.converged) == (
            b.e_ground, b.e_excited, b.e_sa, b.n_evals, b.converged
        )


def test_streaming_output_matches_return(tmp_path):
    cfg = make_config(seeds=(0, 1))
    path = tmp_path / "runs.csv"
    records = run_experiment(cfg, out_path=path)
    assert read_records(path) == records


def test_uniform_theta0_varies_across_seeds():
    cfg = make_config(
        families=("ideal",),
        optimizers=("nelder_mead",),
        seeds=(0, 1, 2),
        theta0_policy={"kind": "uniform", "low": -3.14, "high": 3.14},
    )
    records = run_experiment(cfg)
    evals = {r.n_evals for r in records}
    e_sa = {r.e_sa for r in records}
    assert len(evals) > 1 or len(e_sa) > 1
