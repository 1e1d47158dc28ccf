"""Experiment harness: family catalog, configuration, run execution, CLI."""
from .catalog import NOISY_SHOTS, FamilySpec, catalog_by_name, family_catalog, lookup_family
from .config import ExperimentConfig, Theta0Policy, config_from_dict, load_config, toy_problem_paths
from .reports import analyze_optimizer, analyze_runs, rank_runs
from .runner import (
    CSV_HEADER,
    CellSummary,
    RunRecord,
    derive_run_seed,
    execute_run,
    read_records,
    run_experiment,
    summarize,
    write_records,
)

__all__ = [
    "CSV_HEADER",
    "CellSummary",
    "ExperimentConfig",
    "FamilySpec",
    "NOISY_SHOTS",
    "RunRecord",
    "Theta0Policy",
    "analyze_optimizer",
    "analyze_runs",
    "catalog_by_name",
    "config_from_dict",
    "derive_run_seed",
    "execute_run",
    "family_catalog",
    "load_config",
    "lookup_family",
    "rank_runs",
    "read_records",
    "run_experiment",
    "summarize",
    "toy_problem_paths",
    "write_records",
]
