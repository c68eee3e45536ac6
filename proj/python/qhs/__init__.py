"""Exact simulator for quantum hidden subgroup algorithms over small finite groups."""

import json as _json

from ._qhs import (  # noqa: F401
    ConfigError,
    Distribution,
    Group,
    InvariantViolation,
    ResourceLimitError,
    __version__,
    all_subgroups,
    character_sieve,
    continued_fraction_period,
    fourier_matrix,
    multiplicative_order,
    peak_mass,
    period_from_samples,
    representation_report,
    run_experiment_json,
    run_pipeline,
    shor_pipeline,
    simon_solve,
    subgroup,
    sweep_transversals,
)


def run_experiment(config):
    """Run an experiment from a dict (or JSON string) and return the report as a dict."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(run_experiment_json(text))
