"""Python front end for the felsim simulator."""

import csv
import io

from ._felsim import (
    COUNTERS_HEADER,
    METRICS_HEADER,
    ConfigError,
    InvariantViolation,
    ZipfSampler,
    run_ini,
    run_scenario,
    scenario_ini,
    validate_ini,
)

__all__ = [
    "COUNTERS_HEADER",
    "METRICS_HEADER",
    "ConfigError",
    "InvariantViolation",
    "ZipfSampler",
    "read_csv",
    "run_ini",
    "run_scenario",
    "scenario_ini",
    "validate_ini",
]


def read_csv(text):
    """Rows of a metrics or counters CSV as dicts (values stay strings)."""
    return list(csv.DictReader(io.StringIO(text, newline="")))
