"""Parallel-machine trajectory simulator: traces, hint datasets and efficiency metrics."""

import json

from ._core import (
    NdjsonError,
    UnknownAlgorithm,
    algorithms,
    cli,
    run,
    validate_ndjson,
)
from . import _core

__all__ = [
    "NdjsonError",
    "UnknownAlgorithm",
    "algorithms",
    "analyze",
    "cli",
    "generate",
    "run",
    "sample",
    "schema",
    "validate_ndjson",
]


def sample(algo, n, index=0, seed=0, max_degree=3):
    """One generated sample as a dict."""
    return json.loads(_core.sample_ndjson(algo, n, index, seed, max_degree))


def generate(algo, n_list, samples, seed=0, max_degree=3):
    """NDJSON text of a generated dataset."""
    return _core.generate_ndjson(algo, list(n_list), samples, seed, max_degree)


def schema(algo):
    """Probe schema of an algorithm as a list of dicts."""
    return [json.loads(line) for line in _core.schema_json(algo).splitlines() if line]


def analyze(algo, n_list, samples=1, seed=0, exhaustive=False):
    """Scaling report records, one dict per line of the NDJSON report."""
    text = _core.analyze_ndjson(algo, list(n_list), samples, seed, exhaustive)
    return [json.loads(line) for line in text.splitlines() if line]
