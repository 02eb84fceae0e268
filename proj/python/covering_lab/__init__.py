"""Exact computations on the Inoue-surface covering group Z^3 x| Z."""

import json

from . import _core
from ._core import ConfigError, NoAccumulation, PrecisionExhausted, PreconditionFailed, suite_names, search

__all__ = [
    "ConfigError",
    "NoAccumulation",
    "PrecisionExhausted",
    "PreconditionFailed",
    "suite_names",
    "search",
    "run_suite",
    "emit",
    "config",
    "spectral",
    "minimize",
    "walk",
    "classify",
]


def run_suite(name="all", config=None):
    """Report as a dict plus the process exit status it implies."""
    text, status = _core.run_suite(name, config, "json")
    return json.loads(text), status


def emit(name="all", config=None, format="json"):
    text, _ = _core.run_suite(name, config, format)
    return text


def config(path=None):
    return json.loads(_core.config_json(path))


def spectral(matrix=None, width="1e-30"):
    return json.loads(_core.spectral_json(matrix, width))


def minimize(eps="1e-9", count=1, ratio="10", matrix=None):
    return json.loads(_core.minimize_json(str(eps), count, str(ratio), matrix))


def walk(group="z2", trials=-1, steps=-1, seed=20240607, lazy=True, threads=1):
    return json.loads(_core.walk_json(group, trials, steps, seed, lazy, threads))


def classify(matrix=None, group=None, max_steps=8):
    return json.loads(_core.classify_json(matrix, group, max_steps))
