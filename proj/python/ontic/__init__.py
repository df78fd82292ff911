"""Python bindings for the ontic simulator.

Reports come back as dicts parsed from the same JSON documents the
command-line tool writes.
"""

import json

from . import _ontic
from ._ontic import (
    InvalidArgument,
    born_probabilities,
    exact_born_deviation,
    haar_random,
    models,
    z_closed_form,
    z_from_fidelity,
    z_oracle,
)

__all__ = [
    "InvalidArgument",
    "born_probabilities",
    "check_region_constancy",
    "classify_epistemicity",
    "estimate_overlap_mc",
    "exact_born_deviation",
    "haar_random",
    "models",
    "overlap_measure",
    "prepare",
    "run_born_trials",
    "run_cli",
    "z_closed_form",
    "z_from_fidelity",
    "z_oracle",
]


def prepare(model, d, psi, distribution="fubini-study-uniform"):
    return json.loads(_ontic.prepare(model, d, list(psi), distribution))


def overlap_measure(e1, e2):
    return _ontic.overlap_measure(json.dumps(e1), json.dumps(e2))


def estimate_overlap_mc(e1, e2, n, seed):
    return json.loads(_ontic.estimate_overlap_mc(json.dumps(e1), json.dumps(e2), n, seed))


def run_born_trials(model, d, psi, outcomes, anchor, n, seed, workers=1, distribution="fubini-study-uniform"):
    return json.loads(
        _ontic.run_born_trials(model, d, list(psi), [list(o) for o in outcomes], list(anchor), n, seed, workers,
                               distribution))


def check_region_constancy(model, d, n_states, n_measurements, seed, workers=1):
    return json.loads(_ontic.check_region_constancy(model, d, n_states, n_measurements, seed, workers))


def classify_epistemicity(model, d, states, threshold=0.0):
    return json.loads(_ontic.classify_epistemicity(model, d, [list(s) for s in states], threshold))


def run_cli(args):
    """Runs the command-line tool in-process; returns (status, stdout, stderr)."""
    return _ontic.run_cli([str(a) for a in args])
