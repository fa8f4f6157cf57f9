# Copyright 2026 rwmlab developers.
# SPDX-License-Identifier: Apache-2.0
"""Random-walk Metropolis on targets with discontinuous support."""

import json as _json

from ._rwmlab import *  # noqa: F401,F403
from ._rwmlab import execute_experiment as _execute
from ._rwmlab import run_experiment as _run


def run_experiment(config, out_dir="."):
    """Run an experiment from a dict or JSON string; returns written paths."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return [str(p) for p in _run(config, out_dir)]


def execute_experiment(config):
    """Run an experiment in memory and return its CSV text."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _execute(config)
