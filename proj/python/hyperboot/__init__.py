"""Bootstrap percolation on the hypercube.

Vertices are 0/1 strings, leftmost character = coordinate 1.
"""

import json as _json

from . import _hyperboot as _core
from ._hyperboot import (  # noqa: F401
    DimensionError,
    Error,
    EvalError,
    FormatError,
    GuardError,
    ParseError,
    PreconditionError,
    check_upper_bound,
    double_config,
    evaluate,
    is_stable,
    pad_for_r,
    parse_tree,
    snake_verify,
)


def run(d, r, initial, times=False, allow_large=False):
    return _json.loads(_core.run(d, r, list(initial), times, allow_large))


def snake_search(d, k=3, mode="exhaustive", node_limit=1_000_000):
    return _json.loads(_core.snake_search(d, k, mode, node_limit))


def construct(d, snake_mode="exhaustive", node_limit=1_000_000):
    return _json.loads(_core.construct(d, snake_mode, node_limit))


def brute_force_max_time(d, r, threads=1, allow_large=False):
    return _json.loads(_core.brute_force_max_time(d, r, threads, allow_large))


def mc_time(d, r, p, samples, seed=1, threads=1):
    return _json.loads(_core.mc_time(d, r, p, samples, seed, threads))
