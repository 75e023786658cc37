"""Constants."""
from typing import Callable, NamedTuple

from ncps.combinatorics import NC_CAP, TREE_CAP
from ncps.series import (
    TruncatedSeries,
    bch,
    cauchy_inv,
    cauchy_mul,
    exp_g,
    flow,
    lie_bracket,
    log_g,
    pre_lie,
    shifted_compose,
    shifted_inverse,
    shifted_substitute,
)

DEFAULT_ALPHABET = 2
DEFAULT_DEGREE = 4
DEFAULT_TRIALS = 50
DEFAULT_SEED = 42
# Suites built on linear forms run at degree ≤ this cap
FORM_DEGREE_CAP = 5


class Operation(NamedTuple):
    """Series operation exposed on the command line."""

    arity: int
    apply: Callable[..., TruncatedSeries]


OPERATIONS = {
    "mul": Operation(2, cauchy_mul),
    "inv": Operation(1, cauchy_inv),
    "compose": Operation(2, shifted_compose),
    "sinv": Operation(1, shifted_inverse),
    "substitute": Operation(2, shifted_substitute),
    "prelie": Operation(2, pre_lie),
    "bracket": Operation(2, lie_bracket),
    "exp": Operation(1, exp_g),
    "log": Operation(1, log_g),
    "bch": Operation(2, bch),
    "flow": Operation(1, flow),
}

ORACLES = ["nc-free", "boolean-recursion", "monotone-formula", "monotone-trees"]

__all__ = [
    "DEFAULT_ALPHABET",
    "DEFAULT_DEGREE",
    "DEFAULT_SEED",
    "DEFAULT_TRIALS",
    "FORM_DEGREE_CAP",
    "NC_CAP",
    "OPERATIONS",
    "ORACLES",
    "TREE_CAP",
]
