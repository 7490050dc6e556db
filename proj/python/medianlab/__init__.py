"""Metric 1-median selection under query budgets."""

import json
from fractions import Fraction

from ._medianlab import (  # noqa: F401
    BadConstant,
    BudgetExceeded,
    BudgetExhausted,
    ConsistencyFailure,
    DisconnectedGraph,
    Error,
    ExactDistance,
    Infeasible,
    MetricTable,
    NotRegular,
    PadOverflow,
    ParseError,
    PreconditionError,
    QueryOutOfRange,
    exact_median,
    graph_metric,
    minimum_cap,
    subset_size,
    validate_metric,
)
from . import _medianlab as _core


def transfer_bound(beta, n, s):
    beta = Fraction(beta)
    return Fraction(*_core.transfer_bound(beta.numerator, beta.denominator, n, s))


def average_pairwise_distance(table):
    return Fraction(*_core.average_pairwise_distance(table))


def solve(table, f_of_n, inner="exact", seed=1):
    """Run the subset-restricted solver; the output point is 0-based."""
    return json.loads(_core._solve(table, f_of_n, inner, seed))


def play_adversary(n, q, algo="exact", d=8, seed=1, cap=None):
    """Play a built-in algorithm with budget q against the adaptive adversary."""
    return json.loads(_core._play_adversary(n, q, algo, d, seed, cap))


def play_callback(n, q, fn, d=8, seed=1):
    """Play fn(query) -> point against the adversary; query(a, b) returns integer distance units."""
    return json.loads(_core._play_callback(n, q, fn, d, seed))


def lower_bound(n, q, algo="exact", d=8, seed=1):
    return json.loads(_core._lower_bound(n, q, algo, d, seed))


def expander(n, d, seed=1, certify="spectral"):
    return json.loads(_core._expander(n, d, seed, certify))
