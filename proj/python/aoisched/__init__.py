"""Age-optimal status updating for energy-harvesting two-hop networks."""

from ._core import (
    __version__,
    age_area,
    failure_run_gof,
    greedy_two_hop,
    lower_bound,
    oracle_solve,
    rate_bound,
    run_cli,
    simulate,
    solve_single_hop,
    solve_two_hop,
    validate_two_hop,
)

__all__ = [
    "__version__",
    "age_area",
    "failure_run_gof",
    "greedy_two_hop",
    "lower_bound",
    "oracle_solve",
    "rate_bound",
    "run_cli",
    "simulate",
    "solve_single_hop",
    "solve_two_hop",
    "validate_two_hop",
]
