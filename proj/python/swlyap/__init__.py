"""Maximal Lyapunov exponent of two-matrix switched systems on SL2(R)."""

from ._core import (
    DomainError,
    Error,
    NoSingularError,
    NoSolutionError,
    OverflowError,
    ParseError,
    TraceError,
    UnclassifiableError,
    commutator_trace_sq,
    expm,
    exponent_from_invariants,
    grid_lower_bound,
    lyapunov_exponent,
    periodic_exponent,
    phi,
    random_probe,
    simulate,
    singular_data,
    solve_switch_time,
    sweep_csv,
    trace_invariants,
)

__version__ = "0.1.0"
