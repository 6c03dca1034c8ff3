"""Constraint solving over linear integer arithmetic with embedded tables."""

try:
    from ._dzcore import (
        Problem,
        SolverError,
        bench_gen,
        emit_smtlib,
        is_existential,
        parse,
        print_problem,
        rank,
        solve,
        solve_eager,
    )
except ImportError:  # running against an in-build extension on PYTHONPATH
    from _dzcore import (
        Problem,
        SolverError,
        bench_gen,
        emit_smtlib,
        is_existential,
        parse,
        print_problem,
        rank,
        solve,
        solve_eager,
    )

__all__ = [
    "Problem",
    "SolverError",
    "bench_gen",
    "emit_smtlib",
    "is_existential",
    "parse",
    "print_problem",
    "rank",
    "solve",
    "solve_eager",
]
