from ._numeros import (
    EngineError,
    Expr,
    Oracle,
    ackermann_code,
    ackermann_decode,
    census_at,
    empty,
    exact_support_count,
    fin_powerset,
    finite,
    progression,
    run_script,
    script_print,
)

__all__ = [
    "EngineError",
    "Expr",
    "Oracle",
    "ackermann_code",
    "ackermann_decode",
    "census_at",
    "empty",
    "exact_support_count",
    "fin_powerset",
    "finite",
    "progression",
    "run_script",
    "script_print",
]
