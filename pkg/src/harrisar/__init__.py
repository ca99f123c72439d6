"""Harris-stable laws, their AR(1) schemes and numerical certificates."""
from harrisar.exponent import (
    DomainError,
    ParameterError,
    RangeError,
    SemiStableExponent,
    Tail,
    beta_max,
    check_scaling_identity,
    eval_exponent,
    invert_exponent,
    make_exponent,
)
from harrisar.kernels import BACKEND
from harrisar.processes import Combiner, CoinMode, SchemeSpec, simulate, simulate_ensemble, step, thin

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Combiner",
    "CoinMode",
    "DomainError",
    "ParameterError",
    "RangeError",
    "SchemeSpec",
    "SemiStableExponent",
    "Tail",
    "beta_max",
    "check_scaling_identity",
    "eval_exponent",
    "invert_exponent",
    "make_exponent",
    "simulate",
    "simulate_ensemble",
    "step",
    "thin",
]
