"""Semi-stable exponent functions.

A semi-stable exponent is ``psi(x) = lam * x**(+-alpha) * h(ln x)`` where ``h``
is positive and periodic with period ``|ln b|``. Here ``h`` is fixed to the
smooth representative ``h(u) = exp(beta * sin(2*pi*u / |ln b|))``, so that

    psi(x) = a * psi(scale * x),   a = b**(-alpha)

holds exactly, with ``scale = b`` for increasing exponents and
``scale = 1/b`` for decreasing (Frechet-type) ones.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from harrisar import kernels

#: slack subtracted from the monotonicity bound on ``|beta|``
EPS_MONO = 1e-9
#: absolute floor for relative residuals
RESIDUAL_FLOOR = 1e-300

_LOG_MAX = math.log(np.finfo(float).max)
_LOG_TINY = math.log(np.finfo(float).tiny)


class ParameterError(ValueError):
    """Invalid law or exponent parameters."""


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class RangeError(ValueError):
    """Value outside the representable range of an exponent."""


class Tail(str, enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


def beta_bound(alpha: float, b: float) -> float:
    """Largest ``|beta|`` keeping ``psi`` strictly monotone: ``alpha*|ln b|/(2 pi)``."""
    return alpha * abs(math.log(b)) / (2.0 * math.pi)


def beta_max(alpha: float, b: float) -> float:
    """Admissible ``|beta|`` after subtracting :data:`EPS_MONO`."""
    return beta_bound(alpha, b) - EPS_MONO


@dataclass(frozen=True)
class SemiStableExponent:
    lam: float
    alpha: float
    beta: float
    b: float
    tail: Tail = Tail.INCREASING

    def __post_init__(self):
        object.__setattr__(self, "tail", Tail(self.tail))
        for name in ("lam", "alpha", "beta", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.lam <= 0:
            raise ParameterError(f"lambda must be positive, got {self.lam}")
        if self.alpha <= 0:
            raise ParameterError(f"alpha must be positive, got {self.alpha}")
        if not 0 < self.b < 1:
            raise ParameterError(f"b must lie in (0, 1), got {self.b}")
        bound = beta_bound(self.alpha, self.b)
        if abs(self.beta) > bound - EPS_MONO:
            raise ParameterError(
                f"|beta| = {abs(self.beta):.6g} breaks monotonicity; "
                f"need |beta| <= alpha*|ln b|/(2 pi) = {bound:.6g} "
                f"(minus slack {EPS_MONO:g})"
            )

    @property
    def sign(self) -> int:
        return 1 if self.tail is Tail.INCREASING else -1

    @property
    def a(self) -> float:
        return self.b ** (-self.alpha)

    @property
    def period(self) -> float:
        return abs(math.log(self.b))

    @property
    def omega(self) -> float:
        return 2.0 * math.pi / self.period

    @property
    def scale(self) -> float:
        """Argument multiplier in ``psi(x) = a * psi(scale * x)``."""
        return self.b if self.tail is Tail.INCREASING else 1.0 / self.b

    def h(self, u):
        return np.exp(self.beta * np.sin(self.omega * np.asarray(u, dtype=float)))

    def log_eval(self, x):
        """``ln psi(x)`` for ``x > 0``."""
        x = np.asarray(x, dtype=float)
        if np.any(~(x > 0)):
            raise DomainError("psi is defined for x > 0 only")
        u = np.log(x)
        return math.log(self.lam) + self.sign * self.alpha * u + self.beta * np.sin(self.omega * u)

    def __call__(self, x):
        out = np.exp(self.log_eval(x))
        return out if out.ndim else float(out)

    def eval_at_zero_ok(self, x):
        """Evaluate with the limiting values at ``x = 0`` and ``x = inf``."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0) or np.any(np.isnan(x)):
            raise DomainError("psi needs x >= 0")
        out = np.empty_like(x)
        zero, inf = x == 0, np.isinf(x)
        inc = self.tail is Tail.INCREASING
        out[zero] = 0.0 if inc else np.inf
        out[inf] = np.inf if inc else 0.0
        mid = ~(zero | inf)
        if np.any(mid):
            out[mid] = np.exp(self.log_eval(x[mid]))
        return out if out.ndim else float(out)

    def complex_eval(self, z):
        """Analytic continuation through the principal logarithm."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        nz = z != 0
        if self.tail is Tail.DECREASING and not np.all(nz):
            raise DomainError("decreasing psi has a pole at 0")
        lz = np.log(z[nz])
        with np.errstate(over="ignore", invalid="ignore"):
            out[nz] = self.lam * np.exp(self.sign * self.alpha * lz + self.beta * np.sin(self.omega * lz))
        return out

    def invert(self, y):
        """Return ``x`` with ``psi(x) = y``.

        Works in log space: ``v = ln x`` solves
        ``alpha*v + beta'*sin(omega*v) = ln(y/lam)`` with ``beta' = +-beta``.
        """
        y_arr = np.asarray(y, dtype=float)
        if np.any(~(y_arr > 0)) or np.any(~np.isfinite(y_arr)):
            raise RangeError("psi^-1 needs finite y > 0")
        target = np.log(y_arr) - math.log(self.lam)
        if self.tail is Tail.INCREASING:
            v = kernels.solve_log_periodic(target, self.alpha, self.beta, self.omega)
        else:
            v = -kernels.solve_log_periodic(target, self.alpha, -self.beta, self.omega)
        if np.any(v > _LOG_MAX) or np.any(v < _LOG_TINY):
            raise RangeError("psi^-1(y) is not representable as a double")
        x = np.exp(v).reshape(y_arr.shape)
        return x if x.ndim else float(x)

    def natural_scale(self) -> float:
        """The point where ``psi = 1``."""
        return float(self.invert(1.0))


def make_exponent(lam, alpha, beta=0.0, b=0.5, tail=Tail.INCREASING) -> SemiStableExponent:
    return SemiStableExponent(float(lam), float(alpha), float(beta), float(b), Tail(tail))


def eval_exponent(exp: SemiStableExponent, x):
    return exp(x)


def invert_exponent(exp: SemiStableExponent, y):
    return exp.invert(y)


def check_scaling_identity(exp: SemiStableExponent, grid, a=None, scale=None) -> float:
    """Max relative residual of ``psi(x) = a * psi(scale * x)`` over ``grid``.

    ``a`` and ``scale`` default to the exponent's own constants; passing other
    values measures how far they are from satisfying the identity.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be nonempty")
    a = exp.a if a is None else a
    scale = exp.scale if scale is None else scale
    lhs = exp(grid)
    rhs = a * exp(scale * grid)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(lhs, RESIDUAL_FLOOR)))
