"""Distribution families built from a semi-stable exponent ``psi``.

Every family has transform ``(1 + psi(.))**(-1/k)`` in one slot (CF, LT,
p.g.f., survival function or distribution function), except the
max-semi-stable law whose d.f. is ``exp(-psi(x))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from harrisar.exponent import DomainError, ParameterError, SemiStableExponent, Tail
from harrisar.laws import stable
from harrisar.laws.cfinv import CFInversionTable, GilPelaezQuad, build_cf_table
from harrisar.laws.harris import HarrisLaw, harris_tail_factor
from harrisar.laws.lattice import LatticePmf, pmf_from_pgf, sample_lattice


def _check_k(k):
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k}")
    return int(k)


def _check_exponent(exp, tail, alpha_max=None, family=""):
    if not isinstance(exp, SemiStableExponent):
        raise ParameterError("exponent must be a SemiStableExponent")
    if exp.tail is not tail:
        raise ParameterError(f"{family} needs a {tail.value} exponent")
    if alpha_max is not None and exp.alpha > alpha_max:
        raise ParameterError(f"{family} needs alpha in (0, {alpha_max}], got {exp.alpha}")


def neg_root(psi, k):
    """``(1 + psi)**(-1/k)``, real or complex."""
    with np.errstate(invalid="ignore"):
        return np.exp(-np.log1p(np.asarray(psi)) / k)


def _scalar(out):
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class GenSemiAlphaLaplaceLaw:
    """CF ``(1 + psi(|t|))**(-1/k)``, ``alpha`` in (0, 2]."""

    exponent: SemiStableExponent
    k: int = 1

    transform_kind = "cf"

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.INCREASING, 2.0, "generalized semi-alpha-Laplace")
        object.__setattr__(self, "k", _check_k(self.k))

    def cf(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        if np.any(np.isnan(t)):
            raise DomainError("CF argument must be real")
        return _scalar(neg_root(self.exponent.eval_at_zero_ok(t), self.k))

    transform = cf

    def cf_scalar(self, t: float) -> float:
        """Scalar CF on plain floats; the quadrature hot path."""
        t = abs(t)
        if t == 0.0:
            return 1.0
        e = self.exponent
        u = math.log(t)
        psi = e.lam * math.exp(e.alpha * u + e.beta * math.sin(e.omega * u))
        return math.exp(-math.log1p(psi) / self.k)

    @property
    def is_power_law(self) -> bool:
        return self.exponent.beta == 0.0

    def cf_table(self, nodes: int = 4096) -> CFInversionTable:
        return self._tables(nodes)

    @cached_property
    def _table_cache(self):
        return {}

    def _tables(self, nodes):
        cache = self._table_cache
        if nodes not in cache:
            cache[nodes] = build_cf_table(
                self.cf_scalar,
                nodes=nodes,
                scale=self.exponent.natural_scale(),
                quad=GilPelaezQuad(),
                scalar=True,
                symmetric=True,
            )
        return cache[nodes]

    def sample(self, rng, size=None):
        e = self.exponent
        if self.is_power_law:
            return stable.sample_linnik(e.alpha, e.lam, self.k, rng, size)
        return self.cf_table().sample(rng, size)


@dataclass(frozen=True)
class GenSemiMLLaw:
    """LT ``(1 + psi(s))**(-1/k)`` on ``s >= 0``, ``alpha`` in (0, 1]."""

    exponent: SemiStableExponent
    k: int = 1

    transform_kind = "lt"

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.INCREASING, 1.0, "generalized semi-Mittag-Leffler")
        object.__setattr__(self, "k", _check_k(self.k))

    def lt(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < 0) or np.any(np.isnan(s)):
            raise DomainError("LT argument must be >= 0")
        return _scalar(neg_root(self.exponent.eval_at_zero_ok(s), self.k))

    transform = lt

    def sample(self, rng, size=None):
        e = self.exponent
        if e.beta != 0.0:
            raise NotImplementedError(
                "exact sampling of the positive semi-Mittag-Leffler law needs beta = 0"
            )
        return stable.sample_ml_positive(e.alpha, e.lam, self.k, rng, size)


@dataclass(frozen=True)
class DiscreteGenSemiMLLaw:
    """p.g.f. ``(1 + psi(1 - s**m))**(-1/k)`` on {0, m, 2m, ...}."""

    exponent: SemiStableExponent
    k: int = 1
    m: int = 1

    transform_kind = "pgf"

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.INCREASING, 1.0, "discrete generalized semi-Mittag-Leffler")
        object.__setattr__(self, "k", _check_k(self.k))
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"gap m must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    def base_pgf(self, z):
        """p.g.f. of ``X / m`` (the ungapped law); real or complex ``z``."""
        z = np.asarray(z)
        if np.iscomplexobj(z):
            return neg_root(self.exponent.complex_eval(1.0 - z), self.k)
        return neg_root(self.exponent.eval_at_zero_ok(1.0 - z), self.k)

    def pgf(self, s):
        s = np.asarray(s)
        if not np.iscomplexobj(s):
            s = s.astype(float)
            if np.any((s < 0) | (s > 1)) or np.any(np.isnan(s)):
                raise DomainError("p.g.f. argument must lie in [0, 1]")
        return _scalar(self.base_pgf(s**self.m))

    transform = pgf

    def pmf(self, N: int = 2**14, n_max: int | None = None) -> LatticePmf:
        return pmf_from_pgf(self.pgf, N=N, n_max=n_max)

    def sample(self, rng, size=None):
        e = self.exponent
        if e.beta == 0.0:
            # mixed Poisson: E s^Pois(Y) = E exp(-Y (1 - s)) = LT_Y(1 - s)
            y = stable.sample_ml_positive(e.alpha, e.lam, self.k, rng, size)
            return self.m * rng.poisson(y)
        return sample_lattice(self._lattice, rng, size)

    @cached_property
    def _lattice(self) -> LatticePmf:
        return self.pmf(N=2**16, n_max=2**16 - 1)


@dataclass(frozen=True)
class GenSemiParetoLaw:
    """Survival function ``R(x) = (1 + psi(x))**(-1/k)``, ``x > 0``."""

    exponent: SemiStableExponent
    k: int = 1

    transform_kind = "sf"

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.INCREASING, None, "generalized semi-Pareto")
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def p(self) -> float:
        return 1.0 / self.exponent.a

    def sf(self, x):
        return _scalar(neg_root(self.exponent.eval_at_zero_ok(x), self.k))

    transform = sf

    def cdf(self, x):
        psi = self.exponent.eval_at_zero_ok(x)
        return _scalar(-np.expm1(-np.log1p(psi) / self.k))

    def inverse_transform(self, u):
        """``x`` with ``R(x) = u`` for ``u`` in (0, 1]."""
        u = np.asarray(u, dtype=float)
        y = np.expm1(-self.k * np.log(u))
        out = np.zeros_like(y)
        pos = y > 0
        if np.any(pos):
            out[pos] = self.exponent.invert(y[pos])
        return _scalar(out)

    def sample(self, rng, size=None):
        return self.inverse_transform(1.0 - rng.random(size))


@dataclass(frozen=True)
class GammaMaxSemiStableLaw:
    """Distribution function ``F(x) = (1 + psi(x))**(-1/k)`` with decreasing ``psi``."""

    exponent: SemiStableExponent
    k: int = 1

    transform_kind = "df"

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.DECREASING, None, "gamma-max-semi-stable")
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def c(self) -> float:
        return 1.0 / self.exponent.b

    def cdf(self, x):
        return _scalar(neg_root(self.exponent.eval_at_zero_ok(x), self.k))

    transform = cdf

    def inverse_transform(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            y = np.expm1(-self.k * np.log(u))
        out = np.full_like(y, np.inf)
        out[np.isinf(y)] = 0.0
        mid = (y > 0) & np.isfinite(y)
        if np.any(mid):
            out[mid] = self.exponent.invert(y[mid])
        return _scalar(out)

    def sample(self, rng, size=None):
        return self.inverse_transform(rng.random(size))


@dataclass(frozen=True)
class MaxSemiStableLaw:
    """Frechet-type max-semi-stable d.f. ``exp(-psi(x))``, ``x > 0``."""

    exponent: SemiStableExponent

    transform_kind = "df"
    k = 1

    def __post_init__(self):
        _check_exponent(self.exponent, Tail.DECREASING, None, "max-semi-stable")

    def cdf(self, x):
        return _scalar(np.exp(-self.exponent.eval_at_zero_ok(x)))

    transform = cdf

    def inverse_transform(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            y = -np.log(u)
        out = np.full_like(y, np.inf)
        out[np.isinf(y)] = 0.0
        mid = (y > 0) & np.isfinite(y)
        if np.any(mid):
            out[mid] = self.exponent.invert(y[mid])
        return _scalar(out)

    def sample(self, rng, size=None):
        return self.inverse_transform(rng.random(size))


@dataclass(frozen=True)
class HarrisCompoundLaw:
    """``scale * fold(X_1, ..., X_{kM})`` with ``M ~ NB(1/k, 1/a)``, X_j i.i.d. ``base``.

    This is the cofactor in ``T(x) = T(scaled x) * T0(x)`` for a law that is
    Harris(1, a, k)-stable: ``T0 = (a - (a-1) T(scaled)**k)**(-1/k)``. With
    ``op='sum'`` it is the additive SSD innovation, with ``'min'``/``'max'``
    the extreme analogues. An empty fold is 0 for sums, ``+inf`` for minima
    and ``-inf`` for maxima.
    """

    base: object
    a: float
    k: int
    scale: float
    op: str = "sum"

    def __post_init__(self):
        HarrisLaw(self.a, self.k)
        if self.op not in ("sum", "max", "min"):
            raise ParameterError(f"op must be sum, max or min, got {self.op!r}")

    def transform(self, x):
        x = np.asarray(x, dtype=float)
        # sums act on the CF argument, extremes on the d.f./s.f. argument
        inner = self.base.transform(self.scale * x if self.op == "sum" else x / self.scale)
        return _scalar(harris_tail_factor(np.asarray(inner), self.a, self.k))

    def sample(self, rng, size=None):
        n = 1 if size is None else int(np.prod(size))
        counts = self.k * HarrisLaw(self.a, self.k).sample_m(rng, n)
        total = int(counts.sum())
        draws = np.asarray(self.base.sample(rng, total), dtype=float) if total else np.empty(0)
        empty = {"sum": 0.0, "max": -np.inf, "min": np.inf}[self.op]
        out = np.full(n, empty)
        nz = counts > 0
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])[nz]
        ufunc = {"sum": np.add, "max": np.maximum, "min": np.minimum}[self.op]
        if total:
            out[nz] = ufunc.reduceat(draws, starts)
        out = self.scale * out
        return float(out[0]) if size is None else out.reshape(size)


def eval_transform(law, point):
    """The law's defining transform (CF, LT, p.g.f., s.f. or d.f.)."""
    return law.transform(point)


def sample_sf_inversion(law, rng, size=None):
    """Exact inversion draws for the s.f./d.f.-defined families."""
    if not isinstance(law, (GenSemiParetoLaw, GammaMaxSemiStableLaw, MaxSemiStableLaw)):
        raise TypeError(f"no closed-form inversion for {type(law).__name__}")
    return law.sample(rng, size)
