"""AR(1) schemes built from k independent component chains.

Each component follows ``Y[n] = b * Y[n-1] (op) eps[n]`` where ``op`` is
``+``, ``max``, ``min`` or ``+`` after binomial thinning. In randomized
schemes the innovation enters only with probability ``1 - p``; the scaled
previous value is always kept. The observed series is the fold of the k
components with the same operation.

Random streams: path ``r`` of a run with master seed ``s`` draws everything
from ``default_rng(SeedSequence(s, spawn_key=(r,)))`` in a fixed order
(initial values, then the innovation block of shape (steps, k), then the
coin block, then thinning draws step by step). A path's values therefore do
not depend on how many other paths are simulated or in which order.
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from harrisar import kernels
from harrisar.exponent import DomainError, ParameterError


class Combiner(str, enum.Enum):
    ADD = "add"
    MAX = "max"
    MIN = "min"
    THINNED_ADD = "thinned_add"


class CoinMode(str, enum.Enum):
    SHARED = "shared"
    PER_COMPONENT = "per_component"


_OPS = {Combiner.ADD: kernels.OP_ADD, Combiner.MAX: kernels.OP_MAX, Combiner.MIN: kernels.OP_MIN}
INNOVATION_DRAW = "innovation"


@dataclass(frozen=True, eq=False)
class SchemeSpec:
    combiner: Combiner
    b: float
    innovation: object
    k: int = 1
    randomized: bool = False
    p: float | None = None
    init: object = INNOVATION_DRAW
    coin_mode: CoinMode = CoinMode.SHARED
    burn_in: int = 0

    def __post_init__(self):
        object.__setattr__(self, "combiner", Combiner(self.combiner))
        object.__setattr__(self, "coin_mode", CoinMode(self.coin_mode))
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        b = self.b
        if self.combiner in (Combiner.ADD, Combiner.THINNED_ADD):
            if not 0 <= b <= 1:
                raise ParameterError(f"{self.combiner.value} scheme needs 0 <= b <= 1, got {b}")
        elif self.combiner is Combiner.MAX:
            if not b > 0:
                raise ParameterError(f"max scheme needs b > 0, got {b}")
        elif not b > 1:
            raise ParameterError(f"min scheme needs b > 1, got {b}")
        if self.randomized:
            if self.p is None or not 0 <= self.p <= 1:
                raise ParameterError(f"randomized scheme needs p in [0, 1], got {self.p}")
        elif self.p is not None:
            raise ParameterError("p is only meaningful for randomized schemes")
        if self.burn_in < 0:
            raise ParameterError("burn_in must be >= 0")
        if not hasattr(self.innovation, "sample"):
            raise ParameterError("innovation law must provide sample(rng, size)")
        if not (isinstance(self.init, str) and self.init == INNOVATION_DRAW):
            vals = np.asarray(self.init, dtype=float)
            if vals.shape[-1] != self.k:
                raise ParameterError(f"custom init must have {self.k} components")
            object.__setattr__(self, "init", vals)

    @property
    def integer_valued(self) -> bool:
        return self.combiner is Combiner.THINNED_ADD

    def fold(self, values, axis=-1):
        return aggregate(values, self.combiner, axis=axis)


@dataclass(frozen=True, eq=False)
class Trajectory:
    components: np.ndarray = field(repr=False)  # (n_steps + 1, k)
    aggregate: np.ndarray = field(repr=False)  # (n_steps + 1,)
    seed: int
    path: int


@dataclass(frozen=True, eq=False)
class Ensemble:
    components: np.ndarray = field(repr=False)  # (n_paths, n_steps + 1, k)
    aggregate: np.ndarray = field(repr=False)  # (n_paths, n_steps + 1)
    seed: int

    @property
    def n_paths(self) -> int:
        return self.components.shape[0]

    def trajectories(self) -> list[Trajectory]:
        return [
            Trajectory(self.components[r], self.aggregate[r], self.seed, r) for r in range(self.n_paths)
        ]

    def marginal(self, n: int) -> np.ndarray:
        """Aggregate values at time ``n`` across paths."""
        return self.aggregate[:, n]


def aggregate(components, combiner, axis=-1):
    """Pointwise fold of component values."""
    combiner = Combiner(combiner)
    components = np.asarray(components)
    if components.shape[axis] == 0:
        raise ValueError("need at least one component")
    if combiner is Combiner.MAX:
        return components.max(axis=axis)
    if combiner is Combiner.MIN:
        return components.min(axis=axis)
    return components.sum(axis=axis)


def thin(b, x, rng):
    """Binomial thinning ``b o x``: sum of ``x`` Bernoulli(b) variables."""
    x = np.asarray(x)
    if np.any(x < 0) or not np.all(np.equal(np.mod(x, 1), 0)):
        raise DomainError("thinning needs nonnegative integers")
    if not 0 <= b <= 1:
        raise DomainError(f"thinning probability must lie in [0, 1], got {b}")
    out = rng.binomial(x.astype(np.int64), b)
    return out if np.ndim(out) else int(out)


def path_rng(seed: int, path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(path,)))


def _coins(spec: SchemeSpec, rng, n_steps):
    """Boolean (n_steps, k) mask: True where the innovation is applied."""
    if not spec.randomized:
        return np.ones((n_steps, spec.k), dtype=bool)
    width = 1 if spec.coin_mode is CoinMode.SHARED else spec.k
    apply = rng.random((n_steps, width)) >= spec.p
    return np.broadcast_to(apply, (n_steps, spec.k))


def _check_support(spec: SchemeSpec, values, what):
    values = np.asarray(values)
    if spec.combiner in (Combiner.MIN, Combiner.THINNED_ADD) and np.any(values < 0):
        raise DomainError(f"{spec.combiner.value} scheme needs nonnegative {what}")
    if spec.integer_valued and not np.all(np.equal(np.mod(values, 1), 0)):
        raise DomainError(f"thinned scheme needs integer {what}")


def _initial(spec: SchemeSpec, rng, path):
    if isinstance(spec.init, str):
        return np.asarray(spec.innovation.sample(rng, spec.k), dtype=float)
    vals = np.asarray(spec.init, dtype=float)
    return vals[path] if vals.ndim == 2 else vals


def step(spec: SchemeSpec, state, rng):
    """One transition of all k components."""
    state = np.asarray(state, dtype=float)
    if state.shape != (spec.k,):
        raise ValueError(f"state must have length {spec.k}")
    _check_support(spec, state, "state")
    eps = np.asarray(spec.innovation.sample(rng, spec.k), dtype=float)
    apply = _coins(spec, rng, 1)[0]
    if spec.combiner is Combiner.THINNED_ADD:
        _check_support(spec, eps, "innovations")
        kept = thin(spec.b, state, rng)
        return np.where(apply, kept + eps, kept).astype(np.int64)
    _check_support(spec, eps, "innovations")
    out = kernels.ar_recursion(_OPS[spec.combiner], spec.b, state[None, :], eps[None, None, :], apply[None, None, :])
    return out[1, 0]


def simulate_ensemble(spec: SchemeSpec, n_steps: int, n_paths: int, seed: int) -> Ensemble:
    if n_steps < 1 or n_paths < 1:
        raise ValueError("need n_steps >= 1 and n_paths >= 1")
    total = n_steps + spec.burn_in
    k = spec.k
    y0 = np.empty((n_paths, k))
    innov = np.empty((total, n_paths, k))
    apply = np.empty((total, n_paths, k), dtype=bool)
    rngs = []
    for r in range(n_paths):
        rng = path_rng(seed, r)
        y0[r] = _initial(spec, rng, r)
        innov[:, r, :] = np.asarray(spec.innovation.sample(rng, (total, k)), dtype=float)
        apply[:, r, :] = _coins(spec, rng, total)
        rngs.append(rng)
    _check_support(spec, y0, "initial values")
    _check_support(spec, innov, "innovations")

    if spec.combiner is Combiner.THINNED_ADD:
        states = np.empty((total + 1, n_paths, k), dtype=np.int64)
        states[0] = y0.astype(np.int64)
        eps = innov.astype(np.int64)
        for r, rng in enumerate(rngs):
            y = states[0, r]
            for n in range(total):
                kept = rng.binomial(y, spec.b)
                y = np.where(apply[n, r], kept + eps[n, r], kept)
                states[n + 1, r] = y
    else:
        states = kernels.ar_recursion(_OPS[spec.combiner], spec.b, y0, innov, apply)

    comps = np.ascontiguousarray(np.moveaxis(states[spec.burn_in :], 1, 0))
    return Ensemble(components=comps, aggregate=aggregate(comps, spec.combiner), seed=seed)


def simulate(spec: SchemeSpec, n_steps: int, n_paths: int, seed: int) -> list[Trajectory]:
    return simulate_ensemble(spec, n_steps, n_paths, seed).trajectories()


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % v


def write_trajectories_csv(ensemble: Ensemble, path, comment: str | None = None):
    """CSV with columns ``path, n, component_1..component_k, aggregate``."""
    k = ensemble.components.shape[2]
    with open(path, "w", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        writer.writerow(["path", "n"] + [f"component_{i + 1}" for i in range(k)] + ["aggregate"])
        for r in range(ensemble.n_paths):
            comps = ensemble.components[r]
            agg = ensemble.aggregate[r]
            for n in range(comps.shape[0]):
                writer.writerow([r, n] + [_fmt(v) for v in comps[n]] + [_fmt(agg[n])])
