"""Lattice pmfs and coefficient extraction from p.g.f.s."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

#: coefficients in [-NEG_TOL, 0) are rounding noise and get clamped
NEG_TOL = 1e-10
#: sample_lattice refuses tables with more missing mass than this
MAX_SAMPLING_TRUNCATION = 1e-9


class InvalidPGFError(ValueError):
    """Raised when DFT-extracted coefficients are significantly negative.

    The raw coefficients are kept on the exception so callers can use the
    failure as a detector rather than only as an error.
    """

    def __init__(self, message, coefficients):
        super().__init__(message)
        self.coefficients = coefficients
        self.min_coefficient = float(np.min(coefficients))


class TruncationError(ValueError):
    """A lattice table misses too much probability mass."""


@dataclass(frozen=True, eq=False)
class LatticePmf:
    """Probabilities ``weights[i]`` at ``offset + stride*i``."""

    offset: int
    stride: int
    weights: np.ndarray = field(repr=False)
    truncation_mass: float = 0.0

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1:
            raise ValueError("weights must be one-dimensional")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if self.stride < 1 or self.offset < 0:
            raise ValueError("need offset >= 0 and stride >= 1")
        if self.truncation_mass < 0:
            raise ValueError("truncation_mass must be nonnegative")
        object.__setattr__(self, "weights", w)

    @property
    def values(self) -> np.ndarray:
        return self.offset + self.stride * np.arange(self.weights.size)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def mean(self) -> float:
        return float(np.dot(self.values, self.weights) / self.weights.sum())

    def dense(self, n_max: int | None = None) -> np.ndarray:
        """Probabilities indexed by value ``0..n_max``."""
        vals = self.values
        if n_max is None:
            n_max = int(vals[-1]) if vals.size else 0
        out = np.zeros(n_max + 1)
        keep = vals <= n_max
        out[vals[keep]] = self.weights[keep]
        return out

    @classmethod
    def from_dense(cls, probs, truncation_mass=None) -> "LatticePmf":
        probs = np.asarray(probs, dtype=float)
        if truncation_mass is None:
            truncation_mass = max(0.0, 1.0 - probs.sum())
        return cls(offset=0, stride=1, weights=probs, truncation_mass=truncation_mass)

    def pgf(self, s):
        """Polynomial p.g.f. of the stored atoms (no tail)."""
        s = np.asarray(s)
        powers = s[..., None] ** self.values
        return powers @ self.weights

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["value", "probability"])
            for v, p in zip(self.values, self.weights):
                writer.writerow([int(v), repr(float(p))])


def pmf_from_pgf(pgf, N: int = 2**14, n_max: int | None = None, neg_tol: float = NEG_TOL) -> LatticePmf:
    """Extract pmf coefficients by a DFT on the unit circle.

    ``weights[n] = (1/N) sum_j pgf(w**j) w**(-j n)`` with ``w = exp(2 pi i/N)``.
    Mass beyond ``N`` aliases back onto the low coefficients; the mass beyond
    ``n_max`` that is still inside the window is reported as
    ``truncation_mass``.
    """
    if N < 2 or N & (N - 1):
        raise ValueError("N must be a power of two")
    if n_max is None:
        n_max = N - 1
    if not 0 <= n_max < N:
        raise ValueError("need 0 <= n_max < N")
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    vals = np.asarray(pgf(roots), dtype=complex)
    coef = np.fft.fft(vals).real / N
    head = coef[: n_max + 1]
    if not np.all(np.isfinite(coef)):
        raise InvalidPGFError("p.g.f. produced non-finite values on the unit circle", coef)
    if head.min() < -neg_tol:
        bad = int(np.argmin(head))
        raise InvalidPGFError(
            f"coefficient {bad} is {head[bad]:.3e} < -{neg_tol:g}; not a p.g.f.", coef
        )
    weights = np.clip(head, 0.0, None)
    return LatticePmf(offset=0, stride=1, weights=weights, truncation_mass=max(0.0, 1.0 - weights.sum()))


def sample_lattice(pmf: LatticePmf, rng, size=None):
    if pmf.truncation_mass >= MAX_SAMPLING_TRUNCATION:
        raise TruncationError(
            f"truncation mass {pmf.truncation_mass:.3g} >= {MAX_SAMPLING_TRUNCATION:g}; "
            "extract with a larger n_max"
        )
    cdf = np.cumsum(pmf.weights)
    u = rng.random(size) * cdf[-1]
    idx = np.searchsorted(cdf, u, side="right")
    idx = np.minimum(idx, pmf.weights.size - 1)
    out = pmf.offset + pmf.stride * idx
    return out if np.ndim(out) else int(out)
