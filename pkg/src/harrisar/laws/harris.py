"""Harris(1, a, k) law on {1, 1+k, 1+2k, ...}."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from harrisar.exponent import DomainError, ParameterError
from harrisar.laws.lattice import LatticePmf


def harris_compose(z, a, k):
    """Harris p.g.f. ``z / (a - (a-1) z**k)**(1/k)``; accepts complex ``z``.

    For ``|z| <= 1`` the base ``a - (a-1) z**k`` has real part at least 1, so
    the principal branch of the root is the analytic one.
    """
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return z * np.exp(-np.log(a - (a - 1.0) * z**k) / k)
    return z * (a - (a - 1.0) * z**k) ** (-1.0 / k)


def harris_tail_factor(z, a, k):
    """``P_H(z) / z``: p.g.f. of ``N - 1``, which lives on {0, k, 2k, ...}."""
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return np.exp(-np.log(a - (a - 1.0) * z**k) / k)
    return (a - (a - 1.0) * z**k) ** (-1.0 / k)


@dataclass(frozen=True)
class HarrisLaw:
    a: float
    k: int = 1

    def __post_init__(self):
        if not self.a > 1:
            raise ParameterError(f"Harris law needs a > 1, got {self.a}")
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"Harris law needs a positive integer k, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def success_prob(self) -> float:
        return 1.0 / self.a

    def pgf(self, s):
        s_arr = np.asarray(s, dtype=float)
        if np.any((s_arr < 0) | (s_arr > 1)) or np.any(np.isnan(s_arr)):
            raise DomainError("Harris p.g.f. is evaluated on [0, 1]")
        out = harris_compose(s_arr, self.a, self.k)
        return out if np.ndim(out) else float(out)

    transform = pgf

    def nb_weights(self, m_max: int) -> np.ndarray:
        """``P(N = 1 + k*m)`` for ``m = 0..m_max``.

        Negative-binomial recursion with shape ``1/k`` and success
        probability ``1/a``.
        """
        r = 1.0 / self.k
        q = 1.0 - 1.0 / self.a
        w = np.empty(m_max + 1)
        w[0] = self.a ** (-r)
        for m in range(m_max):
            w[m + 1] = w[m] * (r + m) / (m + 1) * q
        return w

    def pmf(self, n_max: int) -> LatticePmf:
        if n_max < 1:
            raise DomainError("n_max must be at least 1")
        m_max = (n_max - 1) // self.k
        w = self.nb_weights(m_max)
        return LatticePmf(offset=1, stride=self.k, weights=w, truncation_mass=max(0.0, 1.0 - w.sum()))

    def sample_m(self, rng, size=None):
        """Draw ``M`` in ``N = 1 + k*M``."""
        return rng.negative_binomial(1.0 / self.k, 1.0 / self.a, size=size)

    def sample(self, rng, size=None):
        return 1 + self.k * self.sample_m(rng, size)


def harris_pgf(law: HarrisLaw, s):
    return law.pgf(s)


def harris_pmf(law: HarrisLaw, n_max: int) -> LatticePmf:
    return law.pmf(n_max)


def harris_sample(law: HarrisLaw, rng, size=None):
    return law.sample(rng, size)
