"""Stable variates and gamma-stable mixtures.

Conventions: symmetric stable draws have CF ``exp(-|t|**alpha)``, positive
stable draws have LT ``exp(-s**alpha)``.
"""
import numpy as np

from harrisar.exponent import ParameterError


def symmetric_stable(alpha, rng, size=None):
    """Chambers-Mallows-Stuck draw with CF ``exp(-|t|**alpha)``, ``0 < alpha <= 2``."""
    if not 0 < alpha <= 2:
        raise ParameterError(f"symmetric stable needs alpha in (0, 2], got {alpha}")
    v = rng.uniform(-np.pi / 2, np.pi / 2, size)
    w = rng.standard_exponential(size)
    if alpha == 1:
        return np.tan(v)
    return (
        np.sin(alpha * v)
        / np.cos(v) ** (1.0 / alpha)
        * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha)
    )


def positive_stable(alpha, rng, size=None):
    """Kanter's draw with LT ``exp(-s**alpha)``, ``0 < alpha <= 1``."""
    if not 0 < alpha <= 1:
        raise ParameterError(f"positive stable needs alpha in (0, 1], got {alpha}")
    if alpha == 1:
        return np.ones(size) if size is not None else 1.0
    u = rng.uniform(0.0, np.pi, size)
    w = rng.standard_exponential(size)
    return (
        np.sin(alpha * u)
        / np.sin(u) ** (1.0 / alpha)
        * (np.sin((1.0 - alpha) * u) / w) ** ((1.0 - alpha) / alpha)
    )


def _check_common(lam, k):
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k}")


def sample_linnik(alpha, lam, k, rng, size=None):
    """Generalized Linnik draw ``G**(1/alpha) * S``.

    ``G ~ gamma(shape 1/k, scale lam)`` and ``S`` symmetric stable, giving
    CF ``(1 + lam |t|**alpha)**(-1/k)``.
    """
    if not 0 < alpha <= 2:
        raise ParameterError(f"Linnik law needs alpha in (0, 2], got {alpha}")
    _check_common(lam, k)
    g = rng.gamma(1.0 / k, lam, size)
    return g ** (1.0 / alpha) * symmetric_stable(alpha, rng, size)


def sample_ml_positive(alpha, lam, k, rng, size=None):
    """Generalized Mittag-Leffler draw with LT ``(1 + lam s**alpha)**(-1/k)``."""
    if not 0 < alpha <= 1:
        raise ParameterError(f"Mittag-Leffler law needs alpha in (0, 1], got {alpha}")
    _check_common(lam, k)
    g = rng.gamma(1.0 / k, lam, size)
    return g ** (1.0 / alpha) * positive_stable(alpha, rng, size)
