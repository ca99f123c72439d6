"""Numerical certificates for Harris-stability and AR(1) stationarity.

Residual checks compare a law's transform ``T`` with what a characterizing
identity predicts from ``T`` at a scaled argument. Scaling conventions
follow the scheme parameter ``b``:

* sums with CF/LT: ``T(b t)``
* sums on the integer lattice: ``Q(1 - b + b z)`` where ``Q`` is the p.g.f.
  of ``X/m`` and ``z = s**m`` (thinning inside the gap lattice)
* maxima (d.f.) and minima (s.f.): ``T(x / b)``
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import special

from harrisar import kernels
from harrisar.exponent import SemiStableExponent, Tail, beta_max, make_exponent
from harrisar.laws.families import (
    DiscreteGenSemiMLLaw,
    GammaMaxSemiStableLaw,
    GenSemiAlphaLaplaceLaw,
    GenSemiParetoLaw,
)
from harrisar.laws.harris import HarrisLaw, harris_compose, harris_tail_factor
from harrisar.laws.lattice import InvalidPGFError, LatticePmf, TruncationError, pmf_from_pgf

POSITIVE_THRESHOLD = 1e-11
NEGATIVE_THRESHOLD = 1e-4
DENOM_FLOOR = 1e-300
N_WORST = 5

_KIND_OF = {"cf": "sum", "lt": "sum", "pgf": "sum", "df": "max", "sf": "min"}


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``expect='below'``: passed iff ``max_residual <= threshold`` (residual and
    statistical checks). ``expect='above'``: negative controls, passed iff
    the residual exceeds the threshold.
    """

    check_name: str
    parameters: dict
    grid: dict
    max_residual: float
    threshold: float
    passed: bool
    details: list = field(default_factory=list)
    expect: str = "below"

    def to_dict(self):
        return _jsonable(asdict(self))

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _make_report(name, params, grid, points, residuals, threshold, expect="below", notes=()):
    residuals = np.asarray(residuals, dtype=float)
    points = np.asarray(points)
    finite = np.isfinite(residuals)
    if not finite.all():
        max_res = math.inf
    else:
        max_res = float(residuals.max()) if residuals.size else 0.0
    passed = max_res <= threshold if expect == "below" else max_res > threshold
    order = np.argsort(np.where(finite, residuals, np.inf))[::-1][:N_WORST]
    details = [{"point": points[i].item(), "residual": residuals[i].item()} for i in order]
    details.extend({"note": n} for n in notes)
    return VerificationReport(name, params, grid, max_res, threshold, bool(passed), details, expect)


# ---------------------------------------------------------------- grids


def standard_grid(law, points_per_decade: int = 256, decades: int = 4):
    """Log-spaced evaluation points centred on the law's natural scale.

    For p.g.f. laws the points are ``s = 1 - u`` with ``u`` log-spaced in
    ``[10**-decades, 1]``.
    """
    n = points_per_decade * decades
    if law.transform_kind == "pgf":
        u = np.logspace(-decades, 0, n)
        return 1.0 - u, {"kind": "1-s log-spaced", "decades": decades, "points_per_decade": points_per_decade}
    centre = law.exponent.natural_scale()
    pts = centre * np.logspace(-decades / 2, decades / 2, n)
    return pts, {"kind": "log-spaced", "centre": centre, "decades": decades, "points_per_decade": points_per_decade}


def _grid_or_default(law, grid):
    """``grid`` may be None, a dict of :func:`standard_grid` options or points."""
    if grid is None:
        return standard_grid(law)
    if isinstance(grid, dict):
        return standard_grid(law, **grid)
    pts = np.asarray(grid, dtype=float)
    return pts, {"kind": "custom", "n": int(pts.size), "min": float(pts.min()), "max": float(pts.max())}


def scaled_transform(law, points, b):
    """``T`` at the scaled argument for scheme parameter ``b``."""
    kind = law.transform_kind
    points = np.asarray(points)
    if kind in ("cf", "lt"):
        return law.transform(b * points)
    if kind == "pgf":
        m = getattr(law, "m", 1)
        z = points**m
        base = getattr(law, "base_pgf", None)
        if base is None:
            return law.transform(1.0 - b + b * z)
        return base(1.0 - b + b * z)
    return law.transform(points / b)


def _check_kind(law, kind):
    expected = _KIND_OF[law.transform_kind]
    if kind is None:
        return expected
    kind = kind.lower()
    if kind != expected:
        raise ValueError(f"{type(law).__name__} has a {law.transform_kind} transform; use kind={expected!r}")
    return kind


# ---------------------------------------------------------------- identities


def harris_fixed_point_residual(law, a, b, k, kind=None, grid=None, threshold=POSITIVE_THRESHOLD, expect="below"):
    """sup |T(x) - P_H(T(scaled x))| with ``P_H`` the Harris(1, a, k) p.g.f."""
    kind = _check_kind(law, kind)
    pts, gdesc = _grid_or_default(law, grid)
    t_here = np.asarray(law.transform(pts), dtype=float)
    t_scaled = np.asarray(scaled_transform(law, pts, b), dtype=float)
    res = np.abs(t_here - harris_compose(t_scaled, a, k))
    params = {"law": type(law).__name__, "a": a, "b": b, "k": k, "kind": kind}
    params.update(_law_params(law))
    return _make_report(f"harris_fixed_point[{kind}]", params, gdesc, pts, res, threshold, expect)


def stationarity_identity_residual(law, p, b, k, grid=None, threshold=POSITIVE_THRESHOLD, expect="below"):
    """sup |p T^k(scaled) + (1-p) T^k(scaled) T^k - T^k| for the randomized scheme."""
    kind = _KIND_OF[law.transform_kind]
    pts, gdesc = _grid_or_default(law, grid)
    tk = np.asarray(law.transform(pts), dtype=float) ** k
    sk = np.asarray(scaled_transform(law, pts, b), dtype=float) ** k
    res = np.abs(p * sk + (1.0 - p) * sk * tk - tk)
    params = {"law": type(law).__name__, "p": p, "b": b, "k": k, "kind": kind}
    params.update(_law_params(law))
    return _make_report(f"stationarity_identity[{kind}]", params, gdesc, pts, res, threshold, expect)


def _law_params(law):
    out = {}
    e = getattr(law, "exponent", None)
    if isinstance(e, SemiStableExponent):
        out.update(lam=e.lam, alpha=e.alpha, beta=e.beta, exponent_b=e.b, tail=e.tail.value)
    for name in ("k", "m"):
        if hasattr(law, name):
            out[f"law_{name}"] = getattr(law, name)
    return out


def joint_scale_residual(exponent: SemiStableExponent, b_values, grid=None, threshold=NEGATIVE_THRESHOLD):
    """Relative residual of ``psi(x) = b**(-alpha) psi(b x)`` jointly over ``b_values``.

    With two incommensurable scales only the pure power law satisfies both,
    so for ``beta != 0`` this is expected to exceed ``threshold``.
    """
    if grid is None:
        grid = exponent.natural_scale() * np.logspace(-2, 2, 1024)
    grid = np.asarray(grid, dtype=float)
    sgn = exponent.sign
    worst = np.zeros_like(grid)
    for b in b_values:
        lhs = exponent(grid)
        rhs = b ** (-sgn * exponent.alpha) * exponent(b**sgn * grid)
        worst = np.maximum(worst, np.abs(lhs - rhs) / np.maximum(lhs, DENOM_FLOOR))
    expect = "above" if exponent.beta != 0 else "below"
    params = {"b_values": list(b_values), "alpha": exponent.alpha, "beta": exponent.beta}
    return _make_report(
        "joint_scale", params, {"kind": "custom", "n": int(grid.size)}, grid, worst,
        threshold if expect == "above" else POSITIVE_THRESHOLD, expect,
    )


# ---------------------------------------------------------------- SSD residuals


def ssd_residual(law, scale, kind=None, grid=None, harris=None, N=2**14):
    """Residual factor ``r = T / T(scaled)`` and its necessary validity conditions.

    ``scale`` is ``b`` for CF/LT/p.g.f. laws (``0 < b < 1``), ``c < 1`` for
    survival functions and ``c > 1`` for distribution functions, with the
    scaled argument ``c x`` in the extreme cases. With ``harris=(a, k)`` the
    residual is also compared to the closed Harris-sum form
    ``(a - (a-1) T(scaled)**k)**(-1/k)``.

    Returns ``(report, table)`` where ``table`` maps ``points`` and
    ``residual`` to arrays (for p.g.f. laws also ``coefficients``).
    """
    tkind = law.transform_kind
    kind = (kind or tkind).lower()
    if kind != tkind:
        raise ValueError(f"{type(law).__name__} has a {tkind} transform, not {kind}")
    notes = []
    params = {"law": type(law).__name__, "scale": scale, "kind": kind}
    params.update(_law_params(law))

    if kind == "pgf":
        return _ssd_pgf(law, scale, harris, N, params)

    pts, gdesc = _grid_or_default(law, grid)
    if kind == "cf":
        pts = np.concatenate([-pts[::-1], [0.0], pts])
        num = np.asarray(law.transform(pts), dtype=complex)
        den = np.asarray(law.transform(scale * pts), dtype=complex)
    elif kind == "lt":
        pts = np.concatenate([[0.0], pts])
        num = np.asarray(law.transform(pts), dtype=float)
        den = np.asarray(law.transform(scale * pts), dtype=float)
    else:
        num = np.asarray(law.transform(pts), dtype=float)
        den = np.asarray(law.transform(scale * pts), dtype=float)
    ok = np.abs(den) >= DENOM_FLOOR
    if not ok.all():
        notes.append(f"{int((~ok).sum())} points with |T(scaled)| < {DENOM_FLOOR:g} excluded")
    pts, num, den = pts[ok], num[ok], den[ok]
    r = num / den
    viol = np.zeros(r.shape)

    if kind == "cf":
        viol = np.maximum(viol, np.abs(r) - 1.0)
        centre = np.flatnonzero(pts == 0)
        viol[centre] = np.maximum(viol[centre], np.abs(r[centre] - 1.0))
        viol = np.maximum(viol, np.abs(r - np.conj(r[::-1])))
        r_table = r
    else:
        r = r.real if np.iscomplexobj(r) else r
        viol = np.maximum(viol, np.maximum(r - 1.0, -r))
        step = np.diff(r)
        if kind in ("lt", "sf"):
            viol[1:] = np.maximum(viol[1:], step)
        else:
            viol[1:] = np.maximum(viol[1:], -step)
        r_table = r
        limit_pt = law.exponent.natural_scale() * (1e-200 if kind in ("lt", "sf") else 1e200)
        r_lim = float(law.transform(limit_pt)) / float(law.transform(scale * limit_pt))
        lim_err = abs(r_lim - 1.0)
        notes.append(f"limit r({'0+' if kind in ('lt', 'sf') else 'inf'}) = {r_lim!r}")
        if lim_err > 1e-9:
            viol = np.append(viol, lim_err)
            pts = np.append(pts, limit_pt)

    if harris is not None:
        a, k = harris
        closed = harris_tail_factor(np.asarray(den.real if kind == "cf" else den, dtype=float), a, k)
        gap = np.abs(np.asarray(r_table) - closed)
        viol[: gap.size] = np.maximum(viol[: gap.size], np.where(gap > POSITIVE_THRESHOLD, gap, 0.0))
        notes.append(f"max |r - Harris-sum form| = {float(gap.max()):.3e}")
        params["harris"] = {"a": a, "k": k}

    report = _make_report(f"ssd_residual[{kind}]", params, gdesc, pts, viol, 1e-12, notes=notes)
    return report, {"points": pts[: np.size(r_table)], "residual": r_table}


def _ssd_pgf(law, b, harris, N, params):
    m = getattr(law, "m", 1)
    base = getattr(law, "base_pgf", None)

    def residual_pgf(z):
        zm = z**m
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            if base is None:
                return law.transform(z) / law.transform(1.0 - b + b * z)
            return base(zm) / base(1.0 - b + b * zm)

    notes = []
    gdesc = {"kind": "unit-circle DFT", "N": N}
    try:
        coef = pmf_from_pgf(residual_pgf, N=N).weights
        raw = coef
    except InvalidPGFError as err:
        notes.append(str(err))
        raw = err.coefficients
        coef = raw
    min_coef = float(np.min(raw))
    # the raw coefficients sum to r(1) = 1 exactly when r is a p.g.f.
    total = float(np.sum(raw))
    if not (math.isfinite(min_coef) and math.isfinite(total)):
        viol = [math.inf, math.inf]
    else:
        viol = [max(0.0, -min_coef - 1e-10), max(0.0, abs(total - 1.0) - 1e-10)]
    labels = ["min_coefficient", "sum_minus_one"]
    notes.append(f"min coefficient {min_coef:.3e}, sum {total!r}")
    if harris is not None:
        a, k = harris
        s = np.linspace(0.0, 0.999, 512)
        zm = s**m
        inner = base(1.0 - b + b * zm) if base is not None else law.transform(1.0 - b + b * s)
        gap = float(np.max(np.abs(residual_pgf(s) - harris_tail_factor(np.asarray(inner), a, k))))
        viol.append(max(0.0, gap - POSITIVE_THRESHOLD))
        labels.append("harris_form_gap")
        notes.append(f"max |r - Harris-sum form| on [0, 0.999] = {gap:.3e}")
        params["harris"] = {"a": a, "k": k}
    report = _make_report("ssd_residual[pgf]", params, gdesc, np.array(labels), viol, 0.0, notes=notes)
    return report, {"points": np.arange(coef.size), "residual": coef, "coefficients": coef}


# ---------------------------------------------------------------- brute-force oracles


def harris_sum_convolution_oracle(innov_pmf: LatticePmf, a, k, n_trunc, n_max=None) -> LatticePmf:
    """Harris(1, a, k) random sum of i.i.d. innovations by explicit convolution.

    Sums ``P(N = 1 + k m) * Q^{*(1 + k m)}`` over ``1 + k m <= n_trunc``,
    every convolution power truncated to values ``0..n_max``.
    """
    if innov_pmf.truncation_mass >= 1e-10:
        raise TruncationError(f"innovation pmf misses {innov_pmf.truncation_mass:.3g} >= 1e-10 of its mass")
    harris = HarrisLaw(a, k)
    m_max = (n_trunc - 1) // k
    w = harris.nb_weights(m_max)
    tail = 1.0 - w.sum()
    if tail >= 1e-10:
        m_need = m_max
        while 1.0 - harris.nb_weights(m_need).sum() >= 1e-10 and m_need < 10**7:
            m_need = 2 * m_need + 1
        raise TruncationError(
            f"Harris tail beyond n_trunc={n_trunc} is {tail:.3g} >= 1e-10; "
            f"n_trunc around {1 + k * m_need} is needed"
        )
    if n_max is None:
        n_max = int(innov_pmf.values[-1])
    L = n_max + 1
    q = innov_pmf.dense(n_max)
    q_k = q.copy()
    for _ in range(k - 1):
        q_k = kernels.truncated_convolve(q_k, q, L)
    power = q.copy()
    out = w[0] * power
    for m in range(1, m_max + 1):
        power = kernels.truncated_convolve(power, q_k, L)
        out += w[m] * power
    return LatticePmf.from_dense(out)


def total_variation(p: LatticePmf, q: LatticePmf) -> float:
    """TV distance, counting each side's missing mass as disagreement."""
    n = int(max(p.values[-1], q.values[-1]))
    pd, qd = p.dense(n), q.dense(n)
    return 0.5 * (float(np.abs(pd - qd).sum()) + abs(p.truncation_mass - q.truncation_mass))


def harris_extreme_series_oracle(law, a, k, x_grid, n_trunc, threshold_extra=1e-12):
    """Truncated series ``sum P(N = 1+km) T(x)**(1+km)`` against ``P_H(T(x))``.

    ``law`` may be a law object (its transform is used) or a callable.
    """
    t_of = law.transform if hasattr(law, "transform") else law
    xs = np.asarray(x_grid, dtype=float)
    t = np.asarray(t_of(xs), dtype=float)
    m_max = (n_trunc - 1) // k
    w = HarrisLaw(a, k).nb_weights(m_max)
    powers = t[:, None] ** (1 + k * np.arange(m_max + 1))[None, :]
    series = powers @ w
    closed = harris_compose(t, a, k)
    tail_bound = max(0.0, 1.0 - w.sum())
    params = {"a": a, "k": k, "n_trunc": n_trunc, "tail_bound": tail_bound}
    return _make_report(
        "harris_extreme_series", params, {"kind": "custom", "n": int(xs.size)},
        xs, np.abs(series - closed), tail_bound + threshold_extra,
    )


# ---------------------------------------------------------------- statistics


def ks_statistic(sample, theoretical_df, df_left=None):
    """One-sample Kolmogorov-Smirnov ``(D, p_value)``.

    ``sample`` must be sorted. ``df_left`` gives ``F(x-)`` for laws with
    atoms; it defaults to ``theoretical_df`` (continuous law). The p-value
    is from the asymptotic Kolmogorov distribution of ``sqrt(n) D``.
    """
    x = np.asarray(sample, dtype=float)
    n = x.size
    if n < 10:
        raise ValueError("KS needs at least 10 observations")
    if np.any(np.diff(x) < 0):
        raise ValueError("sample must be sorted")
    vals, counts = np.unique(x, return_counts=True)
    cum = np.cumsum(counts) / n
    prev = np.concatenate([[0.0], cum[:-1]])
    F = np.asarray(theoretical_df(vals), dtype=float)
    F_left = F if df_left is None else np.asarray(df_left(vals), dtype=float)
    d = max(float(np.max(cum - F)), float(np.max(F_left - prev)), 0.0)
    return d, float(special.kolmogorov(math.sqrt(n) * d))


def ks_critical_value(n, m=None, level=0.01):
    """Asymptotic critical value of the one- or two-sample KS statistic."""
    c = float(special.kolmogi(level))
    if m is None:
        return c / math.sqrt(n)
    return c * math.sqrt((n + m) / (n * m))


def ks_two_sample(x, y, level=0.01):
    """Two-sample KS ``(D, critical_value, p_value)``."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    n, m = x.size, y.size
    pts = np.concatenate([x, y])
    d = float(np.max(np.abs(np.searchsorted(x, pts, side="right") / n - np.searchsorted(y, pts, side="right") / m)))
    en = math.sqrt(n * m / (n + m))
    return d, ks_critical_value(n, m, level), float(special.kolmogorov(en * d))


def default_t_grid(t_max=20.0, n=81):
    return np.linspace(-t_max, t_max, n)


def empirical_cf_distance(sample, cf, t_grid=None):
    """sup over ``t_grid`` of ``|mean(exp(i t X)) - cf(t)|``."""
    x = np.asarray(sample, dtype=float)
    t_grid = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    target = np.asarray(cf(t_grid), dtype=complex)
    worst = 0.0
    for t, c in zip(t_grid, target):
        tx = t * x
        emp = complex(np.cos(tx).mean(), np.sin(tx).mean())
        worst = max(worst, abs(emp - c))
    return worst


def empirical_lt_distance(sample, lt, s_grid):
    x = np.asarray(sample, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    target = np.asarray(lt(s_grid), dtype=float)
    return max(abs(float(np.exp(-s * x).mean()) - v) for s, v in zip(s_grid, target))


def ecf_threshold(n):
    return 4.0 / math.sqrt(n)


# ---------------------------------------------------------------- characterized pairings

ALPHA_FOR = {"sum_cf": 1.5, "sum_pgf": 0.8, "max_df": 2.0, "min_sf": 1.5}


@dataclass(frozen=True)
class Pairing:
    """A law together with the scheme constants under which it is Harris-stable."""

    name: str
    law: object
    a: float
    b: float
    k: int
    kind: str

    @property
    def p(self):
        return 1.0 / self.a


def characterized_pairing(name, a, k, beta_frac=0.0, lam=1.0, alpha=None, m=1) -> Pairing:
    """Build the law matched to Harris(1, a, k) for one of the four pairings.

    ``name`` is ``sum_cf`` (generalized semi-alpha-Laplace), ``sum_pgf``
    (discrete generalized semi-Mittag-Leffler), ``max_df``
    (gamma-max-semi-stable) or ``min_sf`` (generalized semi-Pareto).
    ``beta_frac`` scales the largest admissible ``beta``.
    """
    alpha = ALPHA_FOR[name] if alpha is None else alpha
    b0 = a ** (-1.0 / alpha)
    beta = beta_frac * beta_max(alpha, b0)
    if name == "sum_cf":
        law = GenSemiAlphaLaplaceLaw(make_exponent(lam, alpha, beta, b0), k)
        return Pairing(name, law, a, b0, k, "sum")
    if name == "sum_pgf":
        law = DiscreteGenSemiMLLaw(make_exponent(lam, alpha, beta, b0), k, m)
        return Pairing(name, law, a, b0, k, "sum")
    if name == "max_df":
        law = GammaMaxSemiStableLaw(make_exponent(lam, alpha, beta, b0, Tail.DECREASING), k)
        return Pairing(name, law, a, b0, k, "max")
    if name == "min_sf":
        law = GenSemiParetoLaw(make_exponent(lam, alpha, beta, b0), k)
        return Pairing(name, law, a, 1.0 / b0, k, "min")
    raise ValueError(f"unknown pairing {name!r}")


PAIRINGS = tuple(ALPHA_FOR)


def perturbed_reports(pairing: Pairing, factor=1.05, grid=None):
    """Negative controls: perturb a, b, alpha (by ``factor``) and k (by one), one at a time."""
    pr = pairing
    out = []
    for label, kwargs in (("a", {"a": pr.a * factor}), ("b", {"b": pr.b * factor})):
        args = {"a": pr.a, "b": pr.b}
        args.update(kwargs)
        rep = harris_fixed_point_residual(
            pr.law, args["a"], args["b"], pr.k, pr.kind, grid=grid, threshold=NEGATIVE_THRESHOLD, expect="above"
        )
        rep.check_name = f"negative_control[{pr.name}, {label}]"
        out.append(rep)
    rep = harris_fixed_point_residual(
        pr.law, pr.a, pr.b, pr.k + 1, pr.kind, grid=grid, threshold=NEGATIVE_THRESHOLD, expect="above"
    )
    rep.check_name = f"negative_control[{pr.name}, k]"
    out.append(rep)
    e = pr.law.exponent
    law_cls = type(pr.law)
    extra = {"m": pr.law.m} if hasattr(pr.law, "m") else {}
    bumped = law_cls(make_exponent(e.lam, e.alpha * factor, e.beta, e.b, e.tail), pr.k, **extra)
    rep = harris_fixed_point_residual(bumped, pr.a, pr.b, pr.k, pr.kind, grid=grid, threshold=NEGATIVE_THRESHOLD, expect="above")
    rep.check_name = f"negative_control[{pr.name}, alpha]"
    out.append(rep)
    return out


# ---------------------------------------------------------------- suite

A_VALUES = (1.5, 2.0, 4.0)
K_VALUES = (1, 2, 3)
BETA_FRACS = (0.0, 0.8)


def _fixed_point_suite(grid=None):
    reports = []
    for name in PAIRINGS:
        for a in A_VALUES:
            for k in K_VALUES:
                for bf in BETA_FRACS:
                    pr = characterized_pairing(name, a, k, bf)
                    rep = harris_fixed_point_residual(pr.law, pr.a, pr.b, pr.k, pr.kind, grid=grid)
                    rep.check_name = f"fixed_point[{name}]"
                    reports.append(rep)
    return reports


def _negative_suite(grid=None):
    reports = []
    for name in PAIRINGS:
        for a in A_VALUES:
            for k in K_VALUES:
                for bf in BETA_FRACS:
                    reports.extend(perturbed_reports(characterized_pairing(name, a, k, bf), grid=grid))
    return reports


def _stationarity_suite(grid=None):
    reports = []
    for name in PAIRINGS:
        for a in A_VALUES:
            for k in K_VALUES:
                for bf in BETA_FRACS:
                    pr = characterized_pairing(name, a, k, bf)
                    rep = stationarity_identity_residual(pr.law, pr.p, pr.b, pr.k, grid=grid)
                    rep.check_name = f"stationarity[{name}]"
                    reports.append(rep)
    return reports


def _ssd_suite(grid=None):
    reports = []
    for k in K_VALUES:
        pr = characterized_pairing("min_sf", 2.0, k, 0.8)
        rep, _ = ssd_residual(pr.law, pr.law.exponent.b, harris=(pr.a, k))
        reports.append(rep)
        pr = characterized_pairing("sum_pgf", 2.0, k, 0.0, alpha=1.0, m=3)
        rep, _ = ssd_residual(pr.law, pr.b, harris=(pr.a, k))
        reports.append(rep)
        pr = characterized_pairing("sum_cf", 2.0, k, 0.8)
        rep, _ = ssd_residual(pr.law, pr.b, harris=(pr.a, k))
        reports.append(rep)
        pr = characterized_pairing("max_df", 2.0, k, 0.8)
        rep, _ = ssd_residual(pr.law, 1.0 / pr.b, harris=(pr.a, k))
        reports.append(rep)
    pareto = GenSemiParetoLaw(make_exponent(1.0, 1.0, 0.0, 0.5), 1)
    for c in np.round(np.arange(0.1, 1.0, 0.1), 1):
        rep, _ = ssd_residual(pareto, float(c))
        rep.check_name = f"ssd_residual[sf, pareto c={c}]"
        reports.append(rep)
    return reports


def nb_pmf(lam, r, n_max):
    """Closed-form pmf of the law with p.g.f. ``(1 + lam (1 - s))**(-r)``."""
    from scipy import stats

    return LatticePmf.from_dense(stats.nbinom.pmf(np.arange(n_max + 1), r, 1.0 / (1.0 + lam)))


def nb_pgf(lam, r):
    return lambda z: np.exp(-r * np.log(1.0 + lam * (1.0 - np.asarray(z))))


def convolution_oracle_report(a, k, lam, r, n_trunc=400, n_max=512, N=2**14, tol=1e-6):
    innov = nb_pmf(lam, r, n_max)
    innov = LatticePmf(innov.offset, innov.stride, innov.weights, 0.0 if innov.truncation_mass < 1e-13 else innov.truncation_mass)
    brute = harris_sum_convolution_oracle(innov, a, k, n_trunc, n_max=n_max)
    q = nb_pgf(lam, r)
    dft = pmf_from_pgf(lambda z: harris_compose(q(z), a, k), N=N, n_max=n_max)
    tv = total_variation(brute, dft)
    params = {"a": a, "k": k, "innovation": {"lam": lam, "r": r}, "n_trunc": n_trunc, "n_max": n_max, "N": N}
    return _make_report("convolution_oracle", params, {"kind": "lattice", "n_max": n_max}, np.array(["tv"]), [tv], tol)


def _oracle_suite(grid=None):
    reports = []
    for k in (1, 2):
        for lam, r in ((1.0, 1.0), (1.5, 2.5)):
            reports.append(convolution_oracle_report(2.0, k, lam, r))
    for k in (1, 2, 3):
        pr = characterized_pairing("min_sf", 2.0, k, 0.8)
        xs, _ = standard_grid(pr.law)
        reports.append(harris_extreme_series_oracle(pr.law, 2.0, k, xs[::8], 400))
        pr = characterized_pairing("max_df", 2.0, k, 0.8)
        reports.append(harris_extreme_series_oracle(pr.law, 2.0, k, xs[::8], 400))
    return reports


def _harris_pmf_suite(grid=None):
    reports = []
    s = np.linspace(0.0, 0.99, 200)
    for a in (1.5, 2.0, 4.0):
        for k in (1, 2, 3):
            law = HarrisLaw(a, k)
            pmf = law.pmf(6000)
            gap = np.abs(pmf.pgf(s) - law.pgf(s))
            rep = _make_report("harris_pmf_pgf", {"a": a, "k": k}, {"kind": "linspace", "n": 200}, s, gap, 1e-10)
            reports.append(rep)
    return reports


SUITE = {
    "fixed_point": _fixed_point_suite,
    "negative_controls": _negative_suite,
    "stationarity": _stationarity_suite,
    "ssd_residual": _ssd_suite,
    "oracles": _oracle_suite,
    "harris_pmf": _harris_pmf_suite,
}


def run_suite(names=None, grid=None):
    """Run named check groups (all by default) and return their reports.

    ``grid`` is an optional dict of :func:`standard_grid` options.
    """
    names = list(SUITE) if names is None else list(names)
    unknown = [n for n in names if n not in SUITE]
    if unknown:
        raise KeyError(f"unknown checks {unknown}; known: {sorted(SUITE)}")
    reports = []
    for n in names:
        reports.extend(SUITE[n](grid))
    return reports
