"""Acceptance criteria 1-10.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python
tests/test_acceptance.py``); a PASS/FAIL line per criterion is printed in the
terminal summary. Tolerances and runtime budgets are fixed here and must not
be relaxed.
"""
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from harrisar import cli
from harrisar import verify as V
from harrisar.exponent import Tail, beta_max, make_exponent
from harrisar.laws import (
    DiscreteGenSemiMLLaw,
    GammaMaxSemiStableLaw,
    GenSemiAlphaLaplaceLaw,
    GenSemiParetoLaw,
    HarrisLaw,
    MaxSemiStableLaw,
    sample_linnik,
    sample_ml_positive,
)
from harrisar.processes import SchemeSpec, simulate_ensemble

A_VALUES = (1.5, 2.0, 4.0)
K_VALUES = (1, 2, 3)
BETA_FRACS = (0.0, 0.8)
KS_LEVEL = 0.01


def all_pairings():
    for name in V.PAIRINGS:
        for a in A_VALUES:
            for k in K_VALUES:
                for bf in BETA_FRACS:
                    yield V.characterized_pairing(name, a, k, bf)


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def test_criterion_01_fixed_points():
    """Fixed-point identities, 4 pairings x a x k x beta, residual <= 1e-11, < 10 s."""
    with Budget(10):
        reps = [V.harris_fixed_point_residual(pr.law, pr.a, pr.b, pr.k, pr.kind) for pr in all_pairings()]
    assert len(reps) == 72
    worst = max(r.max_residual for r in reps)
    assert worst <= 1e-11, worst


def test_criterion_02_negative_controls():
    """5% perturbation of a, b or alpha pushes the residual above 1e-4, < 10 s."""
    with Budget(10):
        reps = [r for pr in all_pairings() for r in V.perturbed_reports(pr, factor=1.05)]
    reps = [r for r in reps if not r.check_name.endswith(", k]")]
    assert len(reps) == 72 * 3
    weakest = min(r.max_residual for r in reps)
    assert weakest > 1e-4, weakest


def test_criterion_03_stationarity_identity():
    """p T^k(scaled) + (1-p) T^k(scaled) T^k = T^k for all scheme types, <= 1e-11, < 5 s."""
    with Budget(5):
        reps = [V.stationarity_identity_residual(pr.law, pr.p, pr.b, pr.k) for pr in all_pairings()]
    assert {r.parameters["kind"] for r in reps} == {"sum", "max", "min"}
    worst = max(r.max_residual for r in reps)
    assert worst <= 1e-11, worst


def test_criterion_04_harris_pmf():
    """Harris pmf rebuilds the p.g.f. within 1e-10; k=1 is geometric(1/a) to 1e-12 relative."""
    s = np.linspace(0.0, 0.99, 991)
    for a in A_VALUES:
        for k in K_VALUES:
            law = HarrisLaw(a, k)
            gap = np.max(np.abs(law.pmf(8000).pgf(s) - law.pgf(s)))
            assert gap <= 1e-10, (a, k, gap)
        n = np.arange(1, 51)
        geo = (1 / a) * (1 - 1 / a) ** (n - 1)
        got = HarrisLaw(a, 1).pmf(50).weights
        assert np.max(np.abs(got - geo) / geo) <= 1e-12


def test_criterion_05_oracles():
    """Convolution oracle vs DFT within TV 1e-6; extreme series vs closed form within 1e-10, < 60 s."""
    with Budget(60):
        for k in (1, 2):
            for lam, r in ((1.0, 1.0), (1.5, 2.5)):  # geometric, negative binomial
                rep = V.convolution_oracle_report(2.0, k, lam, r, n_trunc=400, tol=1e-6)
                assert rep.max_residual <= 1e-6, rep.to_dict()
        for name in ("min_sf", "max_df"):
            for k in K_VALUES:
                pr = V.characterized_pairing(name, 2.0, k, 0.8)
                xs, _ = V.standard_grid(pr.law)
                rep = V.harris_extreme_series_oracle(pr.law, 2.0, k, xs, 400)
                assert rep.max_residual <= 1e-10, rep.max_residual


def _ks_pass(x, df, df_left=None):
    d, p = V.ks_statistic(np.sort(x), df, df_left)
    return p > KS_LEVEL, d, p


def test_criterion_06_samplers():
    """Inversion samplers pass KS (n=1e5); mixtures pass ECF/ELT < 4/sqrt(n) (n=1e6); table ~ Linnik, < 3 min."""
    n = 100_000
    with Budget(180):
        laws = [
            GenSemiParetoLaw(make_exponent(1.0, 1.2, 0.0, 0.5), 2),
            GenSemiParetoLaw(make_exponent(1.0, 1.2, 0.9 * beta_max(1.2, 0.5), 0.5), 2),
            GammaMaxSemiStableLaw(make_exponent(1.0, 2.0, 0.8 * beta_max(2.0, 0.4), 0.4, Tail.DECREASING), 3),
            MaxSemiStableLaw(make_exponent(1.0, 1.5, 0.8 * beta_max(1.5, 0.5), 0.5, Tail.DECREASING)),
        ]
        for i, law in enumerate(laws):
            x = law.sample(np.random.default_rng(600 + i), n)
            df = law.cdf
            ok, d, p = _ks_pass(x, df)
            assert ok, (type(law).__name__, d, p)

        big = 1_000_000
        x = sample_linnik(1.5, 1.0, 2, np.random.default_rng(610), big)
        dist = V.empirical_cf_distance(x, lambda t: (1 + np.abs(t) ** 1.5) ** -0.5)
        assert dist < V.ecf_threshold(big), dist
        y = sample_ml_positive(0.7, 1.0, 2, np.random.default_rng(611), big)
        s = np.logspace(-2, 2, 41)
        dist = V.empirical_lt_distance(y, lambda v: (1 + v**0.7) ** -0.5, s)
        assert dist < V.ecf_threshold(big), dist

        law = GenSemiAlphaLaplaceLaw(make_exponent(1.0, 1.5, 0.0, 0.5), 2)
        table_draws = law.cf_table().sample(np.random.default_rng(612), n)
        linnik_draws = sample_linnik(1.5, 1.0, 2, np.random.default_rng(613), n)
        d, crit, p = V.ks_two_sample(table_draws, linnik_draws, KS_LEVEL)
        assert d < crit, (d, crit)


SCHEMES = {
    "sum_cf": ("add", 0.0),
    "sum_pgf": ("thinned_add", 0.0),
    "max_df": ("max", 0.8),
    "min_sf": ("min", 0.8),
}


def test_criterion_07_chain_stationarity():
    """Aggregate marginals at lags 0 and 50 agree (two-sample KS 1%), k=2, 1e4 paths, shared coin, < 3 min."""
    with Budget(180):
        for i, (name, (comb, bf)) in enumerate(SCHEMES.items()):
            pr = V.characterized_pairing(name, 2.0, 2, bf)
            spec = SchemeSpec(comb, pr.b, pr.law, k=2, randomized=True, p=pr.p, coin_mode="shared")
            ens = simulate_ensemble(spec, 50, 10_000, seed=700 + i)
            d, crit, _ = V.ks_two_sample(ens.marginal(0), ens.marginal(50), KS_LEVEL)
            assert d < crit, (name, d, crit)
            if name == "min_sf":
                ok, d, p = _ks_pass(ens.marginal(50), lambda v: 1 - pr.law.sf(v) ** 2)
                assert ok, (d, p)


def test_criterion_08_ssd_residuals():
    """Semi-Pareto and gapped residuals are valid; Pareto passes for c = 0.1..0.9."""
    for k in K_VALUES:
        pr = V.characterized_pairing("min_sf", 2.0, k, 0.8)
        c = pr.law.p ** (1 / pr.law.exponent.alpha)
        rep, table = V.ssd_residual(pr.law, c)
        assert rep.passed, rep.to_dict()
        r = table["residual"]
        assert np.all((r >= 0) & (r <= 1)) and np.all(np.diff(r) <= 0)

        law = DiscreteGenSemiMLLaw(make_exponent(1.0, 0.8, 0.0, 2.0 ** (-1 / 0.8)), k, 3)
        rep, table = V.ssd_residual(law, law.exponent.b)
        assert rep.passed, rep.to_dict()
        coef = table["coefficients"]
        assert coef.min() >= -1e-10 and abs(coef.sum() - 1.0) <= 1e-10
    pareto = GenSemiParetoLaw(make_exponent(1.0, 1.0, 0.0, 0.5), 1)
    for c in np.round(np.arange(0.1, 1.0, 0.1), 1):
        rep, _ = V.ssd_residual(pareto, float(c))
        assert rep.passed, c


def test_criterion_09_gap_preservation():
    """Gapped m=3 law: off-lattice DFT mass <= 1e-12; equals 3 x the m=1 law under quantile coupling."""
    e = make_exponent(1.0, 1.0, 0.0, 0.5)
    n1 = 4000
    p1 = DiscreteGenSemiMLLaw(e, 2, 1).pmf(n_max=n1).dense(n1)
    p3 = DiscreteGenSemiMLLaw(e, 2, 3).pmf(n_max=3 * n1).dense(3 * n1)
    off = np.delete(p3, np.arange(0, 3 * n1 + 1, 3))
    assert np.max(np.abs(off)) <= 1e-12

    c1, c3 = np.cumsum(p1), np.cumsum(p3)
    u = np.random.default_rng(900).random(100_000) * c1[-1]
    # keep u away from the jump points so rounding in the cumsums cannot flip a quantile
    near = np.min(np.abs(u[:, None] - c1[None, :200]), axis=1) < 1e-12
    u = u[~near]
    q1 = np.searchsorted(c1, u, side="right")
    q3 = np.searchsorted(c3, u, side="right")
    np.testing.assert_array_equal(q3, 3 * q1)

    # the sampler realizes the same coupling on a shared stream
    for alpha in (0.6, 1.0):
        e = make_exponent(1.0, alpha, 0.0, 0.5)
        x1 = DiscreteGenSemiMLLaw(e, 2, 1).sample(np.random.default_rng(901), 10_000)
        x3 = DiscreteGenSemiMLLaw(e, 2, 3).sample(np.random.default_rng(901), 10_000)
        np.testing.assert_array_equal(x3, 3 * x1)


def _sha(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_criterion_10_determinism(tmp_path):
    """Every CLI command repeated with the same config and seed is byte-identical."""
    configs = {
        "sample": {"law": {"family": "semi_pareto", "alpha": 1.0, "k": 1}, "n_samples": 2000, "seed": 5},
        "simulate": {
            "law": {"family": "discrete_semi_mittag_leffler", "alpha": 0.8, "b": 2.0 ** (-1 / 0.8), "k": 2},
            "scheme": {"combiner": "thinned_add"},
            "n_steps": 20, "n_paths": 50, "seed": 6,
        },
        "verify": {"check": "ssd_residual", "seed": 7},
    }
    outputs = {"sample": "samples.csv", "simulate": "trajectories.csv", "verify": "report.json"}
    for cmd, cfg in configs.items():
        path = tmp_path / f"{cmd}.json"
        path.write_text(json.dumps(cfg))
        digests = []
        for run in ("r1", "r2"):
            out = tmp_path / run
            assert cli.main([cmd, "--config", str(path), "--out", str(out)]) == 0
            digests.append(_sha(out / outputs[cmd]))
        assert digests[0] == digests[1], cmd
    out = tmp_path / "r1"
    digests = []
    for _ in range(2):
        assert cli.main(["report", "--out", str(out)]) == 0
        digests.append(_sha(out / "summary.csv"))
    assert digests[0] == digests[1], "report"

if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
