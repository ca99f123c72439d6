import json
import math

import numpy as np
import pytest
from scipy import stats

from harrisar.exponent import Tail, beta_max, make_exponent
from harrisar.laws import (
    DiscreteGenSemiMLLaw,
    GammaMaxSemiStableLaw,
    GenSemiAlphaLaplaceLaw,
    GenSemiMLLaw,
    GenSemiParetoLaw,
    LatticePmf,
    TruncationError,
    harris_compose,
    sample_linnik,
)
from harrisar import verify as V


# ---------------------------------------------------------------- reports


def test_report_json_round_trip():
    pr = V.characterized_pairing("min_sf", 2.0, 2, 0.8)
    rep = V.harris_fixed_point_residual(pr.law, pr.a, pr.b, pr.k, "min")
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"check_name", "parameters", "grid", "max_residual", "threshold", "passed", "details"}
    assert doc["passed"] is True
    assert doc["grid"]["points_per_decade"] == 256
    assert len(doc["details"]) == V.N_WORST


def test_report_passed_matches_threshold():
    rep = V._make_report("x", {}, {}, np.arange(3), [0.1, 0.3, 0.2], 0.25)
    assert rep.max_residual == 0.3 and not rep.passed
    neg = V._make_report("x", {}, {}, np.arange(3), [0.1, 0.3, 0.2], 0.25, expect="above")
    assert neg.passed
    nan = V._make_report("x", {}, {}, np.arange(2), [0.1, np.nan], 1.0)
    assert not nan.passed


def test_standard_grid():
    law = GenSemiParetoLaw(make_exponent(3.0, 1.5), 1)
    pts, desc = V.standard_grid(law)
    assert pts.size == 1024
    assert pts[0] == pytest.approx(law.exponent.natural_scale() * 1e-2)
    assert pts[-1] == pytest.approx(law.exponent.natural_scale() * 1e2)
    pts, _ = V.standard_grid(DiscreteGenSemiMLLaw(make_exponent(1, 0.5)), 16, 2)
    assert pts.size == 32 and pts.max() == pytest.approx(1 - 1e-2) and pts.min() == 0.0


# ---------------------------------------------------------------- fixed points


def test_fixed_point_examples():
    law = GenSemiParetoLaw(make_exponent(1.0, 1.5, 0.1, 0.5), 2)
    p, alpha = law.p, 1.5
    rep = V.harris_fixed_point_residual(law, 1 / p, p ** (-1 / alpha), 2, "min")
    assert rep.passed and rep.max_residual < 1e-11
    pr = V.characterized_pairing("sum_cf", 2.0, 3, 0.8)
    assert V.harris_fixed_point_residual(pr.law, pr.a, pr.b, pr.k, "sum").max_residual < 1e-11
    bad = V.harris_fixed_point_residual(pr.law, pr.a, 1.05 * pr.b, pr.k, "sum")
    assert bad.max_residual > 1e-3


def test_fixed_point_kind_mismatch():
    pr = V.characterized_pairing("max_df", 2.0, 1)
    with pytest.raises(ValueError, match="max"):
        V.harris_fixed_point_residual(pr.law, pr.a, pr.b, 1, "min")


def test_fixed_point_lt_law():
    e = make_exponent(1.0, 0.7, 0.9 * beta_max(0.7, 0.5), 0.5)
    law = GenSemiMLLaw(e, 2)
    assert V.harris_fixed_point_residual(law, e.a, e.b, 2).max_residual < 1e-11


@pytest.mark.parametrize("name", V.PAIRINGS)
def test_stationarity_identity_and_p_control(name):
    pr = V.characterized_pairing(name, 2.0, 2, 0.8 if name != "sum_pgf" else 0.0)
    assert V.stationarity_identity_residual(pr.law, pr.p, pr.b, pr.k).max_residual < 1e-11
    assert V.stationarity_identity_residual(pr.law, 1.05 * pr.p, pr.b, pr.k).max_residual > 1e-4


def test_negative_controls_cover_k():
    reps = V.perturbed_reports(V.characterized_pairing("sum_pgf", 1.5, 2))
    assert [r.check_name.split(", ")[1][:-1] for r in reps] == ["a", "b", "k", "alpha"]
    assert all(r.passed and r.expect == "above" for r in reps)


def test_joint_scale():
    e = make_exponent(1.0, 1.2, 0.05, 0.5)
    b2 = math.exp(-1.0)  # ln b1 / ln b2 = ln 2, irrational
    assert V.joint_scale_residual(e, [0.5, b2]).passed
    assert V.joint_scale_residual(e, [0.5, b2]).max_residual > 1e-4
    flat = make_exponent(1.0, 1.2, 0.0, 0.5)
    rep = V.joint_scale_residual(flat, [0.5, b2])
    assert rep.passed and rep.max_residual < 1e-12


# ---------------------------------------------------------------- ssd residual


def test_ssd_semi_pareto():
    law = GenSemiParetoLaw(make_exponent(1.0, 1.5, 0.15, 0.5), 2)
    c = law.p ** (1 / 1.5)
    rep, table = V.ssd_residual(law, c, harris=(1 / law.p, 2))
    assert rep.passed
    assert np.all(np.diff(table["residual"]) <= 1e-12)


def test_ssd_gapped_pgf():
    law = DiscreteGenSemiMLLaw(make_exponent(1.0, 0.8), 2, 3)
    rep, table = V.ssd_residual(law, law.exponent.b, harris=(law.exponent.a, 2))
    assert rep.passed
    coef = table["coefficients"]
    assert coef.min() >= -1e-10
    assert coef.sum() == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize(
    "law",
    [
        GenSemiParetoLaw(make_exponent(1.0, 1.0), 1),
        GenSemiAlphaLaplaceLaw(make_exponent(1.0, 1.0), 1),
        DiscreteGenSemiMLLaw(make_exponent(1.0, 0.5), 1),
        GenSemiMLLaw(make_exponent(1.0, 0.5), 1),
    ],
    ids=["sf", "cf", "pgf", "lt"],
)
def test_ssd_scale_one_is_trivial(law):
    rep, table = V.ssd_residual(law, 1.0)
    assert rep.passed
    np.testing.assert_allclose(np.real(table["residual"])[: 10 if law.transform_kind != "pgf" else 1], 1.0, atol=1e-15)


def test_ssd_gamma_max():
    law = GammaMaxSemiStableLaw(make_exponent(1.0, 2.0, 0.1, 0.5, Tail.DECREASING), 2)
    rep, _ = V.ssd_residual(law, law.c, harris=(law.exponent.a, 2))
    assert rep.passed


def test_ssd_detects_non_sd_scale():
    # a Pareto with a residual scale above one is not a valid s.f. factor
    law = GenSemiParetoLaw(make_exponent(1.0, 1.0), 1)
    rep, _ = V.ssd_residual(law, 2.0)
    assert not rep.passed
    pgf_law = DiscreteGenSemiMLLaw(make_exponent(1.0, 0.9, 0.05, 0.5), 1)
    rep, _ = V.ssd_residual(pgf_law, 0.5)
    assert not rep.passed


def test_ssd_kind_mismatch():
    with pytest.raises(ValueError):
        V.ssd_residual(GenSemiParetoLaw(make_exponent(1, 1)), 0.5, kind="cf")


# ---------------------------------------------------------------- oracles


def test_convolution_oracle_degenerate():
    out = V.harris_sum_convolution_oracle(LatticePmf.from_dense([1.0]), 2.0, 2, 400, n_max=10)
    np.testing.assert_allclose(out.dense(10), [1.0] + [0.0] * 10, atol=1e-15)


def test_convolution_oracle_keeps_lattice():
    innov = LatticePmf.from_dense([0.4, 0, 0, 0.6])
    out = V.harris_sum_convolution_oracle(innov, 2.0, 1, 400, n_max=60)
    d = out.dense(60)
    assert np.all(np.delete(d, np.arange(0, 61, 3)) == 0.0)


def test_convolution_oracle_agrees_with_dft():
    rep = V.convolution_oracle_report(2.0, 1, 1.0, 1.0)
    assert rep.passed and rep.max_residual < 1e-6


def test_convolution_oracle_truncation_errors():
    with pytest.raises(TruncationError, match="n_trunc around"):
        V.harris_sum_convolution_oracle(LatticePmf.from_dense([1.0]), 4.0, 1, 20)
    with pytest.raises(TruncationError):
        V.harris_sum_convolution_oracle(LatticePmf.from_dense([0.5, 0.4]), 2.0, 1, 400)


def test_extreme_series_examples():
    const = lambda v: lambda x: np.full(np.shape(x), v)  # noqa: E731
    for t, want in ((0.0, 0.0), (1.0, 1.0)):
        rep = V.harris_extreme_series_oracle(const(t), 2.0, 2, [1.0, 2.0], 200)
        assert rep.passed
        assert harris_compose(np.array(t), 2.0, 2) == want
    rep = V.harris_extreme_series_oracle(const(0.7), 2.0, 2, [1.0], 200)
    assert rep.max_residual <= 1e-10
    assert harris_compose(np.array(0.7), 2.0, 2) == pytest.approx(0.7 / math.sqrt(2 - 0.49))


# ---------------------------------------------------------------- statistics


def test_ks_exact_quantiles():
    n = 1000
    x = stats.norm.ppf((np.arange(1, n + 1) - 0.5) / n)
    d, _ = V.ks_statistic(x, stats.norm.cdf)
    assert d == pytest.approx(0.5 / n, rel=1e-9)


def test_ks_atom():
    x = np.full(50, 2.0)
    d, p = V.ks_statistic(x, lambda v: (v >= 2.0).astype(float), df_left=lambda v: (v > 2.0).astype(float))
    assert d == 0.0 and p == 1.0


def test_ks_input_checks():
    with pytest.raises(ValueError, match="sorted"):
        V.ks_statistic(np.arange(20.0)[::-1], stats.norm.cdf)
    with pytest.raises(ValueError):
        V.ks_statistic(np.arange(5.0), stats.norm.cdf)


def test_ks_matches_scipy():
    x = np.sort(np.random.default_rng(0).standard_normal(500))
    d, _ = V.ks_statistic(x, stats.norm.cdf)
    assert d == pytest.approx(stats.kstest(x, "norm").statistic, abs=1e-15)
    y = np.random.default_rng(1).standard_normal(700)
    d2, crit, _ = V.ks_two_sample(x, y)
    assert d2 == pytest.approx(stats.ks_2samp(x, y).statistic, abs=1e-15)
    assert crit == pytest.approx(1.6276 * math.sqrt((500 + 700) / (500 * 700)), rel=1e-4)


@pytest.mark.slow
def test_ks_level_calibration():
    rng = np.random.default_rng(2024)
    ok = sum(V.ks_statistic(np.sort(rng.random(100_000)), lambda u: u)[1] > 0.01 for _ in range(100))
    assert ok >= 98


def test_empirical_cf_examples():
    assert V.empirical_cf_distance(np.zeros(100), lambda t: np.ones_like(t)) == 0.0
    x = sample_linnik(1.5, 1.0, 2, np.random.default_rng(3), 1_000_000)
    t = np.linspace(-10, 10, 41)
    good = V.empirical_cf_distance(x, lambda s: (1 + np.abs(s) ** 1.5) ** -0.5, t)
    bad = V.empirical_cf_distance(x, lambda s: (1 + np.abs(s) ** 1.5) ** (-1 / 3), t)
    assert good < V.ecf_threshold(x.size)
    assert bad > 10 * V.ecf_threshold(x.size)


# ---------------------------------------------------------------- suite


def test_suite_registry():
    with pytest.raises(KeyError):
        V.run_suite(["missing"])
    reps = V.run_suite(["harris_pmf"], grid={"points_per_decade": 16, "decades": 2})
    assert reps and all(r.passed for r in reps)


def test_full_suite_passes():
    reps = V.run_suite()
    failed = [r.check_name for r in reps if not r.passed]
    assert not failed
