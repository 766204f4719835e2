"""Tests for the Monte Carlo harness."""

import numpy as np
import pytest

from monoboot.simulate import (
    CORRECTED_LEVEL,
    DEFAULT_T_GRID,
    ScenarioConfig,
    default_regression_fn,
    generate_dataset,
    intervals_for_sample,
    run_conditional_histogram,
    run_coverage,
    _draws_for_sample,
    _intervals_from_draws,
    _rng_for,
)


def small_cfg(**kw):
    base = dict(n=60, reps=4, B=30, method="percentile-regression", t_grid=(0.5,), seed=11)
    base.update(kw)
    return ScenarioConfig(**base)


class TestRegressionFunction:
    def test_reference_values(self):
        assert default_regression_fn(0.5) == pytest.approx(0.35)
        assert default_regression_fn(1.0) == pytest.approx(1.2)
        assert default_regression_fn(0.0) == 0.0


class TestGenerateDataset:
    def test_shape_and_sorting(self):
        cfg = small_cfg(n=200)
        s = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
        assert s.n == 200
        assert np.all(np.diff(s.xs) >= 0)
        assert np.all((s.xs >= 0) & (s.xs <= 1))

    def test_noise_scale(self):
        cfg = small_cfg(n=20_000, sigma=0.1)
        s = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
        resid = s.ys - default_regression_fn(s.xs)
        assert s.ys == pytest.approx(default_regression_fn(s.xs) + resid)
        assert resid.std() == pytest.approx(0.1, rel=0.05)

    def test_uniform_noise_variance(self):
        cfg = small_cfg(n=50_000, sigma=0.2, noise="uniform")
        s = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
        resid = s.ys - default_regression_fn(s.xs)
        assert resid.std() == pytest.approx(0.2, rel=0.05)
        assert np.max(np.abs(resid)) <= np.sqrt(3) * 0.2 + 1e-12


class TestConfigValidation:
    def test_bad_values_rejected(self):
        with pytest.raises(ValueError):
            small_cfg(n=1)
        with pytest.raises(ValueError):
            small_cfg(alpha=1.0)
        with pytest.raises(ValueError):
            small_cfg(sigma=0.0)
        with pytest.raises(ValueError):
            small_cfg(method="nope")
        with pytest.raises(ValueError):
            small_cfg(t_grid=(0.0,))
        with pytest.raises(ValueError):
            small_cfg(center="theorem44")  # needs the smoothed method

    def test_default_grid(self):
        assert len(DEFAULT_T_GRID) == 19
        assert DEFAULT_T_GRID[0] == 0.05 and DEFAULT_T_GRID[-1] == 0.95

    def test_corrected_level_constant(self):
        assert CORRECTED_LEVEL == 0.96324


class TestDeterminism:
    def test_identical_runs(self):
        cfg = small_cfg(method="smoothed", t_grid=(0.3, 0.7))
        assert run_coverage(cfg) == run_coverage(cfg)

    @pytest.mark.parametrize("method", ["credible", "percentile-pairs", "smoothed"])
    def test_worker_count_invariance(self, method):
        cfg = small_cfg(method=method, reps=6)
        assert run_coverage(cfg, workers=1) == run_coverage(cfg, workers=2)

    def test_hist_worker_count_invariance(self):
        cfg = small_cfg(method="smoothed", reps=6)
        a = run_conditional_histogram(cfg, workers=1)
        b = run_conditional_histogram(cfg, workers=2)
        assert np.array_equal(a, b)


class TestCoverage:
    def test_single_rep_is_binary(self):
        cfg = small_cfg(reps=1)
        row = run_coverage(cfg).rows[0]
        assert row.coverage in (0.0, 1.0)
        assert row.mc_se == 0.0

    def test_report_fields(self):
        cfg = small_cfg(reps=8, t_grid=(0.25, 0.75))
        report = run_coverage(cfg)
        assert len(report.rows) == 2
        for row in report.rows:
            assert row.method == cfg.method and row.n == cfg.n and row.reps == 8
            assert 0.0 <= row.coverage <= 1.0
            assert row.mean_length >= 0.0
            assert row.mc_se == pytest.approx(
                np.sqrt(row.coverage * (1 - row.coverage) / row.reps)
            )

    def test_intervals_nest_in_alpha(self):
        # same draws, wider level -> wider interval, hence coverage
        # nonincreasing in alpha
        cfg_wide = small_cfg(alpha=0.05, method="smoothed")
        cfg_narrow = small_cfg(alpha=0.4, method="smoothed")
        sample = generate_dataset(cfg_wide, _rng_for(cfg_wide.seed, 0, 0))
        rd = _draws_for_sample(cfg_wide, sample, _rng_for(cfg_wide.seed, 0, 1))
        lo_w, hi_w = _intervals_from_draws(cfg_wide, rd)
        lo_n, hi_n = _intervals_from_draws(cfg_narrow, rd)
        assert np.all(lo_w <= lo_n) and np.all(hi_n <= hi_w)

    def test_coverage_nonincreasing_in_alpha(self):
        cov = {}
        for alpha in (0.05, 0.5):
            cfg = small_cfg(alpha=alpha, reps=30, method="percentile-pairs")
            cov[alpha] = run_coverage(cfg).rows[0].coverage
        assert cov[0.5] <= cov[0.05]

    def test_doubling_reps_shrinks_seed_to_seed_spread(self):
        # directional Monte Carlo consistency check across seeds
        def spread(reps):
            vals = [
                run_coverage(small_cfg(reps=reps, seed=seed, n=40, B=20)).rows[0].coverage
                for seed in range(16)
            ]
            return np.std(vals, ddof=1)

        assert spread(32) < spread(8)


class TestConditionalHistogram:
    def test_single_draw_is_binary(self):
        cfg = small_cfg(B=1, reps=6)
        probs = run_conditional_histogram(cfg)
        assert set(np.unique(probs)).issubset({0.0, 1.0})

    def test_requires_single_target(self):
        cfg = small_cfg(t_grid=(0.3, 0.7))
        with pytest.raises(ValueError):
            run_conditional_histogram(cfg)

    def test_probabilities_in_unit_interval(self):
        for method, center in [
            ("credible", "f0"),
            ("credible", "lse"),
            ("percentile-regression", "f0"),
            ("smoothed", "theorem44"),
        ]:
            cfg = small_cfg(method=method, center=center, reps=5)
            probs = run_conditional_histogram(cfg)
            assert probs.shape == (5,)
            assert np.all((probs >= 0) & (probs <= 1))

    def test_default_center_depends_on_method(self):
        assert small_cfg(method="smoothed").resolved_center() == "theorem44"
        assert small_cfg(method="credible").resolved_center() == "f0"


class TestIntervalsForSample:
    def test_default_grid_rows(self):
        cfg = ScenarioConfig(n=100, reps=1, B=40, method="smoothed", seed=2)
        sample = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
        rows = intervals_for_sample(sample, cfg)
        assert len(rows) == 19
        for r in rows:
            assert r["lo"] <= r["hi"]
            assert set(r) == {"t", "lo", "hi", "lse", "slse"}

    def test_tiny_noise_pins_intervals_to_truth(self):
        # with noise far below the fit error the intervals collapse onto
        # the regression function up to the step-fit resolution
        cfg = ScenarioConfig(
            n=400, reps=1, B=80, method="smoothed", t_grid=(0.4, 0.6), sigma=1e-6, seed=3
        )
        sample = generate_dataset(cfg, _rng_for(cfg.seed, 0, 0))
        for r in intervals_for_sample(sample, cfg):
            truth = default_regression_fn(r["t"])
            fit_error = 0.02  # step resolution scale at n=400
            assert abs(r["lo"] - truth) < fit_error
            assert abs(r["hi"] - truth) < fit_error
