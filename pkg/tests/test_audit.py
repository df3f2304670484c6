"""Audit harness: simulation plumbing, validity/coverage bounds, and the
reference-posterior comparison."""

import math
import os
from unittest import mock

import numpy as np
import pytest

from iminfer.audit import (
    AuditConfig,
    CvTruth,
    NormalMeanTruth,
    bayes_cv_posterior_probability,
    compare_im_bayes,
    coverage_audit,
    simulate_belief_samples,
    validity_audit,
)
from iminfer.intervals import parse_region
from iminfer.models import CvStatistic
from iminfer.streams import stream


class TestConfig:
    def test_model_truth_pairing_enforced(self):
        with pytest.raises(ValueError):
            AuditConfig(model="normal-mean", truth=CvTruth(1.0, 1.0, 10))
        with pytest.raises(ValueError):
            AuditConfig(model="normal-cv", truth=NormalMeanTruth(0.0))
        with pytest.raises(ValueError):
            AuditConfig(model="exotic", truth=NormalMeanTruth(0.0))

    def test_cv_truth_validated(self):
        with pytest.raises(ValueError):
            CvTruth(1.0, -1.0, 10)
        with pytest.raises(ValueError):
            CvTruth(1.0, 1.0, 1)

    def test_alphas_validated(self):
        with pytest.raises(ValueError):
            AuditConfig(
                model="normal-mean",
                truth=NormalMeanTruth(0.0),
                alphas=(0.0, 0.5),
            )

    def test_truth_in_assertion(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[-1,1]"),
        )
        assert cfg.truth_in_assertion()
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.0, 1.0, 10),
            assertion=parse_region("[5,inf)"),
        )
        # mu = 0 puts the truth at infinity: inside iff unbounded
        assert cfg.truth_in_assertion()
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.0, 1.0, 10),
            assertion=parse_region("[5,9]"),
        )
        assert not cfg.truth_in_assertion()


class TestSimulation:
    def test_samples_in_unit_interval(self):
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.1, 1.0, 10),
            assertion=parse_region("(-inf,9]"),
            replications=50,
            seed=4,
        )
        bel, pl, resampled = simulate_belief_samples(cfg)
        assert len(bel) == 50
        assert np.all((0.0 <= bel) & (bel <= 1.0))
        assert np.all(bel <= pl + 1e-15)
        assert resampled == 0

    def test_deterministic_and_thread_invariant(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(1.0),
            assertion=parse_region("[2,3]"),
            replications=64,
            seed=9,
        )
        a = simulate_belief_samples(cfg)
        with mock.patch.dict(os.environ, {"IM_INFER_THREADS": "5"}):
            b = simulate_belief_samples(cfg)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_replication_streams_are_stable_prefixes(self):
        # adding replications must not change earlier replications
        base = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[1,2]"),
            replications=20,
            seed=3,
        )
        more = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[1,2]"),
            replications=40,
            seed=3,
        )
        a, _, _ = simulate_belief_samples(base)
        b, _, _ = simulate_belief_samples(more)
        assert np.array_equal(a, b[:20])


class TestValidity:
    def test_bounds_hold_for_false_assertion(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[0.5,1.5]"),
            replications=500,
            seed=10,
        )
        report = validity_audit(cfg)
        assert report.applicable
        assert report.all_bounds_satisfied
        for rec in report.per_alpha:
            assert rec.bound == pytest.approx(
                rec.alpha + 3 * math.sqrt(rec.alpha * (1 - rec.alpha) / 500)
            )

    def test_exactly_uniform_boundary_case(self):
        # belief in "not the truth" is exactly uniform; rates sit near alpha
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[0,0]").complement(),
            replications=2000,
            seed=12,
        )
        report = validity_audit(cfg)
        assert report.applicable
        assert report.all_bounds_satisfied
        half = [r for r in report.per_alpha if r.alpha == 0.5][0]
        assert half.exceedance_rate == pytest.approx(0.5, abs=0.05)

    def test_true_assertion_not_applicable(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[-1,1]"),
            replications=50,
            seed=2,
        )
        report = validity_audit(cfg)
        assert not report.applicable
        assert report.all_bounds_satisfied

    def test_ecdf_pairs_shape(self):
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.1, 1.0, 10),
            assertion=parse_region("(-inf,9]"),
            replications=30,
            seed=5,
        )
        report = validity_audit(cfg)
        pairs = report.ecdf_pairs()
        assert len(pairs) == 30
        qs = [q for q, _ in pairs]
        vs = [v for _, v in pairs]
        assert qs == sorted(qs) and vs == sorted(vs)

    def test_json_round_trips(self):
        import json

        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.1, 1.0, 10),
            assertion=parse_region("(-inf,9]"),
            replications=20,
            seed=5,
        )
        payload = validity_audit(cfg).to_json()
        text = json.dumps(payload, sort_keys=True, allow_nan=False)
        assert json.loads(text)["mode"] == "validity"


class TestCoverage:
    def test_normal_mean_two_sided(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(3.0),
            replications=2000,
            seed=21,
        )
        report = coverage_audit(cfg, 0.05)
        se = math.sqrt(0.95 * 0.05 / 2000)
        assert abs(report.coverage_rate - 0.95) <= 3 * se
        assert report.bound_satisfied
        assert report.fraction_unbounded is None

    def test_cv_bounded_truth(self):
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(1.0, 1.0, 30),
            replications=600,
            seed=22,
        )
        report = coverage_audit(cfg, 0.05)
        assert report.coverage_rate >= report.bound
        assert report.fraction_unbounded == 0.0

    def test_cv_zero_mean_truth(self):
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.0, 1.0, 30),
            replications=600,
            seed=23,
        )
        report = coverage_audit(cfg, 0.05)
        # at mu=0, covered == unbounded: the region traps the point at
        # infinity exactly when it is infinitely long
        assert report.coverage_rate == report.fraction_unbounded
        assert report.fraction_unbounded > 0.0
        assert report.bound_satisfied

    def test_alpha_validated(self):
        cfg = AuditConfig(
            model="normal-mean", truth=NormalMeanTruth(0.0), replications=10
        )
        with pytest.raises(ValueError):
            coverage_audit(cfg, 1.0)


class TestBayesProbe:
    def test_probability_in_unit_interval(self):
        stat = CvStatistic(n=10, mean=0.05, sd=1.0)
        p = bayes_cv_posterior_probability(
            stat, parse_region("(-inf,9]"), 20_000, stream(77, 0)
        )
        assert 0.0 <= p <= 1.0

    def test_deterministic_given_stream(self):
        stat = CvStatistic(n=10, mean=0.3, sd=1.0)
        region = parse_region("[0,5]")
        a = bayes_cv_posterior_probability(stat, region, 20_000, stream(7, 1))
        b = bayes_cv_posterior_probability(stat, region, 20_000, stream(7, 1))
        assert a == b

    def test_tracks_the_data(self):
        # data squarely inside the assertion should earn high posterior mass
        stat = CvStatistic(n=40, mean=2.0, sd=1.0)
        inside = bayes_cv_posterior_probability(
            stat, parse_region("[0.1, 2]"), 40_000, stream(8, 0)
        )
        outside = bayes_cv_posterior_probability(
            stat, parse_region("[4, 9]"), 40_000, stream(8, 0)
        )
        assert inside > 0.9
        assert outside < 0.1


class TestCompare:
    def test_report_shape_and_flags(self):
        cfg = AuditConfig(
            model="normal-cv",
            truth=CvTruth(0.1, 1.0, 10),
            assertion=parse_region("(-inf,9]"),
            replications=40,
            seed=6,
            posterior_draws=10_000,
        )
        report = compare_im_bayes(cfg)
        assert report.applicable
        rows = report.quantile_rows()
        assert len(rows) == 40
        qs = [q for q, _, _ in rows]
        assert qs == sorted(qs)
        assert all(0 <= b <= 1 and 0 <= p <= 1 for _, b, p in rows)

    def test_normal_mean_rejected(self):
        cfg = AuditConfig(
            model="normal-mean",
            truth=NormalMeanTruth(0.0),
            assertion=parse_region("[1,2]"),
            replications=10,
        )
        with pytest.raises(ValueError):
            compare_im_bayes(cfg)
