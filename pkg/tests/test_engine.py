"""Engine-level behavior: the default random set, Monte Carlo belief,
the exact interval route, and plausibility regions."""

import math
import os
from unittest import mock

import numpy as np
import pytest

from iminfer.engine import (
    AuxiliaryInterval,
    DefaultRandomSet,
    Grid,
    belief_exact,
    belief_mc,
    focal_set,
    plausibility_region,
)
from iminfer.errors import DegenerateGrid, EmptyFocalSet
from iminfer.intervals import Interval, ParamSet, parse_region
from iminfer.models import NormalMeanAssociation, normal_mean_belief_closed
from iminfer.streams import stream


class TestAuxiliaryInterval:
    def test_bounds_checked(self):
        AuxiliaryInterval(0.0, 1.0)
        with pytest.raises(ValueError):
            AuxiliaryInterval(-0.1, 0.5)
        with pytest.raises(ValueError):
            AuxiliaryInterval(0.6, 0.5)


class TestDefaultRandomSet:
    def test_containment_probability_formula(self):
        prs = DefaultRandomSet()
        for u, want in [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.25, 0.5)]:
            assert prs.containment_probability(u) == pytest.approx(want)

    def test_realizations_centered_and_interior(self):
        prs = DefaultRandomSet()
        rng = stream(7, 0)
        for _ in range(2000):
            iv = prs.sample(rng)
            assert 0.0 < iv.lo <= iv.hi < 1.0
            assert iv.lo + iv.hi == pytest.approx(1.0, abs=1e-12)

    def test_batch_matches_scalar_stream(self):
        prs = DefaultRandomSet()
        los, his = prs.sample_batch(stream(3, 5), 500)
        rng = stream(3, 5)
        for i in range(500):
            iv = prs.sample(rng)
            assert iv.lo == los[i] and iv.hi == his[i]

    def test_containment_uniformity(self):
        # f_S(U) for U uniform should itself be uniform: KS test at 1%
        prs = DefaultRandomSet()
        rng = stream(99, 0)
        u = rng.uniform(size=20000)
        f = np.array([prs.containment_probability(float(v)) for v in u])
        ecdf = np.sort(f)
        grid = (np.arange(len(f)) + 1) / len(f)
        ks = np.max(np.abs(ecdf - grid))
        assert ks <= 1.628 / math.sqrt(len(f))

    def test_interval_event_probabilities(self):
        # closed forms for P(S subset of [c,d]) and P(S hits [c,d])
        # against direct integration over the uniform width variable
        prs = DefaultRandomSet()
        rng = stream(11, 0)
        los, his = prs.sample_batch(rng, 200_000)
        for c, d in [(0.1, 0.7), (0.0, 0.4), (0.55, 1.0), (0.2, 0.45), (0.5, 0.5)]:
            sub = float(np.mean((c < los) & (his < d)))
            hit = float(np.mean((c <= his) & (los <= d)))
            assert prs.subset_probability(c, d) == pytest.approx(sub, abs=0.01)
            assert prs.hit_probability(c, d) == pytest.approx(hit, abs=0.01)


class TestBeliefMc:
    def setup_method(self):
        self.assoc = NormalMeanAssociation()
        self.prs = DefaultRandomSet()

    def test_matches_closed_form(self):
        x = 0.4
        theta0 = 1.2
        est = belief_mc(
            self.assoc,
            self.prs,
            x,
            parse_region(f"(-inf,{theta0}]"),
            draws=100_000,
            seed=21,
        )
        bel, pl = normal_mean_belief_closed(x, theta0)
        assert abs(est.belief - bel) <= 3 * max(est.belief_mc_se, 1e-4)
        assert abs(est.plausibility - pl) <= 3 * max(est.plausibility_mc_se, 1e-4)

    def test_dominance_and_complement_identity_exact(self):
        x = -0.3
        region = parse_region("[-1.0, 0.5]")
        a = belief_mc(self.assoc, self.prs, x, region, draws=30_000, seed=8)
        c = belief_mc(
            self.assoc, self.prs, x, region.complement(), draws=30_000, seed=8
        )
        # same seed, same draws: the identities hold draw for draw
        assert a.belief <= a.plausibility
        assert a.plausibility == pytest.approx(1.0 - c.belief, abs=1e-15)
        assert a.belief == pytest.approx(1.0 - c.plausibility, abs=1e-15)

    def test_whole_line_is_certain(self):
        est = belief_mc(
            self.assoc, self.prs, 0.0, ParamSet.whole_line(), draws=5000, seed=1
        )
        assert est.belief == 1.0 and est.plausibility == 1.0

    def test_empty_assertion_is_impossible(self):
        est = belief_mc(
            self.assoc, self.prs, 0.0, ParamSet.empty(), draws=5000, seed=1
        )
        assert est.belief == 0.0 and est.plausibility == 0.0

    def test_deterministic_given_seed(self):
        args = (self.assoc, self.prs, 0.7, parse_region("[0,2]"))
        a = belief_mc(*args, draws=70_000, seed=5)
        b = belief_mc(*args, draws=70_000, seed=5)
        assert a == b

    def test_thread_count_does_not_change_result(self):
        args = (self.assoc, self.prs, 0.7, parse_region("[0,2]"))
        base = belief_mc(*args, draws=150_000, seed=5)
        with mock.patch.dict(os.environ, {"IM_INFER_THREADS": "7"}):
            threaded = belief_mc(*args, draws=150_000, seed=5)
        assert base == threaded

    def test_draw_count_changes_estimate_not_contract(self):
        args = (self.assoc, self.prs, 0.7, parse_region("[0,2]"))
        small = belief_mc(*args, draws=1000, seed=5)
        assert small.draws == 1000
        assert small.belief_mc_se > 0


class TestBeliefExact:
    def test_agrees_with_mc(self):
        assoc = NormalMeanAssociation()
        prs = DefaultRandomSet()
        rng = np.random.default_rng(17)
        for _ in range(10):
            x = float(rng.normal())
            a, b = sorted(rng.normal(size=2))
            region = ParamSet((Interval(float(a), float(b)),))
            bel, pl = belief_exact(assoc, prs, x, region)
            est = belief_mc(assoc, prs, x, region, draws=100_000, seed=33)
            assert abs(bel - est.belief) <= 4 * max(est.belief_mc_se, 1e-4)
            assert abs(pl - est.plausibility) <= 4 * max(
                est.plausibility_mc_se, 1e-4
            )
            assert bel <= pl

    def test_requires_interval_probabilities(self):
        class Opaque:
            def sample(self, rng):  # pragma: no cover
                raise NotImplementedError

            def containment_probability(self, u):  # pragma: no cover
                return 0.0

        with pytest.raises(TypeError):
            belief_exact(
                NormalMeanAssociation(), Opaque(), 0.0, ParamSet.whole_line()
            )


class TestFocalSet:
    def test_inverts_realization(self):
        assoc = NormalMeanAssociation()
        out = focal_set(assoc, 0.0, AuxiliaryInterval(0.25, 0.75))
        comp = out.components[0]
        z = 0.6744897501960817  # standard normal upper quartile
        assert comp.lo == pytest.approx(-z, abs=1e-9)
        assert comp.hi == pytest.approx(z, abs=1e-9)

    def test_empty_raises(self):
        class NowhereAssociation(NormalMeanAssociation):
            def focal_param_set(self, x, realization):
                return ParamSet.empty()

        with pytest.raises(EmptyFocalSet):
            focal_set(NowhereAssociation(), 0.0, AuxiliaryInterval(0.4, 0.6))


class TestGrid:
    def test_validation(self):
        with pytest.raises(DegenerateGrid):
            Grid(0.0, 1.0, 1)
        with pytest.raises(DegenerateGrid):
            Grid(1.0, 1.0, 10)
        with pytest.raises(DegenerateGrid):
            Grid(0.0, math.inf, 10)

    def test_points(self):
        pts = Grid(0.0, 1.0, 5).points()
        assert list(pts) == [0.0, 0.25, 0.5, 0.75, 1.0]


class TestPlausibilityRegion:
    def test_normal_mean_closed_form(self):
        assoc = NormalMeanAssociation()
        prs = DefaultRandomSet()
        region = plausibility_region(assoc, prs, 0.0, 0.05, Grid(-6, 6, 241))
        assert len(region.components) == 1
        comp = region.components[0]
        z = 1.959963984540054
        assert comp.lo == pytest.approx(-z, abs=1e-6)
        assert comp.hi == pytest.approx(z, abs=1e-6)

    def test_nesting_in_alpha(self):
        assoc = NormalMeanAssociation()
        prs = DefaultRandomSet()
        grid = Grid(-6, 6, 241)
        wide = plausibility_region(assoc, prs, 0.0, 0.05, grid)
        narrow = plausibility_region(assoc, prs, 0.0, 0.5, grid)
        assert wide.components[0].lo < narrow.components[0].lo
        assert narrow.components[0].hi < wide.components[0].hi

    def test_grid_edge_extends_to_infinity(self):
        assoc = NormalMeanAssociation()
        prs = DefaultRandomSet()
        region = plausibility_region(assoc, prs, 0.0, 0.05, Grid(-0.5, 0.5, 21))
        assert region.components[0].lo == -math.inf
        assert region.components[0].hi == math.inf

    def test_alpha_validated(self):
        with pytest.raises(ValueError):
            plausibility_region(
                NormalMeanAssociation(),
                DefaultRandomSet(),
                0.0,
                1.5,
                Grid(-1, 1, 11),
            )
