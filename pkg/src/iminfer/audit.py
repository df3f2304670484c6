"""Calibration audits: validity, coverage, and a Bayes comparison probe.

Validity here is a frequency property of belief output: for an assertion
that is false, the belief assigned to it should exceed ``1 - alpha`` in at
most an ``alpha`` fraction of datasets, at every ``alpha`` simultaneously.
The audit simulates replications under a configured truth, evaluates belief
by the exact interval route, and compares per-alpha exceedance rates
against ``alpha`` plus three binomial standard errors.

Coverage audits check that level ``1 - alpha`` plausibility regions trap
the truth at the nominal rate.  For the coefficient-of-variation model the
region is unbounded with positive probability (a ratio parameter whose
denominator may sit near zero); when the configured truth has ``mu = 0``
the parameter itself is the point at infinity and a replication counts as
covered exactly when its region is unbounded.

The Bayes probe samples the posterior for (mu, sigma^2) under the standard
objective prior pi(mu, sigma^2) proportional to 1/sigma^2 (an exact
conjugate normal-inverse-chi-squared draw), transforms draws to
theta = sigma/mu, and reports posterior probabilities of the assertion.
This serves as a qualitative comparator only: posterior probability is not
calibrated in the validity sense above, which is the point the comparison
makes.

Replications run on per-replication derived streams and reports merge by
replication index, so results are identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtr

from .engine import DefaultRandomSet, belief_exact
from .errors import DegenerateSample
from .intervals import ParamSet, format_region
from .models import CvAssociation, CvStatistic, NormalMeanAssociation
from .noncentral_t import NoncentralTSpec, noncentral_t_cdf
from .streams import DEFAULT_SEED, stream, worker_count

DEFAULT_ALPHAS = (0.01, 0.05, 0.10, 0.25, 0.50)
DEFAULT_REPLICATIONS = 1000
MAX_RESAMPLES_PER_REP = 1000

NORMAL_MEAN = "normal-mean"
NORMAL_CV = "normal-cv"


@dataclass(frozen=True)
class NormalMeanTruth:
    theta: float

    def to_json(self) -> dict:
        return {"theta": self.theta}


@dataclass(frozen=True)
class CvTruth:
    mu: float
    sigma: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got n = {self.n}")
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ValueError("mu and sigma must be finite")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")

    @property
    def theta(self) -> float:
        """sigma/mu; infinite when mu = 0 (the boundary case)."""
        if self.mu == 0.0:
            return math.inf
        return self.sigma / self.mu

    def to_json(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma, "n": self.n}


@dataclass(frozen=True)
class AuditConfig:
    model: str
    truth: NormalMeanTruth | CvTruth
    assertion: ParamSet | None = None
    replications: int = DEFAULT_REPLICATIONS
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    seed: int = DEFAULT_SEED
    posterior_draws: int = 100_000

    def __post_init__(self) -> None:
        if self.model not in (NORMAL_MEAN, NORMAL_CV):
            raise ValueError(f"unknown model {self.model!r}")
        want = NormalMeanTruth if self.model == NORMAL_MEAN else CvTruth
        if not isinstance(self.truth, want):
            raise ValueError(f"model {self.model} needs a {want.__name__}")
        if self.replications < 1:
            raise ValueError("replications must be positive")
        if not self.alphas or not all(0.0 < a < 1.0 for a in self.alphas):
            raise ValueError("alphas must lie strictly inside (0, 1)")
        if self.posterior_draws < 10_000:
            raise ValueError("posterior_draws must be at least 10000")

    def truth_in_assertion(self) -> bool:
        """Whether the configured truth satisfies the assertion.

        A truth at infinity (cv with mu = 0) counts as inside exactly when
        the assertion is unbounded.
        """
        if self.assertion is None:
            raise ValueError("config has no assertion")
        if isinstance(self.truth, CvTruth) and self.truth.mu == 0.0:
            return not self.assertion.is_bounded
        return self.assertion.contains(self.truth.theta)


@dataclass(frozen=True)
class AlphaRecord:
    alpha: float
    exceedance_rate: float
    mc_se: float
    bound: float
    bound_satisfied: bool

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "exceedance_rate": self.exceedance_rate,
            "mc_se": self.mc_se,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
        }


@dataclass(frozen=True)
class AuditReport:
    config: AuditConfig
    per_alpha: tuple[AlphaRecord, ...]
    belief_samples: np.ndarray = field(repr=False)
    resampled_count: int = 0
    applicable: bool = True

    @property
    def all_bounds_satisfied(self) -> bool:
        return all(r.bound_satisfied for r in self.per_alpha)

    def ecdf_pairs(self) -> list[tuple[float, float]]:
        """(uniform plotting position, sorted belief) pairs."""
        b = np.sort(self.belief_samples)
        n = len(b)
        return [(float((i + 1) / (n + 1)), float(b[i])) for i in range(n)]

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "mode": "validity",
            "config": {
                "model": cfg.model,
                "truth": cfg.truth.to_json(),
                "assertion": format_region(cfg.assertion),
                "replications": cfg.replications,
                "alphas": list(cfg.alphas),
                "seed": cfg.seed,
            },
            "applicable": self.applicable,
            "resampled_count": self.resampled_count,
            "per_alpha": [r.to_json() for r in self.per_alpha],
            "ecdf": [[q, v] for q, v in self.ecdf_pairs()],
        }


@dataclass(frozen=True)
class CoverageReport:
    config: AuditConfig
    alpha: float
    coverage_rate: float
    mc_se: float
    bound: float
    bound_satisfied: bool
    fraction_unbounded: float | None = None

    def to_json(self) -> dict:
        cfg = self.config
        out = {
            "mode": "coverage",
            "config": {
                "model": cfg.model,
                "truth": cfg.truth.to_json(),
                "replications": cfg.replications,
                "seed": cfg.seed,
            },
            "alpha": self.alpha,
            "coverage_rate": self.coverage_rate,
            "mc_se": self.mc_se,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
        }
        if self.fraction_unbounded is not None:
            out["fraction_unbounded"] = self.fraction_unbounded
        return out


@dataclass(frozen=True)
class CompareReport:
    config: AuditConfig
    belief_samples: np.ndarray = field(repr=False)
    posterior_samples: np.ndarray = field(repr=False)
    resampled_count: int = 0
    applicable: bool = True

    def quantile_rows(self) -> list[tuple[float, float, float]]:
        """(uniform quantile, IM belief quantile, Bayes posterior quantile)."""
        b = np.sort(self.belief_samples)
        p = np.sort(self.posterior_samples)
        n = len(b)
        return [
            (float((i + 1) / (n + 1)), float(b[i]), float(p[i])) for i in range(n)
        ]


def _map_indexed(fn: Callable[[int], object], n: int) -> list:
    workers = min(worker_count(), n)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


def _simulate_cv_stat(
    rng: np.random.Generator, truth: CvTruth
) -> tuple[CvStatistic, int]:
    """Sufficient statistic of one simulated sample plus resample count.

    Uses the conditional representation: the sample mean and sd of n
    normals are mu + sigma*Z/sqrt(n) and sigma*sqrt(V/(n-1)) with Z
    standard normal, V chi-square(n-1), independent.  Degenerate draws
    (zero sd) are redrawn from the same stream and counted.
    """
    dof = truth.n - 1
    for attempt in range(MAX_RESAMPLES_PER_REP):
        z = rng.standard_normal()
        v = rng.chisquare(dof)
        sd = truth.sigma * math.sqrt(v / dof)
        mean = truth.mu + truth.sigma * z / math.sqrt(truth.n)
        if sd > 0.0 and math.isfinite(mean / sd):
            return CvStatistic(n=truth.n, mean=mean, sd=sd), attempt
    raise DegenerateSample("persistent degenerate draws")  # pragma: no cover


def simulate_belief_samples(cfg: AuditConfig) -> tuple[np.ndarray, np.ndarray, int]:
    """Belief and plausibility of the assertion across replications.

    Returns (belief values, plausibility values, resampled count), using the
    exact interval route for the default random set.  Replication ``i``
    draws from stream ``(seed, i)``.
    """
    if cfg.assertion is None:
        raise ValueError("config has no assertion")
    prs = DefaultRandomSet()
    if cfg.model == NORMAL_MEAN:
        assoc = NormalMeanAssociation()
        theta = cfg.truth.theta

        def one(i: int) -> tuple[float, float, int]:
            x = theta + stream(cfg.seed, i).standard_normal()
            b, p = belief_exact(assoc, prs, x, cfg.assertion)
            return b, p, 0

    else:
        assoc = CvAssociation(cfg.truth.n)

        def one(i: int) -> tuple[float, float, int]:
            stat, resampled = _simulate_cv_stat(stream(cfg.seed, i), cfg.truth)
            b, p = belief_exact(assoc, prs, stat.t, cfg.assertion)
            return b, p, resampled

    rows = _map_indexed(one, cfg.replications)
    beliefs = np.array([r[0] for r in rows])
    plausibilities = np.array([r[1] for r in rows])
    resampled = sum(r[2] for r in rows)
    return beliefs, plausibilities, resampled


def validity_audit(cfg: AuditConfig) -> AuditReport:
    """Exceedance audit of belief in a false assertion.

    For each alpha, the rate of replications with belief above ``1 - alpha``
    must stay below ``alpha + 3 * sqrt(alpha*(1-alpha)/replications)``.
    When the assertion actually contains the truth the bound does not
    apply and the report is marked not applicable.
    """
    beliefs, _, resampled = simulate_belief_samples(cfg)
    applicable = not cfg.truth_in_assertion()
    records = []
    for alpha in cfg.alphas:
        rate = float(np.mean(beliefs > 1.0 - alpha))
        se = math.sqrt(alpha * (1.0 - alpha) / cfg.replications)
        bound = alpha + 3.0 * se
        records.append(
            AlphaRecord(
                alpha=alpha,
                exceedance_rate=rate,
                mc_se=se,
                bound=bound,
                bound_satisfied=(not applicable) or rate <= bound,
            )
        )
    return AuditReport(
        config=cfg,
        per_alpha=tuple(records),
        belief_samples=beliefs,
        resampled_count=resampled,
        applicable=applicable,
    )


def coverage_audit(cfg: AuditConfig, alpha: float) -> CoverageReport:
    """Coverage of the level 1-alpha plausibility region at the truth."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if cfg.model == NORMAL_MEAN:
        theta = cfg.truth.theta
        limit = 1.0 - alpha

        def one(i: int) -> tuple[bool, bool, int]:
            z = float(stream(cfg.seed, i).standard_normal())
            # pl({theta}) > alpha <=> |2*Phi(z) - 1| < 1 - alpha
            covered = abs(2.0 * float(ndtr(z)) - 1.0) < limit
            return covered, False, 0

        rows = _map_indexed(one, cfg.replications)
        fraction_unbounded = None
    else:
        truth: CvTruth = cfg.truth
        dof = truth.n - 1
        sqrt_n = math.sqrt(truth.n)
        at_infinity = truth.mu == 0.0
        delta_true = 0.0 if at_infinity else sqrt_n / truth.theta

        def one(i: int) -> tuple[bool, bool, int]:
            stat, resampled = _simulate_cv_stat(stream(cfg.seed, i), truth)
            central = noncentral_t_cdf(stat.t, NoncentralTSpec(dof, 0.0))
            unbounded = alpha / 2.0 < central < 1.0 - alpha / 2.0
            if at_infinity:
                covered = unbounded
            else:
                u = noncentral_t_cdf(stat.t, NoncentralTSpec(dof, delta_true))
                covered = alpha / 2.0 < u < 1.0 - alpha / 2.0
            return covered, unbounded, resampled

        rows = _map_indexed(one, cfg.replications)
        fraction_unbounded = float(np.mean([r[1] for r in rows]))
    coverage = float(np.mean([r[0] for r in rows]))
    target = 1.0 - alpha
    se = math.sqrt(target * (1.0 - target) / cfg.replications)
    bound = target - 3.0 * se
    return CoverageReport(
        config=cfg,
        alpha=alpha,
        coverage_rate=coverage,
        mc_se=se,
        bound=bound,
        bound_satisfied=coverage >= bound,
        fraction_unbounded=fraction_unbounded,
    )


def bayes_cv_posterior_probability(
    stat: CvStatistic,
    assertion: ParamSet,
    draws: int,
    rng: np.random.Generator,
) -> float:
    """Posterior probability of the assertion about theta = sigma/mu.

    Stand-in reference posterior: the objective prior
    pi(mu, sigma^2) ∝ 1/sigma^2, conjugate for a normal sample, sampled
    exactly: sigma^2 | data is (n-1) S^2 / chi^2_{n-1} and mu | sigma^2 is
    N(mean, sigma^2/n).  Posterior probability is additive by construction,
    which is precisely what makes it assign probability near one to a false
    assertion in the boundary regime the validity audit probes; the
    comparison with belief output is therefore qualitative.
    """
    dof = stat.n - 1
    chi = rng.chisquare(dof, draws)
    # Guard the measure-zero zero draw; the posterior of sigma^2 is proper.
    chi = np.where(chi > 0.0, chi, np.finfo(float).tiny)
    sigma = stat.sd * np.sqrt(dof / chi)
    mu = stat.mean + sigma / math.sqrt(stat.n) * rng.standard_normal(draws)
    with np.errstate(divide="ignore"):
        thetas = np.where(mu != 0.0, sigma / mu, np.inf)
    return float(np.count_nonzero(assertion.contains_points(thetas)) / draws)


def compare_im_bayes(cfg: AuditConfig) -> CompareReport:
    """Paired belief/posterior samples for the same simulated datasets.

    Each replication simulates one dataset from the truth, evaluates exact
    belief in the assertion, and the stand-in posterior probability from
    the same stream.  Sorted quantile rows feed calibration plots; the
    validity dominance requirement applies only when the assertion is
    false, which ``applicable`` records.
    """
    if cfg.model != NORMAL_CV:
        raise ValueError("comparison is defined for the normal-cv model")
    if cfg.assertion is None:
        raise ValueError("config has no assertion")
    assoc = CvAssociation(cfg.truth.n)
    prs = DefaultRandomSet()

    def one(i: int) -> tuple[float, float, int]:
        rng = stream(cfg.seed, i)
        stat, resampled = _simulate_cv_stat(rng, cfg.truth)
        b, _ = belief_exact(assoc, prs, stat.t, cfg.assertion)
        post = bayes_cv_posterior_probability(
            stat, cfg.assertion, cfg.posterior_draws, rng
        )
        return b, post, resampled

    rows = _map_indexed(one, cfg.replications)
    return CompareReport(
        config=cfg,
        belief_samples=np.array([r[0] for r in rows]),
        posterior_samples=np.array([r[1] for r in rows]),
        resampled_count=sum(r[2] for r in rows),
        applicable=not cfg.truth_in_assertion(),
    )
