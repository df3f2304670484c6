"""Concrete inferential models: normal mean and normal coefficient of variation.

Normal mean (unit variance)
    X = theta + PHI^{-1}(U).  Everything is available in closed form; the
    model doubles as the engine's reference point.

Normal coefficient of variation
    For a sample of n normals with mean mu and standard deviation sigma the
    parameter is theta = sigma / mu.  The pair (sample mean, sample sd)
    compresses to the statistic t = sqrt(n) * mean / sd, whose law depends
    on theta alone:

        t = F^{-1}_{dof, delta}(U),   dof = n - 1,  delta = sqrt(n) / theta,

    with F the noncentral-t CDF.  The map theta -> CDF value is increasing
    on each sign branch, rising from 0 (theta -> 0+) to the central value
    (theta -> +inf), then continuing from the central value (theta -> -inf)
    up to 1 (theta -> 0-), which is why plausibility regions are bounded
    exactly when the central-t CDF of t lands outside (alpha/2, 1-alpha/2)
    and otherwise stretch to infinity in both directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import ndtr, ndtri

from .engine import Association, AuxiliaryInterval
from .errors import DegenerateSample, ThetaZero
from .intervals import INF, Interval, ParamSet
from .noncentral_t import (
    MAX_NONCENTRALITY,
    NoncentralTSpec,
    noncentral_t_cdf,
    noncentral_t_solve_noncentrality,
)

U_CLAMP = 1e-15


def load_dataset(path: str | Path) -> np.ndarray:
    """Read observations: one value per line, optional single header ``x``.

    Raises
    ------
    ValueError
        On non-numeric content or non-finite values.
    DegenerateSample
        On fewer than two observations.
    """
    lines = Path(path).read_text().splitlines()
    values: list[float] = []
    for i, raw in enumerate(lines):
        token = raw.strip().rstrip(",")
        if not token:
            continue
        if i == 0 and token.lower() == "x":
            continue
        try:
            v = float(token)
        except ValueError as exc:
            raise ValueError(f"{path}: line {i + 1}: not a number: {raw!r}") from exc
        if not math.isfinite(v):
            raise ValueError(f"{path}: line {i + 1}: non-finite value {v!r}")
        values.append(v)
    if len(values) < 2:
        raise DegenerateSample(f"{path}: need at least 2 observations")
    return np.asarray(values)


# ---------------------------------------------------------------------------
# normal mean


class NormalMeanAssociation(Association):
    """X = theta + scale * PHI^{-1}(U); scale 1 for a single unit-variance draw."""

    def __init__(self, scale: float = 1.0) -> None:
        if not (math.isfinite(scale) and scale > 0):
            raise ValueError(f"scale must be a positive real, got {scale!r}")
        self.scale = float(scale)

    def forward(self, theta: float, u: float) -> float:
        u = min(max(float(u), U_CLAMP), 1.0 - U_CLAMP)
        return float(theta) + self.scale * float(ndtri(u))

    def aux_at(self, x: float, theta: float) -> float:
        return float(ndtr((x - theta) / self.scale))

    def focal_param_set(self, x: float, interval: AuxiliaryInterval) -> ParamSet:
        # theta(u) = x - scale * PHI^{-1}(u) is decreasing in u.
        lo = x - self.scale * float(ndtri(interval.hi))
        hi = x - self.scale * float(ndtri(interval.lo))
        return ParamSet((Interval(lo, hi, math.isinf(lo), math.isinf(hi)),))

    def aux_region_image(
        self, x: float, region: ParamSet
    ) -> list[tuple[float, float]]:
        image: list[tuple[float, float]] = []
        for comp in region.components:
            c = 0.0 if comp.hi == INF else self.aux_at(x, comp.hi)
            d = 1.0 if comp.lo == -INF else self.aux_at(x, comp.lo)
            image.append((c, d))
        image.sort()
        return image


def normal_mean_belief_closed(x: float, theta0: float) -> tuple[float, float]:
    """Exact belief and plausibility of the one-sided assertion theta <= theta0."""
    q = float(ndtr(theta0 - x))
    return max(0.0, 2.0 * q - 1.0), min(1.0, 2.0 * q)


def normal_mean_interval(x: float, alpha: float, scale: float = 1.0) -> ParamSet:
    """Exact level 1-alpha plausibility region: x +/- scale * z_{1-alpha/2}."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    z = float(ndtri(1.0 - alpha / 2.0))
    return ParamSet((Interval(x - scale * z, x + scale * z, True, True),))


# ---------------------------------------------------------------------------
# normal coefficient of variation


@dataclass(frozen=True)
class CvStatistic:
    """Sufficient summary of a normal sample for coefficient-of-variation work."""

    n: int
    mean: float
    sd: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DegenerateSample(f"need n >= 2, got n = {self.n}")
        if not (math.isfinite(self.mean) and math.isfinite(self.sd)):
            raise DegenerateSample("mean and sd must be finite")
        if self.sd <= 0.0:
            raise DegenerateSample(f"sample sd must be positive, got {self.sd!r}")

    @property
    def dof(self) -> int:
        return self.n - 1

    @property
    def t(self) -> float:
        return math.sqrt(self.n) * self.mean / self.sd


def cv_statistic(data: np.ndarray) -> CvStatistic:
    """Summary statistic from raw observations (sd uses divisor n - 1)."""
    data = np.asarray(data, dtype=float)
    n = data.size
    if n < 2:
        raise DegenerateSample(f"need n >= 2 observations, got {n}")
    return CvStatistic(n=int(n), mean=float(np.mean(data)), sd=float(np.std(data, ddof=1)))


def psi_interval_to_theta(psi_lo: float, psi_hi: float) -> ParamSet:
    """Image of {psi in [psi_lo, psi_hi]} under theta = 1/psi.

    Infinite psi endpoints map to theta = 0 limits (open); a psi interval
    straddling zero maps to a doubly-unbounded theta union.
    """
    if psi_lo > psi_hi:
        raise ValueError("psi endpoints out of order")
    comps: list[Interval] = []
    if psi_hi > 0.0:
        upper = psi_hi
        lower = max(psi_lo, 0.0)
        th_lo = 0.0 if upper == INF else 1.0 / upper
        th_hi = INF if lower == 0.0 else 1.0 / lower
        comps.append(Interval(th_lo, th_hi, upper == INF, math.isinf(th_hi)))
    if psi_lo < 0.0:
        lower = psi_lo
        upper = min(psi_hi, 0.0)
        th_lo = -INF if upper == 0.0 else 1.0 / upper
        th_hi = 0.0 if lower == -INF else 1.0 / lower
        comps.append(Interval(th_lo, th_hi, math.isinf(th_lo), lower == -INF))
    return ParamSet(comps)


class CvAssociation(Association):
    """t-statistic association for theta = sigma / mu.

    ``aux_at`` and the focal inversion go through the noncentrality
    ``delta = sqrt(n) / theta``; the documented noncentrality cap applies
    (RangeExceeded propagates from the solver/CDF for theta too close to
    zero).  theta = 0 itself has no auxiliary value (ThetaZero).
    """

    FORWARD_U_CLAMP = 1e-12

    def __init__(self, n: int) -> None:
        if not float(n).is_integer() or n < 2:
            raise ValueError(f"n must be an integer >= 2, got {n!r}")
        self.n = int(n)
        self.dof = self.n - 1
        self._sqrt_n = math.sqrt(self.n)

    def _delta(self, theta: float) -> float:
        theta = float(theta)
        if theta == 0.0:
            raise ThetaZero("theta = 0 has no auxiliary image")
        return self._sqrt_n / theta

    def aux_at(self, x: float, theta: float) -> float:
        return noncentral_t_cdf(x, NoncentralTSpec(self.dof, self._delta(theta)))

    def scan_aux_at(self, x: float, theta: float) -> float | None:
        """Grid-scan variant: continuous extension 0 at theta = 0; the
        noncentrality is clamped to the documented cap for tiny |theta|,
        adequate while |x| stays well below the cap."""
        if theta == 0.0:
            return None
        delta = self._sqrt_n / theta
        delta = min(MAX_NONCENTRALITY, max(-MAX_NONCENTRALITY, delta))
        return noncentral_t_cdf(x, NoncentralTSpec(self.dof, delta))

    def forward(self, theta: float, u: float) -> float:
        """Quantile F^{-1} at u for the noncentrality implied by theta."""
        u = min(max(float(u), self.FORWARD_U_CLAMP), 1.0 - self.FORWARD_U_CLAMP)
        spec = NoncentralTSpec(self.dof, self._delta(theta))
        lo = hi = spec.noncentrality
        h = 4.0 * (1.0 + abs(spec.noncentrality))
        for _ in range(200):
            lo = spec.noncentrality - h
            if noncentral_t_cdf(lo, spec) < u:
                break
            h *= 2.0
        h = 4.0 * (1.0 + abs(spec.noncentrality))
        for _ in range(200):
            hi = spec.noncentrality + h
            if noncentral_t_cdf(hi, spec) > u:
                break
            h *= 2.0
        while hi - lo > 1e-10 * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if noncentral_t_cdf(mid, spec) < u:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def refine_fwd(self, theta: float) -> float:
        return 1.0 / theta

    def refine_inv(self, r: float) -> float:
        return 1.0 / r

    def focal_param_set(self, x: float, interval: AuxiliaryInterval) -> ParamSet:
        # The CDF decreases in psi, so the u-interval flips: its upper end
        # maps to the smaller psi.  Auxiliary endpoints at exactly 0 or 1
        # correspond to the infinite-psi limits.
        if interval.lo <= 0.0:
            psi_hi = INF
        else:
            psi_hi = noncentral_t_solve_noncentrality(x, self.dof, interval.lo) / self._sqrt_n
        if interval.hi >= 1.0:
            psi_lo = -INF
        else:
            psi_lo = noncentral_t_solve_noncentrality(x, self.dof, interval.hi) / self._sqrt_n
        if psi_lo > psi_hi:
            psi_lo, psi_hi = psi_hi, psi_lo
        return psi_interval_to_theta(psi_lo, psi_hi)

    def _u_at(self, x: float, theta_endpoint: float, side: str) -> float:
        """Map one theta endpoint to auxiliary space, with branch limits.

        side 'lo'/'hi' says which end of a component the endpoint is, which
        disambiguates the two one-sided limits at theta = 0.
        """
        if theta_endpoint == -INF or theta_endpoint == INF:
            return noncentral_t_cdf(x, NoncentralTSpec(self.dof, 0.0))
        if theta_endpoint == 0.0:
            return 0.0 if side == "lo" else 1.0
        return self.aux_at(x, theta_endpoint)

    def aux_region_image(
        self, x: float, region: ParamSet
    ) -> list[tuple[float, float]]:
        # Pieces carry glue flags: an endpoint produced by an infinite
        # theta endpoint may merge with its counterpart (the two branches
        # of a doubly-unbounded assertion meet at the central CDF value);
        # endpoints at finite theta never merge, preserving punctures such
        # as a removed singleton.
        pieces: list[tuple[float, float, bool, bool]] = []
        for comp in region.components:
            if comp.lo == 0.0 and comp.hi == 0.0:
                continue  # {0} has no auxiliary image
            if comp.lo < 0.0 < comp.hi:
                # Straddles zero: split into the two sign branches.
                pieces.append(
                    (self._u_at(x, comp.lo, "lo"), 1.0, comp.lo == -INF, False)
                )
                pieces.append(
                    (0.0, self._u_at(x, comp.hi, "hi"), False, comp.hi == INF)
                )
            else:
                c = self._u_at(x, comp.lo, "lo")
                d = self._u_at(x, comp.hi, "hi")
                glue_l = math.isinf(comp.lo)
                glue_r = math.isinf(comp.hi)
                if c > d:
                    c, d = d, c
                    glue_l, glue_r = glue_r, glue_l
                pieces.append((c, d, glue_l, glue_r))
        pieces.sort()
        merged: list[tuple[float, float, bool, bool]] = []
        for c, d, gl, gr in pieces:
            if merged:
                pc, pd, pgl, pgr = merged[-1]
                if c < pd or (c == pd and pgr and gl):
                    merged[-1] = (pc, max(pd, d), pgl, gr if d >= pd else pgr)
                    continue
            merged.append((c, d, gl, gr))
        return [(c, d) for c, d, _, _ in merged]


def cv_singleton_plausibility(stat: CvStatistic, theta: float) -> float:
    """Plausibility of {theta}: 1 - |2 F_{dof, sqrt(n)/theta}(t) - 1|.

    Raises
    ------
    ThetaZero
        At theta = 0 (no auxiliary image; the continuous extension there
        is 0 and is applied only by grid-scan helpers).
    RangeExceeded
        When sqrt(n)/|theta| exceeds the documented noncentrality range.
    """
    theta = float(theta)
    if theta == 0.0:
        raise ThetaZero("theta = 0 has no auxiliary image")
    u = noncentral_t_cdf(
        stat.t, NoncentralTSpec(stat.dof, math.sqrt(stat.n) / theta)
    )
    return 1.0 - abs(2.0 * u - 1.0)


def cv_plausibility_interval(stat: CvStatistic, alpha: float) -> ParamSet:
    """Level 1-alpha plausibility region {theta : alpha/2 < F(t) < 1-alpha/2}.

    Bounded exactly when the central-t CDF of t falls outside
    (alpha/2, 1-alpha/2); otherwise an unbounded two-sided union -- the
    hallmark of ratio parameters whose denominator may sit near zero.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    sqrt_n = math.sqrt(stat.n)
    psi_lo = noncentral_t_solve_noncentrality(stat.t, stat.dof, 1.0 - alpha / 2.0) / sqrt_n
    psi_hi = noncentral_t_solve_noncentrality(stat.t, stat.dof, alpha / 2.0) / sqrt_n
    region = psi_interval_to_theta(psi_lo, psi_hi)
    # The region is an open set; reopen the finite endpoints produced by
    # the closed-interval mapping.
    return ParamSet(
        Interval(c.lo, c.hi, True, True) for c in region.components
    )


def cv_region_unbounded(stat: CvStatistic, alpha: float) -> bool:
    """Whether the level 1-alpha region stretches to +/- infinity."""
    central = noncentral_t_cdf(stat.t, NoncentralTSpec(stat.dof, 0.0))
    return alpha / 2.0 < central < 1.0 - alpha / 2.0


def cv_plausibility_curve(stat: CvStatistic, thetas: np.ndarray) -> np.ndarray:
    """Singleton plausibility along a theta grid (scan semantics at 0)."""
    assoc = CvAssociation(stat.n)
    out = np.empty(len(thetas))
    for i, theta in enumerate(np.asarray(thetas, dtype=float)):
        u = assoc.scan_aux_at(stat.t, float(theta))
        out[i] = 0.0 if u is None else 1.0 - abs(2.0 * u - 1.0)
    return out
