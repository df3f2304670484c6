"""Monte Carlo engine for inferential models.

An inferential model ties observed data to a parameter through an
association ``x = a(theta, u)`` driven by an unobserved auxiliary variable
``u ~ Unif(0, 1)``.  Instead of a point prediction for ``u``, a predictive
random set ``S`` is drawn; the focal set of a realization is every parameter
value consistent with the data and some ``u`` in ``S``.  Belief in an
assertion is the probability the focal set falls inside it; plausibility is
the probability the focal set meets it.

Subset and intersection tests run in auxiliary space: the assertion region
is pulled back once through the association's monotone inversion, after
which each sampled interval is compared against a fixed union of
``[c, d]`` intervals inside ``[0, 1]``.  Draws are partitioned into
fixed-size blocks, block ``b`` on derived stream ``b``, and counts are
merged by block index, so results do not depend on thread count or
schedule.  Endpoint ties resolve conservatively: a sampled interval
touching an image boundary counts as intersecting, never as contained.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGrid, EmptyFocalSet
from .intervals import INF, Interval, ParamSet
from .streams import stream, worker_count

DEFAULT_DRAWS = 100_000
BLOCK = 65536
REFINE_TOL = 1e-9


@dataclass(frozen=True)
class AuxiliaryInterval:
    """Closed subinterval of the auxiliary space [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(
                f"auxiliary interval [{self.lo}, {self.hi}] not inside [0, 1]"
            )


class PredictiveRandomSet(ABC):
    """Random subset of (0, 1) predicting the unobserved auxiliary value."""

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> AuxiliaryInterval:
        """One realization."""

    @abstractmethod
    def containment_probability(self, u: float) -> float:
        """P(S contains u), the single-point coverage function."""

    def sample_batch(
        self, rng: np.random.Generator, n: int
    ) -> tuple[np.ndarray, np.ndarray]:
        los = np.empty(n)
        his = np.empty(n)
        for i in range(n):
            s = self.sample(rng)
            los[i], his[i] = s.lo, s.hi
        return los, his


class DefaultRandomSet(PredictiveRandomSet):
    """Symmetric interval about one half: S = {u : |u - 1/2| <= |W - 1/2|}.

    With ``W ~ Unif(0, 1)`` the containment probability is
    ``1 - |2u - 1|``, itself uniformly distributed at a uniform ``u``, which
    is exactly the calibration needed for valid belief output.  The
    measure-zero draw ``W = 0.0`` is redrawn so realizations stay strictly
    interior to (0, 1).
    """

    def sample(self, rng: np.random.Generator) -> AuxiliaryInterval:
        w = rng.random()
        while w == 0.0:
            w = rng.random()
        r = abs(w - 0.5)
        return AuxiliaryInterval(0.5 - r, 0.5 + r)

    def sample_batch(
        self, rng: np.random.Generator, n: int
    ) -> tuple[np.ndarray, np.ndarray]:
        w = rng.random(n)
        bad = w == 0.0
        while bad.any():
            w[bad] = rng.random(int(bad.sum()))
            bad = w == 0.0
        r = np.abs(w - 0.5)
        return 0.5 - r, 0.5 + r

    def containment_probability(self, u: float) -> float:
        u = float(u)
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"u = {u!r} outside [0, 1]")
        return 1.0 - abs(2.0 * u - 1.0)

    # Exact interval-event probabilities for the closed-form belief route.
    @staticmethod
    def subset_probability(c: float, d: float) -> float:
        """P(S inside [c, d])."""
        return max(0.0, min(1.0, 1.0 - 2.0 * c, 2.0 * d - 1.0))

    @staticmethod
    def hit_probability(c: float, d: float) -> float:
        """P(S meets [c, d])."""
        if c <= 0.5 <= d:
            return 1.0
        if d < 0.5:
            return max(0.0, 2.0 * d)
        return max(0.0, 2.0 * (1.0 - c))


class Association(ABC):
    """Data-parameter link ``x = a(theta, u)`` with monotone inversion.

    Implementations expose the forward map, the auxiliary value consistent
    with a (data, parameter) pair, explicit inversion of an auxiliary
    interval into a parameter set, and the pullback of a parameter region
    into auxiliary space.
    """

    @abstractmethod
    def forward(self, theta: float, u: float) -> float:
        """Statistic value generated at ``theta`` by auxiliary draw ``u``."""

    @abstractmethod
    def aux_at(self, x: float, theta: float) -> float:
        """The u in (0, 1) solving ``x = a(theta, u)``."""

    @abstractmethod
    def focal_param_set(self, x: float, interval: AuxiliaryInterval) -> ParamSet:
        """Parameters consistent with ``x`` and some u in the interval."""

    @abstractmethod
    def aux_region_image(
        self, x: float, region: ParamSet
    ) -> list[tuple[float, float]]:
        """Pullback of a parameter region into [0, 1].

        Returns sorted, disjoint closed intervals ``(c, d)``; open/closed
        distinctions are dropped because they carry no probability under a
        continuous predictive random set (ties resolve conservatively in
        the draw-wise tests).
        """

    def scan_aux_at(self, x: float, theta: float) -> float | None:
        """`aux_at` variant for grid scans; None means plausibility 0."""
        return self.aux_at(x, theta)

    def refine_fwd(self, theta: float) -> float:
        """Coordinate used for boundary bisection (identity by default)."""
        return theta

    def refine_inv(self, r: float) -> float:
        return r


@dataclass(frozen=True)
class BeliefEstimate:
    """Monte Carlo belief/plausibility pair with binomial standard errors."""

    belief: float
    plausibility: float
    belief_mc_se: float
    plausibility_mc_se: float
    draws: int


@dataclass(frozen=True)
class Grid:
    """Uniform evaluation grid lo..hi with ``steps`` points."""

    lo: float
    hi: float
    steps: int

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise DegenerateGrid(f"grid needs at least 2 points, got {self.steps}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DegenerateGrid("grid endpoints must be finite")
        if not self.lo < self.hi:
            raise DegenerateGrid(f"grid has zero width: [{self.lo}, {self.hi}]")

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def _image_arrays(image: list[tuple[float, float]]) -> tuple[np.ndarray, np.ndarray]:
    if not image:
        return np.empty(0), np.empty(0)
    arr = np.asarray(image, dtype=float)
    return arr[:, 0], arr[:, 1]


def _contained_mask(
    lo: np.ndarray, hi: np.ndarray, c: np.ndarray, d: np.ndarray
) -> np.ndarray:
    out = np.zeros(lo.shape, dtype=bool)
    for cj, dj in zip(c, d):
        out |= (cj < lo) & (hi < dj)
    return out


def _intersects_mask(
    lo: np.ndarray, hi: np.ndarray, c: np.ndarray, d: np.ndarray
) -> np.ndarray:
    out = np.zeros(lo.shape, dtype=bool)
    for cj, dj in zip(c, d):
        out |= (cj <= hi) & (lo <= dj)
    return out


def complement_image(image: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Closure of [0, 1] minus a sorted disjoint image."""
    pieces: list[tuple[float, float]] = []
    prev = 0.0
    for c, d in image:
        if c > prev:
            pieces.append((prev, c))
        prev = max(prev, d)
    if prev < 1.0:
        pieces.append((prev, 1.0))
    return pieces


def belief_mc(
    assoc: Association,
    prs: PredictiveRandomSet,
    x: float,
    assertion: ParamSet,
    draws: int = DEFAULT_DRAWS,
    seed: int = 0,
) -> BeliefEstimate:
    """Monte Carlo belief and plausibility of an assertion.

    Belief is the fraction of sampled realizations whose focal set is
    contained in the assertion; plausibility the fraction whose focal set
    meets it.  Both use the same draws, so ``belief <= plausibility`` holds
    draw for draw.  Identical ``(seed, draws)`` reproduce the estimate
    bit for bit regardless of IM_INFER_THREADS.

    Raises
    ------
    EmptyFocalSet
        If any realization maps to no parameter value.
    """
    if draws < 1:
        raise ValueError("draws must be positive")
    c, d = _image_arrays(assoc.aux_region_image(x, assertion))
    c_full, d_full = _image_arrays(assoc.aux_region_image(x, ParamSet.whole_line()))

    def run_block(b: int) -> tuple[int, int, int]:
        start = b * BLOCK
        m = min(BLOCK, draws - start)
        lo, hi = prs.sample_batch(stream(seed, b), m)
        nonempty = _intersects_mask(lo, hi, c_full, d_full)
        empties = int(m - np.count_nonzero(nonempty))
        sub = int(np.count_nonzero(_contained_mask(lo, hi, c, d)))
        hit = int(np.count_nonzero(_intersects_mask(lo, hi, c, d)))
        return sub, hit, empties

    nblocks = (draws + BLOCK - 1) // BLOCK
    workers = min(worker_count(), nblocks)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_block, range(nblocks)))
    else:
        results = [run_block(b) for b in range(nblocks)]
    sub = sum(r[0] for r in results)
    hit = sum(r[1] for r in results)
    empties = sum(r[2] for r in results)
    if empties:
        raise EmptyFocalSet(f"{empties} of {draws} realizations had empty focal sets")
    b_hat = sub / draws
    p_hat = hit / draws
    return BeliefEstimate(
        belief=b_hat,
        plausibility=p_hat,
        belief_mc_se=math.sqrt(b_hat * (1.0 - b_hat) / draws),
        plausibility_mc_se=math.sqrt(p_hat * (1.0 - p_hat) / draws),
        draws=draws,
    )


def belief_exact(
    assoc: Association,
    prs: PredictiveRandomSet,
    x: float,
    assertion: ParamSet,
) -> tuple[float, float]:
    """Closed-form belief and plausibility where the random set allows it.

    Requires interval-event probabilities on the random set (the default
    random set provides them).  Belief totals the containment probability
    over image components; plausibility applies the complement identity to
    the image complement, so ``pl = 1 - bel(complement)`` holds exactly.
    """
    if not (
        hasattr(prs, "subset_probability") and hasattr(prs, "hit_probability")
    ):
        raise TypeError(
            f"{type(prs).__name__} has no closed-form interval probabilities"
        )
    image = assoc.aux_region_image(x, assertion)
    bel = sum(prs.subset_probability(c, d) for c, d in image)
    comp = complement_image(image)
    pl = 1.0 - sum(prs.subset_probability(c, d) for c, d in comp)
    return min(1.0, max(0.0, bel)), min(1.0, max(0.0, pl))


def focal_set(
    assoc: Association, x: float, realization: AuxiliaryInterval
) -> ParamSet:
    """Parameters consistent with the data and a realized auxiliary interval.

    Raises
    ------
    EmptyFocalSet
        If the realization maps to no parameter value.
    """
    out = assoc.focal_param_set(x, realization)
    if out.is_empty:
        raise EmptyFocalSet(
            f"realization [{realization.lo}, {realization.hi}] has empty focal set"
        )
    return out


def point_plausibility(
    assoc: Association, prs: PredictiveRandomSet, x: float, theta: float
) -> float:
    """Plausibility of the singleton {theta}: P(S contains its aux value)."""
    return prs.containment_probability(assoc.aux_at(x, theta))


def plausibility_region(
    assoc: Association,
    prs: PredictiveRandomSet,
    x: float,
    alpha: float,
    grid: Grid,
) -> ParamSet:
    """The set {theta : plausibility of {theta} > alpha}.

    Scans the grid for sign changes of ``plausibility - alpha`` and bisects
    each crossing to 1e-9 in the association's refinement coordinate.  A
    grid edge still above ``alpha`` extends the component to infinity, so
    the grid is trusted to bracket every finite boundary.  Grid points with
    no auxiliary value (e.g. a ratio parameter at zero) count as
    plausibility zero by continuous extension.

    Raises
    ------
    DegenerateGrid
        On a grid with fewer than two points or zero width.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    thetas = grid.points()

    def pl(theta: float) -> float:
        u = assoc.scan_aux_at(x, theta)
        if u is None:
            return 0.0
        return prs.containment_probability(u)

    values = np.array([pl(t) for t in thetas])
    above = values > alpha
    if not above.any():
        return ParamSet.empty()

    def refine(t_lo: float, t_hi: float) -> float:
        # Invariant: pl differs across [t_lo, t_hi]; returns the crossing.
        same_side = (t_lo > 0 and t_hi > 0) or (t_lo < 0 and t_hi < 0)
        fwd = assoc.refine_fwd if same_side else (lambda v: v)
        inv = assoc.refine_inv if same_side else (lambda v: v)
        a_was_above = pl(t_lo) > alpha
        lo, hi = t_lo, t_hi
        while abs(fwd(hi) - fwd(lo)) > REFINE_TOL:
            mid = inv(0.5 * (fwd(lo) + fwd(hi)))
            if not (min(lo, hi) < mid < max(lo, hi)):
                break
            if (pl(mid) > alpha) == a_was_above:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    comps: list[Interval] = []
    i = 0
    n = len(thetas)
    while i < n:
        if not above[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and above[j + 1]:
            j += 1
        left = -INF if i == 0 else refine(thetas[i - 1], thetas[i])
        right = INF if j == n - 1 else refine(thetas[j], thetas[j + 1])
        comps.append(Interval(left, right, True, True))
        i = j + 1
    return ParamSet(comps)
