"""Valid prior-free probabilistic inference with belief functions.

The package evaluates data-dependent belief and plausibility for
assertions about a parameter by predicting an auxiliary variable with a
random set, and ships audits certifying the output's frequency
calibration: belief in a false assertion is stochastically no larger
than uniform, and plausibility regions cover at their nominal rate.

Layers, bottom up:

- ``finite_belief``: belief/plausibility calculus on finite frames.
- ``intervals``: interval-union parameter sets with open/closed endpoints.
- ``engine``: the generic association + predictive-random-set pipeline.
- ``models``: normal mean, and coefficient of variation via a certified
  noncentral Student-t distribution function (``noncentral_t``).
- ``audit``: validity/coverage simulation harness and a reference
  posterior comparison.
- ``cli``: scriptable front end (``iminfer`` console command).
"""

from .audit import (
    AlphaRecord,
    AuditConfig,
    AuditReport,
    CompareReport,
    CoverageReport,
    CvTruth,
    NormalMeanTruth,
    bayes_cv_posterior_probability,
    compare_im_bayes,
    coverage_audit,
    simulate_belief_samples,
    validity_audit,
)
from .engine import (
    Association,
    AuxiliaryInterval,
    BeliefEstimate,
    DefaultRandomSet,
    Grid,
    PredictiveRandomSet,
    belief_exact,
    belief_mc,
    focal_set,
    plausibility_region,
    point_plausibility,
)
from .errors import (
    DegenerateGrid,
    DegenerateSample,
    EmptyFocalSet,
    IminferError,
    MassNotNormalized,
    RangeExceeded,
    ThetaZero,
)
from .finite_belief import (
    FiniteFrame,
    MassFunction,
    belief_via_random_set_oracle,
)
from .intervals import Interval, ParamSet, format_region, parse_region
from .models import (
    CvAssociation,
    CvStatistic,
    NormalMeanAssociation,
    cv_plausibility_curve,
    cv_plausibility_interval,
    cv_region_unbounded,
    cv_singleton_plausibility,
    cv_statistic,
    load_dataset,
    normal_mean_belief_closed,
    normal_mean_interval,
    psi_interval_to_theta,
)
from .noncentral_t import (
    NoncentralTSpec,
    noncentral_t_cdf,
    noncentral_t_solve_noncentrality,
)
from .streams import DEFAULT_SEED, stream, worker_count

__version__ = "0.1.0"

__all__ = [
    "AlphaRecord",
    "Association",
    "AuditConfig",
    "AuditReport",
    "AuxiliaryInterval",
    "BeliefEstimate",
    "CompareReport",
    "CoverageReport",
    "CvAssociation",
    "CvStatistic",
    "CvTruth",
    "DEFAULT_SEED",
    "DefaultRandomSet",
    "DegenerateGrid",
    "DegenerateSample",
    "EmptyFocalSet",
    "FiniteFrame",
    "Grid",
    "IminferError",
    "Interval",
    "MassFunction",
    "MassNotNormalized",
    "NoncentralTSpec",
    "NormalMeanAssociation",
    "NormalMeanTruth",
    "ParamSet",
    "PredictiveRandomSet",
    "RangeExceeded",
    "ThetaZero",
    "bayes_cv_posterior_probability",
    "belief_exact",
    "belief_mc",
    "belief_via_random_set_oracle",
    "compare_im_bayes",
    "coverage_audit",
    "cv_plausibility_curve",
    "cv_plausibility_interval",
    "cv_region_unbounded",
    "cv_singleton_plausibility",
    "cv_statistic",
    "focal_set",
    "format_region",
    "load_dataset",
    "noncentral_t_cdf",
    "noncentral_t_solve_noncentrality",
    "normal_mean_belief_closed",
    "normal_mean_interval",
    "parse_region",
    "plausibility_region",
    "point_plausibility",
    "psi_interval_to_theta",
    "simulate_belief_samples",
    "stream",
    "validity_audit",
    "worker_count",
]
