"""Calibration of belief output versus a reference Bayes posterior.

Setting: samples of size 10 from N(0.1, 1), so the true ratio
sigma/mu is 10, and the assertion under test is A = (-inf, 9], which is
false.  A sound uncertainty report should rarely be confident in A.

Across replications, belief in A stays stochastically below the uniform
distribution: its quantile curve never rises above the diagonal.  The
objective-prior posterior probability of A instead concentrates near 1,
because the posterior for the ratio spreads over both huge positive and
huge negative values whenever the mean is hard to distinguish from
zero, and (-inf, 9] soaks up almost all of that mass.  Additivity, not
any prior-tuning defect, is what produces confident support for a false
assertion here.

Usage: python3 demos/belief_quantiles.py [--reps 500] [--png out.png]
"""

from __future__ import annotations

import argparse

import numpy as np

from iminfer import AuditConfig, CvTruth, compare_im_bayes, parse_region


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=500)
    parser.add_argument("--posterior-draws", type=int, default=20_000)
    parser.add_argument("--png", default=None)
    args = parser.parse_args()

    cfg = AuditConfig(
        model="normal-cv",
        truth=CvTruth(mu=0.1, sigma=1.0, n=10),
        assertion=parse_region("(-inf,9]"),
        replications=args.reps,
        posterior_draws=args.posterior_draws,
    )
    report = compare_im_bayes(cfg)
    rows = report.quantile_rows()
    q = np.array([r[0] for r in rows])
    im = np.array([r[1] for r in rows])
    bayes = np.array([r[2] for r in rows])

    print(f"assertion false: {report.applicable}")
    print(f"replications: {args.reps}")
    print(f"IM belief quantiles above diagonal: {int(np.sum(im > q))} of {len(q)}")
    print(f"median IM belief: {np.median(im):.4f}")
    print(f"median posterior probability: {np.median(bayes):.4f}")
    print(f"posterior above 0.9 in {np.mean(bayes > 0.9):.1%} of runs")
    for alpha in (0.05, 0.1, 0.25):
        im_rate = float(np.mean(im > 1 - alpha))
        bayes_rate = float(np.mean(bayes > 1 - alpha))
        print(
            f"P(output > {1 - alpha:.2f}): IM {im_rate:.3f}  "
            f"posterior {bayes_rate:.3f}  (valid bound: {alpha:.2f})"
        )

    if args.png:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(4.2, 4.0))
        ax.plot(q, q, color="gray", lw=0.8, label="uniform")
        ax.plot(q, im, lw=1.2, label="belief in A")
        ax.plot(q, bayes, lw=1.2, ls="--", label="posterior of A")
        ax.set_xlabel("quantile")
        ax.set_ylabel("value")
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        fig.savefig(args.png, dpi=150)
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
