"""Plausibility curves and regions for the ratio sigma/mu on two datasets.

The two shipped samples differ only in their true mean: one sits at
mu = 1, the other at mu = 0.  For the first, the 95% plausibility region
is a bounded interval.  For the second, no bounded interval is honest:
the data cannot rule out means arbitrarily close to zero, so the region
is a union of two infinite tails.  Both curves still reach 1 at the
best-supported value; interval output and curve shape tell the same
story.

Usage: python3 demos/plausibility_curves.py [--png out.png]
"""

from __future__ import annotations

import argparse
import pathlib

import numpy as np

from iminfer import (
    cv_plausibility_curve,
    cv_plausibility_interval,
    cv_statistic,
    format_region,
    load_dataset,
)

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--png", default=None, help="render curves to this file")
    args = parser.parse_args()

    thetas = np.linspace(-10.0, 10.0, 801)
    curves = {}
    for label, name in (("mu=1", "fig1_mu1.csv"), ("mu=0", "fig1_mu0.csv")):
        stat = cv_statistic(load_dataset(str(ROOT / "data" / name)))
        region = cv_plausibility_interval(stat, 0.05)
        curve = np.asarray(cv_plausibility_curve(stat, thetas))
        curves[label] = curve
        print(f"[{label}] n={stat.n} mean={stat.mean:+.4f} sd={stat.sd:.4f}")
        print(f"  95% plausibility region: {format_region(region)}")
        print(f"  bounded: {region.is_bounded}")
        print(f"  curve max: {curve.max():.6f} at theta={thetas[curve.argmax()]:+.3f}")
        print()

    if args.png:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(1, 2, figsize=(9, 3.2), sharey=True)
        for ax, (label, curve) in zip(axes, curves.items()):
            ax.plot(thetas, curve, lw=1.2)
            ax.axhline(0.05, color="gray", lw=0.8, ls="--")
            ax.set_title(f"sample with {label}")
            ax.set_xlabel("theta = sigma/mu")
        axes[0].set_ylabel("plausibility")
        fig.tight_layout()
        fig.savefig(args.png, dpi=150)
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
