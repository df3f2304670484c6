"""Regenerate the committed demo datasets under data/.

Each dataset comes from a fixed stream of the package's counter-based
generator, so this script is a record of provenance, not a build step:
the CSVs it writes are committed and byte-stable.

- fig1_mu1.csv: 30 draws from N(1, 1).  Its 95% plausibility region for
  sigma/mu is a bounded interval.
- fig1_mu0.csv: 30 draws from N(0, 1).  Its 95% region is an unbounded
  union, the honest outcome for a ratio parameter when the denominator
  is indistinguishable from zero.
- fig2_sample.csv: 10 draws from N(0.1, 1), the single-dataset setting
  of the belief-quantile comparison.

Run from the repository root: python3 demos/make_demo_data.py
"""

from __future__ import annotations

import pathlib

from iminfer import DEFAULT_SEED, cv_region_unbounded, cv_statistic, stream

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

SPECS = (
    ("fig1_mu1.csv", 101, 1.0, 1.0, 30),
    ("fig1_mu0.csv", 102, 0.0, 1.0, 30),
    ("fig2_sample.csv", 103, 0.1, 1.0, 10),
)


def main() -> None:
    DATA_DIR.mkdir(exist_ok=True)
    for name, index, mu, sigma, n in SPECS:
        rng = stream(DEFAULT_SEED, index)
        values = mu + sigma * rng.standard_normal(n)
        path = DATA_DIR / name
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x\n")
            for v in values:
                fh.write(repr(float(v)) + "\n")
        stat = cv_statistic(values)
        unbounded = cv_region_unbounded(stat, 0.05)
        print(
            f"{name}: n={n} mean={stat.mean:+.4f} sd={stat.sd:.4f} "
            f"t={stat.t:+.4f} region_unbounded={unbounded}"
        )


if __name__ == "__main__":
    main()
