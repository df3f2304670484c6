"""Belief on a finite frame: what sets probability apart from knowledge.

A mass function spreads unit weight over subsets of a frame rather than
points.  Belief in a claim totals the mass that entails it; plausibility
totals the mass that does not contradict it.  The gap between them is
reserved "don't know" weight, which ordinary probability cannot hold:
a probability measure must split all weight between a claim and its
negation even when the evidence supports neither.
"""

from __future__ import annotations

from iminfer import FiniteFrame, MassFunction

frame = FiniteFrame(("slow", "medium", "fast"))

# A sensor reading: 30% surely "slow", 50% only "not slow", 20% no idea.
mass = MassFunction.from_focal_list(
    frame,
    [
        ({"slow"}, 0.3),
        ({"medium", "fast"}, 0.5),
        ({"slow", "medium", "fast"}, 0.2),
    ],
)

for claim in [{"slow"}, {"medium"}, {"medium", "fast"}]:
    b = mass.belief(claim)
    p = mass.plausibility(claim)
    print(f"claim {sorted(claim)}: belief {b:.2f}, plausibility {p:.2f}, "
          f"don't know {p - b:.2f}")

comp = {"medium", "fast"}
print()
print("complement identity: pl(slow) =", mass.plausibility({"slow"}),
      "= 1 - bel(not slow) =", 1.0 - mass.belief(comp))
print("super-additive: bel(slow) + bel(not slow) =",
      mass.belief({"slow"}) + mass.belief(comp), "<= 1")

vac = MassFunction.vacuous(frame)
print()
print("total ignorance: belief(slow) =", vac.belief({"slow"}),
      ", plausibility(slow) =", vac.plausibility({"slow"}))
print("a fair-coin prior would instead claim probability",
      1 / 3, "for 'slow' out of thin air")
