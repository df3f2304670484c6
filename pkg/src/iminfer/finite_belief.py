"""Belief and plausibility calculus on finite frames.

A body of evidence on a finite frame of discernment is a mass function: a
probability distribution over nonempty subsets (focal elements).  Belief of
an assertion A totals the mass of focal elements inside A; plausibility is
the complement identity 1 - belief(not A), equivalently the total mass of
focal elements meeting A.  Equivalently, belief(A) is the probability that a
random set distributed per the masses is contained in A.

Frames are limited to 62 atoms so subsets pack into a single int bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import EmptyFocalSet, MassNotNormalized

MAX_ATOMS = 62
MASS_TOL = 1e-12

Label = Hashable


@dataclass(frozen=True)
class FiniteFrame:
    """Ordered frame of discernment with distinct hashable atoms."""

    atoms: tuple[Label, ...]

    def __init__(self, atoms: Iterable[Label]) -> None:
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("frame needs at least one atom")
        if len(atoms) > MAX_ATOMS:
            raise ValueError(f"frame exceeds {MAX_ATOMS} atoms")
        if len(set(atoms)) != len(atoms):
            raise ValueError("frame atoms must be distinct")
        object.__setattr__(self, "atoms", atoms)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def encode(self, subset: Iterable[Label]) -> int:
        """Bitmask of a subset given by atom labels."""
        index = {a: i for i, a in enumerate(self.atoms)}
        mask = 0
        for label in subset:
            try:
                mask |= 1 << index[label]
            except KeyError:
                raise ValueError(f"label {label!r} not in frame") from None
        return mask

    def decode(self, mask: int) -> frozenset:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)


class MassFunction:
    """Mass assignment over nonempty subsets of a finite frame.

    Parameters
    ----------
    frame : FiniteFrame
    masses : mapping from bitmask to mass
        No empty focal element; masses positive and summing to one within
        ``MASS_TOL``.

    Raises
    ------
    EmptyFocalSet
        If the empty set carries mass.
    MassNotNormalized
        If any mass is non-positive/non-finite or the total is off by more
        than ``MASS_TOL``.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: FiniteFrame, masses: Mapping[int, float]) -> None:
        self.frame = frame
        clean: dict[int, float] = {}
        full = frame.full_mask
        for mask, m in masses.items():
            mask = int(mask)
            if mask == 0:
                raise EmptyFocalSet("empty set cannot be a focal element")
            if mask & ~full:
                raise ValueError("focal element outside the frame")
            m = float(m)
            if not 0.0 < m < float("inf"):
                raise MassNotNormalized(f"mass {m!r} is not a positive real")
            clean[mask] = clean.get(mask, 0.0) + m
        total = sum(clean.values())
        if abs(total - 1.0) > MASS_TOL:
            raise MassNotNormalized(f"masses sum to {total!r}, not 1")
        self._masses = clean

    @classmethod
    def from_focal_list(
        cls,
        frame: FiniteFrame,
        pairs: Iterable[tuple[Iterable[Label], float]],
    ) -> "MassFunction":
        """Build from (subset-of-labels, mass) pairs, merging duplicates.

        Pairs with exactly zero mass are dropped.
        """
        masses: dict[int, float] = {}
        for subset, m in pairs:
            if float(m) == 0.0:
                continue
            mask = frame.encode(subset)
            if mask == 0:
                raise EmptyFocalSet("empty set cannot be a focal element")
            masses[mask] = masses.get(mask, 0.0) + float(m)
        return cls(frame, masses)

    @classmethod
    def vacuous(cls, frame: FiniteFrame) -> "MassFunction":
        """Total ignorance: all mass on the whole frame."""
        return cls(frame, {frame.full_mask: 1.0})

    def focal_elements(self) -> Iterator[tuple[frozenset, float]]:
        for mask, m in sorted(self._masses.items()):
            yield self.frame.decode(mask), m

    def mass(self, subset: Iterable[Label]) -> float:
        return self._masses.get(self.frame.encode(subset), 0.0)

    def belief(self, subset: Iterable[Label]) -> float:
        """Total mass of focal elements contained in the subset."""
        target = self.frame.encode(subset)
        return sum(
            (m for mask, m in self._masses.items() if mask & ~target == 0), 0.0
        )

    def plausibility(self, subset: Iterable[Label]) -> float:
        """Complement identity: 1 - belief of the complementary subset."""
        target = self.frame.encode(subset)
        comp = self.frame.full_mask & ~target
        return 1.0 - sum(m for mask, m in self._masses.items() if mask & ~comp == 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{set(fs) or '{}'}: {m:g}" for fs, m in self.focal_elements()
        )
        return f"MassFunction({inner})"


def belief_via_random_set_oracle(
    pairs: Sequence[tuple[Iterable[Label], float]],
    subset: Iterable[Label],
) -> float:
    """Brute-force containment probability for cross-checking ``belief``.

    Treats the pairs as the distribution of a random subset and sums the
    probability of draws contained in ``subset``.  Deliberately avoids the
    bitmask machinery: plain frozenset comparisons only.
    """
    target = frozenset(subset)
    total = 0.0
    for focal, m in pairs:
        if frozenset(focal) <= target:
            total += m
    return total
