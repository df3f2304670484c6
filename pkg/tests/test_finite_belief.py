"""Finite-frame belief calculus: algebraic laws and an independent oracle.

The exhaustive battery runs every frame size up to 4 with 200 random
mass functions each, checking the complement identity exactly, belief
super-additivity, monotonicity, 2-monotonicity, and agreement with a
frozenset brute-force oracle that shares no code with the bitset path.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iminfer.errors import EmptyFocalSet, MassNotNormalized
from iminfer.finite_belief import (
    FiniteFrame,
    MassFunction,
    belief_via_random_set_oracle,
)

ATOMS = ("a", "b", "c", "d", "e", "f")


def random_mass(frame: FiniteFrame, rng: np.random.Generator) -> MassFunction:
    n = len(frame.atoms)
    subsets = [
        frozenset(s)
        for k in range(1, n + 1)
        for s in itertools.combinations(frame.atoms, k)
    ]
    count = int(rng.integers(1, len(subsets) + 1))
    picks = rng.choice(len(subsets), size=count, replace=False)
    weights = rng.dirichlet(np.ones(count))
    return MassFunction.from_focal_list(
        frame, [(subsets[int(i)], float(w)) for i, w in zip(picks, weights)]
    )


def all_subsets(atoms: tuple) -> list:
    return [
        frozenset(s)
        for k in range(len(atoms) + 1)
        for s in itertools.combinations(atoms, k)
    ]


class TestValidation:
    def test_mass_must_sum_to_one(self):
        frame = FiniteFrame(("a", "b"))
        with pytest.raises(MassNotNormalized):
            MassFunction.from_focal_list(frame, [({"a"}, 0.5), ({"b"}, 0.49)])

    def test_tolerance_is_tight(self):
        frame = FiniteFrame(("a", "b"))
        MassFunction.from_focal_list(frame, [({"a"}, 0.5), ({"b"}, 0.5 + 5e-13)])
        with pytest.raises(MassNotNormalized):
            MassFunction.from_focal_list(frame, [({"a"}, 0.5), ({"b"}, 0.5 + 5e-12)])

    def test_empty_focal_rejected(self):
        frame = FiniteFrame(("a", "b"))
        with pytest.raises(EmptyFocalSet):
            MassFunction.from_focal_list(frame, [(set(), 0.3), ({"a"}, 0.7)])

    def test_negative_mass_rejected(self):
        frame = FiniteFrame(("a", "b"))
        with pytest.raises(MassNotNormalized):
            MassFunction.from_focal_list(frame, [({"a"}, -0.5), ({"b"}, 1.5)])

    def test_unknown_atom_rejected(self):
        frame = FiniteFrame(("a", "b"))
        with pytest.raises(ValueError):
            MassFunction.from_focal_list(frame, [({"z"}, 1.0)])

    def test_duplicate_focal_entries_merge(self):
        frame = FiniteFrame(("a", "b"))
        m = MassFunction.from_focal_list(
            frame, [({"a"}, 0.25), ({"a"}, 0.25), ({"a", "b"}, 0.5)]
        )
        assert m.belief({"a"}) == 0.5

    def test_frame_size_limit(self):
        with pytest.raises(ValueError):
            FiniteFrame(tuple(f"x{i}" for i in range(63)))


class TestVacuous:
    def test_total_ignorance(self):
        frame = FiniteFrame(ATOMS[:3])
        v = MassFunction.vacuous(frame)
        for subset in all_subsets(frame.atoms):
            if subset == frozenset(frame.atoms):
                assert v.belief(subset) == 1.0
            else:
                assert v.belief(subset) == 0.0
            if subset:
                assert v.plausibility(subset) == 1.0
            else:
                assert v.plausibility(subset) == 0.0


class TestExhaustiveBattery:
    """Criterion battery: frames of size <= 4, 200 random masses each."""

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_laws_hold(self, size):
        rng = np.random.default_rng(1000 + size)
        frame = FiniteFrame(ATOMS[:size])
        subsets = all_subsets(frame.atoms)
        full = frozenset(frame.atoms)
        for _ in range(200):
            m = random_mass(frame, rng)
            bel = {s: m.belief(s) for s in subsets}
            pl = {s: m.plausibility(s) for s in subsets}
            for s in subsets:
                comp = full - s
                # complement identity: exact, not toleranced
                assert pl[s] == 1.0 - bel[comp]
                assert bel[s] + bel[comp] <= 1.0 + 1e-12
                assert bel[s] <= pl[s] + 1e-15
            for s, t in itertools.combinations(subsets, 2):
                if s <= t:
                    assert bel[s] <= bel[t] + 1e-15
                assert (
                    m.belief(s | t) + m.belief(s & t)
                    >= bel[s] + bel[t] - 1e-12
                )

    @pytest.mark.parametrize("size", [2, 3, 4, 5, 6])
    def test_oracle_equivalence(self, size):
        rng = np.random.default_rng(2000 + size)
        frame = FiniteFrame(ATOMS[:size])
        for _ in range(40):
            m = random_mass(frame, rng)
            pairs = list(m.focal_elements())
            for _ in range(10):
                k = int(rng.integers(0, size + 1))
                subset = frozenset(
                    rng.choice(frame.atoms, size=k, replace=False).tolist()
                )
                assert m.belief(subset) == pytest.approx(
                    belief_via_random_set_oracle(pairs, subset), abs=1e-14
                )


class TestDominanceEquality:
    def test_equality_iff_all_singletons(self):
        frame = FiniteFrame(("a", "b", "c"))
        proba = MassFunction.from_focal_list(
            frame, [({"a"}, 0.2), ({"b"}, 0.3), ({"c"}, 0.5)]
        )
        for subset in all_subsets(frame.atoms):
            assert proba.belief(subset) == pytest.approx(
                proba.plausibility(subset), abs=1e-15
            )
        lumpy = MassFunction.from_focal_list(
            frame, [({"a", "b"}, 0.5), ({"c"}, 0.5)]
        )
        assert lumpy.belief({"a"}) < lumpy.plausibility({"a"})


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_complement_identity_property(size, seed):
    rng = np.random.default_rng(seed)
    frame = FiniteFrame(ATOMS[:size])
    m = random_mass(frame, rng)
    full = frozenset(frame.atoms)
    for subset in all_subsets(frame.atoms):
        assert m.plausibility(subset) == 1.0 - m.belief(full - subset)
