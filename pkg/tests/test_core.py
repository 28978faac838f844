from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from alphahash.core import (
    CollisionProfile,
    HashFunctionHandle,
    KeySet,
    collision_fraction,
    collision_profile,
    keyset_collision_fraction,
    singleton_count,
    singleton_counts,
)
from alphahash.randomness import SharedSeed, restriction


def vectors(max_k=8):
    return st.integers(1, max_k).flatmap(
        lambda k: st.lists(st.integers(1, k), min_size=k, max_size=k)
    )


class TestKeySet:
    def test_sorts_keys(self):
        assert KeySet(100, [9, 2, 5]).keys == (2, 5, 9)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="distinct"):
            KeySet(10, [1, 1, 2])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            KeySet(10, [0, 3])
        with pytest.raises(ValueError):
            KeySet(10, [3, 11])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            KeySet(10, [])


class TestCollisionFraction:
    def test_single_key_never_collides(self):
        assert collision_fraction((1,)) == 0

    def test_two_of_three_share_a_value(self):
        assert collision_fraction((2, 2, 1)) == Fraction(2, 3)

    def test_injective_vector(self):
        assert collision_fraction((1, 2, 3, 4)) == 0

    def test_all_identical(self):
        assert collision_fraction((1, 1, 1, 1)) == 1

    def test_half_colliding(self):
        assert collision_fraction((1, 1, 2, 3)) == Fraction(1, 2)

    @given(vectors())
    def test_permutation_invariant(self, x):
        rotated = x[1:] + x[:1]
        assert collision_fraction(x) == collision_fraction(rotated)
        assert collision_fraction(x) == collision_fraction(sorted(x))


class TestCollisionProfile:
    @pytest.mark.parametrize(
        "x,indicator",
        [
            ((1, 2, 3), (0, 0, 0)),
            ((2, 2, 2), (1, 1, 1)),
            ((1, 1, 3), (1, 1, 0)),
        ],
    )
    def test_examples(self, x, indicator):
        profile = collision_profile(x)
        assert profile.indicator == indicator
        assert profile.weight == sum(indicator)

    def test_weight_mismatch_rejected(self):
        with pytest.raises(ValueError):
            CollisionProfile(indicator=(1, 0), weight=2)

    @given(vectors())
    def test_weight_equals_scaled_fraction(self, x):
        profile = collision_profile(x)
        assert profile.weight == collision_fraction(x) * len(x)


class TestSingletonCount:
    @pytest.mark.parametrize(
        "x,s",
        [((1, 2, 3), 3), ((1, 1, 2), 1), ((1, 1, 2, 2), 0)],
    )
    def test_examples(self, x, s):
        assert singleton_count(x) == s

    @given(vectors())
    def test_every_position_singleton_or_colliding(self, x):
        assert collision_profile(x).weight + singleton_count(x) == len(x)

    @given(st.lists(
        st.lists(st.integers(1, 6), min_size=6, max_size=6),
        min_size=1, max_size=20,
    ))
    def test_block_helper_matches_scalar(self, rows):
        block = np.asarray(rows)
        assert singleton_counts(block).tolist() == [singleton_count(r) for r in rows]


class TestKeySetCollisionFraction:
    def test_range_mismatch_rejected(self):
        a = KeySet(100, [1, 2, 3])
        h = HashFunctionHandle(SharedSeed(1), index=1, range_size=5)
        with pytest.raises(ValueError, match="range"):
            keyset_collision_fraction(a, h)

    @given(st.integers(0, 2**64 - 1), st.integers(1, 50), st.integers(1, 6))
    def test_matches_restriction_metric(self, z, index, k):
        seed = SharedSeed(z)
        a = KeySet(100, range(10, 10 + k))
        h = HashFunctionHandle(seed, index=index, range_size=k)
        assert keyset_collision_fraction(a, h) == collision_fraction(
            restriction(seed, index, a)
        )
        assert h.restrict(a) == restriction(seed, index, a)
