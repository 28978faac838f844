"""Key sets, hash-function handles, and collision metrics.

Collision fractions are exact rationals; they are converted to floats only
at reporting boundaries so the enumeration oracle can compare exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .randomness import SharedSeed, eval_hash

#: a hash function restricted to a key set: k values, each in [1, k]
Restriction = tuple[int, ...]


@dataclass(frozen=True)
class KeySet:
    """k distinct keys from the universe {1, ..., n}, stored sorted."""

    universe_size: int
    keys: tuple[int, ...]

    def __init__(self, universe_size: int, keys: Iterable[int]):
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "keys", tuple(sorted(keys)))
        if self.universe_size < 1:
            raise ValueError(f"universe size must be >= 1, got {universe_size}")
        if not self.keys:
            raise ValueError("a key set holds at least one key")
        if len(set(self.keys)) != len(self.keys):
            raise ValueError("keys must be distinct")
        if self.keys[0] < 1 or self.keys[-1] > self.universe_size:
            raise ValueError(
                f"keys must lie in [1, {self.universe_size}], got range "
                f"[{self.keys[0]}, {self.keys[-1]}]"
            )

    @property
    def size(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class HashFunctionHandle:
    """Lazily evaluated hash function: position `index` of the shared stream."""

    seed: SharedSeed
    index: int
    range_size: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"stream index must be >= 1, got {self.index}")
        if self.range_size < 1:
            raise ValueError(f"range size must be >= 1, got {self.range_size}")

    def __call__(self, key: int) -> int:
        return eval_hash(self.seed, self.index, key, self.range_size)

    def restrict(self, a: KeySet) -> Restriction:
        return tuple(self(key) for key in a.keys)


@dataclass(frozen=True)
class CollisionProfile:
    """Per-position collision indicator and its weight."""

    indicator: tuple[int, ...]
    weight: int

    def __post_init__(self) -> None:
        if self.weight != sum(self.indicator):
            raise ValueError("weight must equal the number of ones in the indicator")


def collision_fraction(x: Sequence[int]) -> Fraction:
    """Fraction of positions whose value occurs more than once in x."""
    if not x:
        raise ValueError("empty vector")
    counts = Counter(x)
    colliding = sum(1 for v in x if counts[v] > 1)
    return Fraction(colliding, len(x))


def keyset_collision_fraction(a: KeySet, h: HashFunctionHandle) -> Fraction:
    """Fraction of keys sharing their hash value with another key."""
    if h.range_size != a.size:
        raise ValueError(
            f"hash range {h.range_size} does not match key-set size {a.size}"
        )
    return collision_fraction(h.restrict(a))


def collision_profile(x: Sequence[int]) -> CollisionProfile:
    """Indicator of positions whose value has multiplicity >= 2."""
    counts = Counter(x)
    indicator = tuple(1 if counts[v] > 1 else 0 for v in x)
    return CollisionProfile(indicator=indicator, weight=sum(indicator))


def singleton_count(x: Sequence[int]) -> int:
    """Number of values appearing exactly once in x."""
    counts = Counter(x)
    return sum(1 for v in x if counts[v] == 1)


def singleton_counts(rows: np.ndarray) -> np.ndarray:
    """Per-row singleton counts for a 2-d block of restriction vectors."""
    srt = np.sort(np.asarray(rows), axis=1)
    diff = srt[:, 1:] != srt[:, :-1]
    neq_prev = np.concatenate(
        [np.ones((srt.shape[0], 1), dtype=bool), diff], axis=1
    )
    neq_next = np.concatenate(
        [diff, np.ones((srt.shape[0], 1), dtype=bool)], axis=1
    )
    return (neq_prev & neq_next).sum(axis=1)
