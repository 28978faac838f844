"""Deterministic shared-randomness streams.

Encoder and decoder regenerate identical hash-function streams and
arrival-time streams from two 64-bit seeds, so a transmitted index is all
that is ever needed to reconstruct a hash function.

Derivation (all arithmetic mod 2**64, ``PHI = 0x9E3779B97F4A7C15``)::

    mix(x)                = splitmix64 finalizer
    word(seed, lane, pos) = mix(mix(seed + lane*PHI) + pos*PHI)

* Hash values: ``v = word(z_seed, index, key)``, resampled via
  ``v = mix(v + PHI)`` while ``v >= 2**64 - (2**64 % k)`` (so the reduced
  value is exactly uniform, no modulo bias), then ``v % k + 1``.
* Arrival increments: ``-log((float64(word(u_seed, t, 0)) + 1) * 2**-64)``,
  i.e. inverse-CDF exponentials from a uniform in (0, 1].

An independent implementation following the recipe above reproduces every
stream bit for bit.  ``_kernels`` contains compiled equivalents of the hash
path; tests pin exact agreement with the scalar functions here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .core import KeySet

MASK64 = (1 << 64) - 1
PHI64 = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

#: chunk size used when extending an ArrivalStream's cache
_ARRIVAL_CHUNK = 256


def mix64(x: int) -> int:
    """splitmix64 finalizer; bijective on 64-bit words."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MUL1) & MASK64
    x ^= x >> 27
    x = (x * _MUL2) & MASK64
    return x ^ (x >> 31)


def word64(seed: int, lane: int, pos: int) -> int:
    """Uniform 64-bit word at (lane, pos) of the stream keyed by seed."""
    state = mix64(seed + lane * PHI64)
    return mix64(state + pos * PHI64)


def rejection_bound(range_size: int) -> int:
    """Largest multiple of range_size that fits in 64 bits, or 0 if 2**64 already is one."""
    rem = (1 << 64) % range_size
    return (1 << 64) - rem if rem else 0


def uniform_unit(v: int) -> float:
    """Map a 64-bit word to a float in (0, 1]."""
    return (float(v) + 1.0) * 2.0**-64


@dataclass(frozen=True)
class SharedSeed:
    """Common randomness shared by encoder and decoder.

    z_seed keys the hash-function stream, u_seed the auxiliary
    arrival-time stream used by the sampling scheme.
    """

    z_seed: int
    u_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "z_seed", self.z_seed & MASK64)
        object.__setattr__(self, "u_seed", self.u_seed & MASK64)

    @classmethod
    def from_master(cls, master: int) -> "SharedSeed":
        """Split one user-facing seed into the two stream seeds."""
        return cls(z_seed=word64(master, 1, 0), u_seed=word64(master, 2, 0))


def eval_hash(seed: SharedSeed, index: int, key: int, range_size: int) -> int:
    """Value in [1, range_size] of hash function number `index` at `key`.

    Deterministic in (seed, index, key); exactly uniform marginally.
    """
    if index < 1:
        raise ValueError(f"hash stream index must be >= 1, got {index}")
    if key < 1:
        raise ValueError(f"keys are positive integers, got {key}")
    if range_size < 1:
        raise ValueError(f"range size must be >= 1, got {range_size}")
    v = word64(seed.z_seed, index, key)
    bound = rejection_bound(range_size)
    if bound:
        while v >= bound:
            v = mix64(v + PHI64)
    return v % range_size + 1


def restriction(seed: SharedSeed, index: int, a: "KeySet") -> tuple[int, ...]:
    """Hash values of function `index` on the key set, in key order."""
    k = len(a.keys)
    return tuple(eval_hash(seed, index, key, k) for key in a.keys)


@dataclass
class ArrivalStream:
    """Strictly increasing arrival times with unit-rate exponential gaps.

    Single-owner streaming object; the underlying increments are a pure
    function of (u_seed, t), so equal seeds replay the same times.
    """

    u_seed: int
    _times: list[float] = field(default_factory=list, repr=False)

    @property
    def emitted(self) -> int:
        return len(self._times)

    def time(self, t: int) -> float:
        if t < 1:
            raise ValueError(f"arrival index must be >= 1, got {t}")
        while len(self._times) < t:
            base = len(self._times)
            total = self._times[-1] if self._times else 0.0
            for pos in range(base + 1, base + _ARRIVAL_CHUNK + 1):
                total += exponential_increment(self.u_seed, pos)
                self._times.append(total)
        return self._times[t - 1]


def exponential_increment(u_seed: int, t: int) -> float:
    """The t-th unit-rate exponential gap of the stream keyed by u_seed."""
    return -math.log(uniform_unit(word64(u_seed, t, 0)))


def arrival_time(stream: ArrivalStream, t: int) -> float:
    """T_t = sum of the first t exponential increments."""
    return stream.time(t)
