"""Compiled search loops for the encoder-side scans.

Integer arithmetic mirrors `randomness` bit for bit (same splitmix64
finalizer, same rejection resampling); the round-trip checks in the
harness and the parity tests in the suite rely on that.  All kernels
require the hash range k <= 64 so value sets fit in one bitmask word;
larger k exceeds any realistic probe budget long before this limit
matters.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

U64 = np.uint64
_PHI = U64(0x9E3779B97F4A7C15)
_MUL1 = U64(0xBF58476D1CE4E5B9)
_MUL2 = U64(0x94D049BB133111EB)
_TWO64_INV = 2.0**-64

KERNEL_MAX_RANGE = 64


@njit(cache=True)
def _mix(x):
    x ^= x >> U64(30)
    x *= _MUL1
    x ^= x >> U64(27)
    x *= _MUL2
    return x ^ (x >> U64(31))


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> U64(1)) & U64(0x5555555555555555))
    x = (x & U64(0x3333333333333333)) + ((x >> U64(2)) & U64(0x3333333333333333))
    x = (x + (x >> U64(4))) & U64(0x0F0F0F0F0F0F0F0F)
    return (x * U64(0x0101010101010101)) >> U64(56)


@njit(cache=True)
def _hash_value(state, key, k, bound):
    # state = mix(seed + index*PHI); returns the 0-based value in [0, k)
    v = _mix(state + key * _PHI)
    if bound != U64(0):
        while v >= bound:
            v = _mix(v + _PHI)
    return v % U64(k)


@njit(cache=True)
def perfect_scan(z_seed, t_start, t_stop, keys, k, bound):
    """First index t in [t_start, t_stop] whose restriction is injective, else 0."""
    full = U64(0xFFFFFFFFFFFFFFFF) if k == 64 else (U64(1) << U64(k)) - U64(1)
    for t in range(t_start, t_stop + 1):
        state = _mix(z_seed + U64(t) * _PHI)
        mask = U64(0)
        for j in range(keys.shape[0]):
            mask |= U64(1) << _hash_value(state, keys[j], k, bound)
        if mask == full:
            return t
    return 0


@njit(cache=True)
def pfr_scan(z_seed, u_seed, keys, k, bound, ratio_by_s, rmax, probe_cap):
    """Index minimizing T_t / ratio(X^(t)) with the bounded-ratio stopping rule.

    Returns (index, probes, status); status 1 means the probe cap was hit
    before the stopping rule fired.
    """
    total = 0.0
    best = math.inf
    best_t = 0
    t = 0
    while True:
        t += 1
        if t > probe_cap:
            return 0, t - 1, 1
        u = _mix(_mix(u_seed + U64(t) * _PHI))
        total += -math.log((np.float64(u) + 1.0) * _TWO64_INV)
        state = _mix(z_seed + U64(t) * _PHI)
        once = U64(0)
        multi = U64(0)
        for j in range(keys.shape[0]):
            b = U64(1) << _hash_value(state, keys[j], k, bound)
            if once & b:
                multi |= b
            once |= b
        s = _popcount(once & ~multi)
        r = ratio_by_s[s]
        if r > 0.0:
            val = total / r
            if val < best:
                best = val
                best_t = t
        if total > best * rmax:
            return best_t, t, 0


@njit(cache=True)
def restriction_block_indices(z_seed, t_start, count, keys, k, bound):
    """Restrictions of hash functions t_start .. t_start+count-1, 1-based values."""
    m = keys.shape[0]
    out = np.empty((count, m), dtype=np.int64)
    for i in range(count):
        state = _mix(z_seed + U64(t_start + i) * _PHI)
        for j in range(m):
            out[i, j] = np.int64(_hash_value(state, keys[j], k, bound)) + 1
    return out


@njit(cache=True)
def restriction_block_seeds(z_seeds, index, keys, k, bound):
    """Restrictions of hash function `index` under many z seeds, 1-based values."""
    m = keys.shape[0]
    out = np.empty((z_seeds.shape[0], m), dtype=np.int64)
    for i in range(z_seeds.shape[0]):
        state = _mix(z_seeds[i] + U64(index) * _PHI)
        for j in range(m):
            out[i, j] = np.int64(_hash_value(state, keys[j], k, bound)) + 1
    return out
