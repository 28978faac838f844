"""Encoder/decoder pairs sharing a seeded stream of uniform hash functions.

Four schemes, all transmitting at most one prefix-free integer codeword:

* perfect  - first stream index whose restriction is injective.
* zero     - empty description; the decoder always takes stream index 1.
* mixture  - a seed-derived Bernoulli(lambda) coin picks perfect or zero;
             the coin comes from the shared randomness, never the
             description, so descriptions stay prefix-free per seed.
* pfr      - index minimizing T_t / ratio(X^(t)) over the arrival times of
             a unit-rate Poisson process, so the decoded restriction is
             distributed exactly as the urn target.  The search stops at
             the first t with T_t > best * max-ratio: any later candidate
             is at least T_t / max-ratio, which already exceeds the best.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import _kernels
from .codes import BitString, IntegerCode
from .core import HashFunctionHandle, KeySet
from .randomness import SharedSeed, rejection_bound, word64
from .urn import UrnDistribution, pfr_search_tables

_INV_E = math.exp(-1.0)

SCHEME_KINDS = ("perfect", "zero", "mixture", "pfr")

DEFAULT_PROBE_CAP = 10**9


class ProbeBudgetError(RuntimeError):
    """The index search hit its probe cap before terminating."""

    def __init__(self, scheme: str, a: KeySet, seed: SharedSeed, cap: int):
        super().__init__(
            f"{scheme} search exceeded {cap} probes for keys={a.keys} "
            f"seed=({seed.z_seed:#x}, {seed.u_seed:#x})"
        )
        self.scheme = scheme
        self.keys = a.keys
        self.seed = seed
        self.cap = cap


def lambda_for_alpha(alpha: float) -> float:
    """Mixing weight ((alpha - 1/e) / (1 - 1/e)) clipped at 0."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return max((alpha - _INV_E) / (1.0 - _INV_E), 0.0)


@dataclass(frozen=True)
class SchemeConfig:
    """Everything the encoder and decoder agree on out of band."""

    n: int
    k: int
    alpha: float
    kind: str
    code: Optional[IntegerCode]
    seed: SharedSeed
    probe_cap: int = DEFAULT_PROBE_CAP

    def __post_init__(self) -> None:
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.kind != "zero" and self.code is None:
            raise ValueError(f"scheme {self.kind!r} needs an integer code")

    @property
    def lam(self) -> float:
        return lambda_for_alpha(self.alpha)

    @property
    def urn(self) -> UrnDistribution:
        return UrnDistribution(self.k, self.lam)


@dataclass(frozen=True)
class EncodeResult:
    description: BitString
    index: Optional[int]
    branch: Optional[str] = None
    probes: int = 0


def _keys_u64(a: KeySet) -> np.ndarray:
    if a.size > _kernels.KERNEL_MAX_RANGE:
        raise ValueError(
            f"index search supports k <= {_kernels.KERNEL_MAX_RANGE}; "
            f"k={a.size} exceeds any realistic probe budget anyway"
        )
    return np.asarray(a.keys, dtype=np.uint64)


def perfect_encode(
    a: KeySet,
    seed: SharedSeed,
    code: IntegerCode,
    probe_cap: int = DEFAULT_PROBE_CAP,
) -> EncodeResult:
    """Describe the first hash function with no collisions on the key set."""
    k = a.size
    t = _kernels.perfect_scan(
        np.uint64(seed.z_seed), 1, probe_cap, _keys_u64(a), k,
        np.uint64(rejection_bound(k)),
    )
    if not t:
        raise ProbeBudgetError("perfect", a, seed, probe_cap)
    return EncodeResult(description=code.encode(t), index=t, probes=t)


def zero_bit_encode(a: KeySet, seed: SharedSeed) -> EncodeResult:
    """Empty description; the decoder falls back to stream index 1."""
    return EncodeResult(description=BitString(""), index=1, probes=0)


def mixture_branch_is_perfect(seed: SharedSeed, lam: float) -> bool:
    """Bernoulli(lambda) coin derived from the shared randomness (lane 0)."""
    return word64(seed.z_seed, 0, 0) < int(lam * 2.0**64)


def mixture_encode(
    a: KeySet,
    seed: SharedSeed,
    lam: float,
    code: IntegerCode,
    probe_cap: int = DEFAULT_PROBE_CAP,
) -> EncodeResult:
    if mixture_branch_is_perfect(seed, lam):
        return replace(perfect_encode(a, seed, code, probe_cap), branch="perfect")
    return replace(zero_bit_encode(a, seed), branch="zero")


def pfr_encode(
    a: KeySet,
    seed: SharedSeed,
    dist: UrnDistribution,
    code: IntegerCode,
    probe_cap: int = DEFAULT_PROBE_CAP,
) -> EncodeResult:
    """Describe the index selected by the arrival-time ratio minimization."""
    if dist.k != a.size:
        raise ValueError(f"distribution is over [{dist.k}]^{dist.k}, "
                         f"key set has size {a.size}")
    ratios, rmax = pfr_search_tables(dist.k, dist.lam)
    index, probes, status = _kernels.pfr_scan(
        np.uint64(seed.z_seed), np.uint64(seed.u_seed), _keys_u64(a), dist.k,
        np.uint64(rejection_bound(dist.k)),
        np.asarray(ratios, dtype=np.float64), rmax, probe_cap,
    )
    if status:
        raise ProbeBudgetError("pfr", a, seed, probe_cap)
    return EncodeResult(description=code.encode(index), index=index, probes=probes)


def encode(a: KeySet, config: SchemeConfig) -> EncodeResult:
    if a.size != config.k or a.universe_size != config.n:
        raise ValueError("key set does not match the configured (n, k)")
    if config.kind == "perfect":
        return perfect_encode(a, config.seed, config.code, config.probe_cap)
    if config.kind == "zero":
        return zero_bit_encode(a, config.seed)
    if config.kind == "mixture":
        return mixture_encode(a, config.seed, config.lam, config.code,
                              config.probe_cap)
    return pfr_encode(a, config.seed, config.urn, config.code, config.probe_cap)


def decode(description: BitString, config: SchemeConfig) -> HashFunctionHandle:
    """Recover the hash-function handle the encoder selected."""
    kind = config.kind
    if kind == "mixture":
        kind = "perfect" if mixture_branch_is_perfect(config.seed, config.lam) \
            else "zero"
    if kind == "zero":
        if len(description):
            raise ValueError("zero-bit descriptions are empty")
        return HashFunctionHandle(config.seed, 1, config.k)
    index, end = config.code.decode(description)
    if end != len(description):
        raise ValueError(
            f"trailing bits after the codeword ({len(description) - end})"
        )
    return HashFunctionHandle(config.seed, index, config.k)
