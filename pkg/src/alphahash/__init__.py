"""Minimal alpha-perfect hashing.

A hash function for a k-key set is alpha-perfect when at most a
(1 - alpha) fraction of the keys collide in expectation.  This package
implements encoder/decoder schemes that describe such functions with a
single prefix-free integer codeword over shared seeded randomness,
closed-form space bounds for their description lengths, exact small-k
verification oracles, and a reproducible Monte Carlo harness.
"""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    CollisionProfile,
    HashFunctionHandle,
    KeySet,
    collision_fraction,
    collision_profile,
    keyset_collision_fraction,
    singleton_count,
)
from .randomness import ArrivalStream, SharedSeed, arrival_time, eval_hash  # noqa: F401
from .schemes import (  # noqa: F401
    EncodeResult,
    ProbeBudgetError,
    SchemeConfig,
    decode,
    encode,
    lambda_for_alpha,
)
from .urn import UrnDistribution  # noqa: F401
