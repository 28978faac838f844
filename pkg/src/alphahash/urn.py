"""The urn-model target distribution on [k]^k.

Sampling recipe for parameter lambda (w = ceil(lambda*k)): draw w values
without replacement from an urn holding [k], then k-w more values i.i.d.
uniform from the k-w values remaining in the urn, then apply a uniform
random coordinate permutation.  The permuted vector depends on the draw
only through its multiset, which makes the pmf a function of the singleton
count s(x) alone:

    pmf(x) = [s(x) >= w] * s!/(s-w)! * ((k-w)!/k!)^2 * (k-w)^-(k-w)

with 0^0 = 1.  The closed form is certified against exhaustive enumeration
(`oracle.verify_grid`) for every k <= 5 before use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import singleton_count

_LOG2_E = math.log2(math.e)
_INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class UrnDistribution:
    """Urn distribution with k ranks and without-replacement share lambda."""

    k: int
    lam: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lam}")

    @property
    def w(self) -> int:
        return math.ceil(self.lam * self.k)

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        k, w = self.k, self.w
        values = list(range(1, k + 1))
        prefix = rng.sample(values, w)
        drawn = prefix
        if k > w:
            taken = set(prefix)
            rest = [v for v in values if v not in taken]
            drawn = prefix + rng.choices(rest, k=k - w)
        rng.shuffle(drawn)
        return tuple(drawn)

    def _mass_for_singletons(self, s: int) -> Fraction:
        k, w = self.k, self.w
        if s < w:
            return Fraction(0)
        base = Fraction(math.factorial(k - w), math.factorial(k)) ** 2
        urn_term = Fraction(1, (k - w) ** (k - w)) if k > w else Fraction(1)
        return math.perm(s, w) * base * urn_term

    def pmf(self, x: Sequence[int]) -> Fraction:
        k = self.k
        if len(x) != k or any(not 1 <= v <= k for v in x):
            raise ValueError(f"expected a vector over [1, {k}] of length {k}")
        return self._mass_for_singletons(singleton_count(x))

    def log_ratio_to_uniform(self, x: Sequence[int]) -> float:
        """log2 of pmf(x) / uniform(x); -inf off the support."""
        p = self.pmf(x)
        if p == 0:
            return -math.inf
        ratio = p * Fraction(self.k**self.k)
        return math.log2(ratio.numerator) - math.log2(ratio.denominator)

    def feasible_singleton_counts(self) -> list[int]:
        """Singleton counts realizable by some vector in the support."""
        # s = k-1 is impossible (a lone colliding position cannot exist)
        return [s for s in range(self.w, self.k + 1)
                if s == self.k or self.k - s >= 2]

    def ratio_by_singletons(self) -> list[float]:
        """pmf/uniform ratio indexed by singleton count, as floats.

        Entries at unrealizable singleton counts are 0 (no vector attains
        them, so the search never looks them up either).
        """
        scale = Fraction(self.k**self.k)
        feasible = set(self.feasible_singleton_counts())
        return [
            float(self._mass_for_singletons(s) * scale) if s in feasible else 0.0
            for s in range(self.k + 1)
        ]

    def max_log_ratio(self) -> float:
        """log2 of the largest pmf/uniform ratio over the support."""
        scale = Fraction(self.k**self.k)
        best = max(
            self._mass_for_singletons(s) * scale
            for s in self.feasible_singleton_counts()
        )
        return math.log2(best.numerator) - math.log2(best.denominator)

    def expected_distortion_bound(self) -> float:
        """Upper bound (1 - 1/e)(1 - lambda) on the mean collision fraction."""
        return (1.0 - _INV_E) * (1.0 - self.lam)

    def entropy_lower_bound(self) -> float:
        """Lower bound in bits on the entropy of the permuted draw.

        k log2(k) - lambda k log2(e) plus the permutation-gain correction
        term; evaluated with lambda itself, not w/k.
        """
        k, lam = self.k, self.lam
        out = k * math.log2(k) - lam * k * _LOG2_E
        num = 1.0 - (lam - 1.0 / k) / 2.0
        den = num - (1.0 - _INV_E) * (1.0 - lam - 1.0 / k)
        return out + lam * k * math.log2(num / den)

    def divergence_from_uniform(self, exact_entropy_bits: float) -> float:
        """KL divergence in bits to uniform on [k]^k, from an exact entropy."""
        cap = self.k * math.log2(self.k)
        if not -1e-9 <= exact_entropy_bits <= cap + 1e-9:
            raise ValueError(
                f"entropy {exact_entropy_bits} outside [0, {cap}]"
            )
        return cap - exact_entropy_bits


@lru_cache(maxsize=None)
def pfr_search_tables(k: int, lam: float) -> tuple[tuple[float, ...], float]:
    """(ratio-by-singleton-count, max ratio) for the sampling search."""
    d = UrnDistribution(k, lam)
    ratios = tuple(d.ratio_by_singletons())
    rmax = max(
        ratios[s] for s in d.feasible_singleton_counts()
    )
    return ratios, rmax
