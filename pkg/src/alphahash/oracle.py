"""Exhaustive ground truth for the urn distribution at small k.

Everything here is computed by brute-force enumeration of the urn process
in exact rational arithmetic, independently of the closed-form pmf in
`urn`.  Its job is to certify that module: the pmf, the distortion and
entropy bounds, and the permuted/pre-permuted conditional-entropy identity
are all checked against these enumerations before anything downstream is
trusted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .core import collision_fraction, collision_profile

#: full X-stage enumeration walks k!/(k-w)! * (k-w)^(k-w) * k! outcomes
MAX_ENUM_K = 6

#: rational upper bound on 1/e, good to 1e-17; keeps the exact-arithmetic
#: distortion comparison sound (a smaller bound could only fail harder)
INV_E_UPPER = Fraction(36787944117144233, 10**17)


@dataclass(frozen=True)
class ExactDistribution:
    """Finite distribution over restriction vectors with exact masses."""

    masses: Mapping[tuple[int, ...], Fraction]

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))


def _check_enum_args(k: int, w: int) -> None:
    if not 1 <= k <= MAX_ENUM_K:
        raise ValueError(f"enumeration supports 1 <= k <= {MAX_ENUM_K}, got {k}")
    if not 0 <= w <= k:
        raise ValueError(f"need 0 <= w <= k, got w={w}")


@lru_cache(maxsize=None)
def enumerate_urn_distribution(k: int, w: int) -> ExactDistribution:
    """Distribution of the permuted urn draw, by walking every outcome.

    Enumerates all ordered without-replacement prefixes, all
    with-replacement suffixes over the reduced urn, and all k! coordinate
    permutations of each, accumulating one count per resulting vector.
    """
    _check_enum_args(k, w)
    values = tuple(range(1, k + 1))
    counts: dict[tuple[int, ...], int] = {}
    for prefix in itertools.permutations(values, w):
        rest = tuple(v for v in values if v not in prefix)
        suffixes = itertools.product(rest, repeat=k - w) if k > w else ((),)
        for suffix in suffixes:
            y = prefix + suffix
            for x in itertools.permutations(y):
                counts[x] = counts.get(x, 0) + 1
    denom = (
        math.perm(k, w) * (k - w) ** (k - w) * math.factorial(k)
        if k > w
        else math.factorial(k) ** 2
    )
    assert sum(counts.values()) == denom
    return ExactDistribution(
        {x: Fraction(c, denom) for x, c in sorted(counts.items())}
    )


@lru_cache(maxsize=None)
def _enumerate_pre_permutation(k: int, w: int) -> ExactDistribution:
    """Distribution of the draw sequence before the coordinate permutation."""
    _check_enum_args(k, w)
    values = tuple(range(1, k + 1))
    outcomes: list[tuple[int, ...]] = []
    for prefix in itertools.permutations(values, w):
        rest = tuple(v for v in values if v not in prefix)
        suffixes = itertools.product(rest, repeat=k - w) if k > w else ((),)
        outcomes.extend(prefix + suffix for suffix in suffixes)
    mass = Fraction(1, len(outcomes))
    return ExactDistribution({y: mass for y in sorted(outcomes)})


def _entropy_bits(probs) -> float:
    return -sum(
        float(p) * (math.log2(p.numerator) - math.log2(p.denominator))
        for p in probs
        if p
    )


def exact_entropy(dist: ExactDistribution) -> float:
    """Shannon entropy in bits of an exactly enumerated distribution."""
    return _entropy_bits(dist.masses.values())


def pre_permutation_entropy(k: int, w: int) -> float:
    """Closed-form entropy in bits of the unpermuted draw sequence.

    log2(k!/(k-w)!) + (k-w) log2(k-w), with 0*log2(0) taken as 0; equals
    the enumeration entropy because that stage is uniform over its
    outcomes.
    """
    if k < 1 or not 0 <= w <= k:
        raise ValueError(f"need k >= 1 and 0 <= w <= k, got k={k}, w={w}")
    tail = (k - w) * math.log2(k - w) if k > w else 0.0
    return math.log2(math.perm(k, w)) + tail


def exact_expected_distortion(dist: ExactDistribution) -> Fraction:
    """Exact expectation of the collision fraction under dist."""
    return sum(
        (p * collision_fraction(x) for x, p in dist.masses.items()), Fraction(0)
    )


def _grouped_entropy(groups: dict, masses: Mapping) -> float:
    grouped: dict = {}
    for x, p in masses.items():
        key = groups[x]
        grouped[key] = grouped.get(key, Fraction(0)) + p
    return _entropy_bits(grouped.values())


def conditional_entropy_identity(k: int, w: int) -> tuple[float, float, bool]:
    """H(vector | collision indicator) for the permuted and unpermuted stages.

    Returns (permuted, unpermuted, equal-within-1e-12).  Both conditional
    entropies are computed as H(V) - H(indicator(V)) from the exact
    enumerations.
    """
    if k > 5:
        raise ValueError(f"joint enumeration supports k <= 5, got {k}")
    x_dist = enumerate_urn_distribution(k, w)
    y_dist = _enumerate_pre_permutation(k, w)
    indicator_x = {x: collision_profile(x).indicator for x in x_dist.masses}
    indicator_y = {y: collision_profile(y).indicator for y in y_dist.masses}
    lhs = exact_entropy(x_dist) - _grouped_entropy(indicator_x, x_dist.masses)
    rhs = exact_entropy(y_dist) - _grouped_entropy(indicator_y, y_dist.masses)
    return lhs, rhs, abs(lhs - rhs) <= 1e-12


def perfect_success_probability(k: int) -> Fraction:
    """k!/k^k: chance a uniform function on k keys is injective."""
    if not 1 <= k <= 8:
        raise ValueError(f"supported for 1 <= k <= 8, got {k}")
    return Fraction(math.factorial(k), k**k)


def calibrated_lambda(k: int, alpha: float) -> float:
    """Smallest urn parameter whose exact mean distortion meets 1 - alpha.

    The default parameter for a collision budget rounds the worst case up;
    scanning w with the enumeration oracle exposes the slack (e.g. at
    k = 4, alpha = 0.75 the exact distortion at w = 2 is already 1/4).
    Enumeration-scale k only.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    budget = Fraction(alpha).limit_denominator(10**12)
    for w in range(0, k + 1):
        mean_d = exact_expected_distortion(enumerate_urn_distribution(k, w))
        if mean_d <= 1 - budget:
            return w / k
    raise AssertionError("unreachable: w = k has zero distortion")


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    k: int
    w: int
    passed: bool
    detail: str


def verify_grid(kmax: int = 5) -> list[VerificationCheck]:
    """Certify the closed-form urn module against enumeration for k <= kmax."""
    from . import urn

    if not 1 <= kmax <= 5:
        raise ValueError(f"verification grid needs 1 <= kmax <= 5, got {kmax}")
    checks: list[VerificationCheck] = []

    def add(name: str, k: int, w: int, passed: bool, detail: str = "") -> None:
        checks.append(VerificationCheck(name, k, w, bool(passed), detail))

    for k in range(1, kmax + 1):
        for w in range(0, k + 1):
            dist = enumerate_urn_distribution(k, w)
            d = urn.UrnDistribution(k, w / k)
            assert d.w == w

            total = dist.total()
            add("normalization", k, w, total == 1, f"sum={total}")

            mismatches = sum(
                1
                for x in itertools.product(range(1, k + 1), repeat=k)
                if d.pmf(x) != dist.masses.get(x, Fraction(0))
            )
            add("pmf-matches-enumeration", k, w, mismatches == 0,
                f"{mismatches} mismatching vectors")

            formula = pre_permutation_entropy(k, w)
            enumerated = exact_entropy(_enumerate_pre_permutation(k, w))
            add("pre-permutation-entropy", k, w,
                abs(formula - enumerated) <= 1e-9,
                f"formula={formula:.9f} enumerated={enumerated:.9f}")

            mean_d = exact_expected_distortion(dist)
            bound = (1 - INV_E_UPPER) * Fraction(k - w, k)
            add("distortion-bound", k, w, mean_d <= bound,
                f"E[d]={mean_d} bound>={float(bound):.9f}")

            entropy = exact_entropy(dist)
            lower = d.entropy_lower_bound()
            add("entropy-lower-bound", k, w, entropy >= lower - 1e-9,
                f"H={entropy:.9f} lower={lower:.9f}")

            lhs, rhs, equal = conditional_entropy_identity(k, w)
            add("conditional-entropy-identity", k, w, equal,
                f"permuted={lhs:.12f} unpermuted={rhs:.12f}")
    return checks


def verification_table(checks: list[VerificationCheck]) -> str:
    lines = [f"{'check':34} {'k':>2} {'w':>2}  result"]
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        tail = f"  {c.detail}" if (c.detail and not c.passed) else ""
        lines.append(f"{c.name:34} {c.k:>2} {c.w:>2}  {status}{tail}")
    failed = sum(1 for c in checks if not c.passed)
    lines.append(
        f"{len(checks) - failed}/{len(checks)} checks passed"
        + (f", {failed} FAILED" if failed else "")
    )
    return "\n".join(lines)
