"""Closed-form space bounds and the bits-per-key rate curves.

Two rate curves as functions of the collision budget alpha: the mixture
baseline lambda(alpha) * log2(e), and the tighter sampling-scheme bound
with its permutation-gain correction.  Both vanish on [0, 1/e] and meet
at log2(e) when alpha = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .schemes import lambda_for_alpha

LOG2_E = math.log2(math.e)
_INV_E = math.exp(-1.0)


def perfect_length_bound(k: int) -> float:
    """Achievable description length in bits for collision-free hashing."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return k * LOG2_E + 3.0


def mixture_rate_bound(alpha: float) -> float:
    """Bits per key of randomizing between perfect and zero-bit hashing."""
    return lambda_for_alpha(alpha) * LOG2_E


def entropy_to_length_bound(k: int, entropy_x: float) -> float:
    """Description length achievable by sampling a target of given entropy.

    D + log2(D + 1) + 5 bits, where D = k log2(k) - entropy_x is the
    divergence of the target from uniform.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    divergence = k * math.log2(k) - entropy_x
    return divergence + math.log2(divergence + 1.0) + 5.0


def _correction(lam: float, shift: float) -> float:
    """log2 of the permutation-gain ratio at mixing weight lam."""
    num = 1.0 - (lam - shift) / 2.0
    den = num - (1.0 - _INV_E) * (1.0 - lam - shift)
    return math.log2(num / den)


def sampling_rate_bound(alpha: float) -> float:
    """Bits per key of the sampling scheme, in the large-k limit."""
    lam = lambda_for_alpha(alpha)
    if lam == 0.0:
        return 0.0
    return lam * (LOG2_E - _correction(lam, 0.0))


def sampling_length_bound(k: int, alpha: float) -> float:
    """Finite-k description length of the sampling scheme.

    Main terms lambda*k*log2(e) minus the finite-k correction, plus the
    residue log2(k log2(k) + 1) + 5.  The residue instantiates the
    otherwise unspecified O(log k) overhead with the achievable
    entropy-coding overhead at divergence k log2(k).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    lam = lambda_for_alpha(alpha)
    residue = math.log2(k * math.log2(k) + 1.0) + 5.0
    if lam == 0.0:
        return residue
    main = lam * k * (LOG2_E - _correction(lam, 1.0 / k))
    return main + residue


@dataclass(frozen=True)
class BoundPoint:
    alpha: float
    mixture_bits_per_key: float
    sampling_bits_per_key: float


def sweep(alpha_grid: Iterable[float]) -> list[BoundPoint]:
    """Evaluate both rate bounds on a grid of alpha values."""
    return [
        BoundPoint(a, mixture_rate_bound(a), sampling_rate_bound(a))
        for a in alpha_grid
    ]


def uniform_grid(points: int) -> list[float]:
    if points < 2:
        raise ValueError(f"a sweep grid needs >= 2 points, got {points}")
    return [i / (points - 1) for i in range(points)]


SWEEP_CSV_HEADER = "alpha,mixture_bits_per_key,sampling_bits_per_key"


def sweep_csv(points: Sequence[BoundPoint]) -> str:
    lines = [SWEEP_CSV_HEADER]
    lines.extend(
        f"{p.alpha:.6f},{p.mixture_bits_per_key:.6f},{p.sampling_bits_per_key:.6f}"
        for p in points
    )
    return "\n".join(lines) + "\n"
