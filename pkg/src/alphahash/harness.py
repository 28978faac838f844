"""Monte Carlo experiment driver with deterministic seeding and reports.

Per-trial seeds and random key sets are derived from one base seed via
counter-mode PRF lanes, so identical configurations reproduce identical
reports byte for byte.  Every trial round-trips its description through
the decoder and fails loudly on any disagreement before metrics are
recorded.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import bounds, schemes
from .codes import (
    EliasDelta,
    EliasGamma,
    Golomb,
    IntegerCode,
    build_empirical_code,
    golomb_parameter_for_geometric,
)
from .core import KeySet, collision_fraction
from .randomness import PHI64, SharedSeed, mix64, rejection_bound, word64

# PRF lanes under the base seed (scheme seeds never reuse the base seed)
_LANE_TRIAL_Z = 101
_LANE_TRIAL_U = 102
_LANE_KEYSET = 103

CODE_CHOICES = ("auto", "gamma", "delta", "golomb", "empirical")

REPORT_CSV_HEADER = (
    "scheme,n,k,alpha,keyset_id,trials,mean_d,se_d,mean_bits,se_bits,"
    "bits_per_key,bound_bits_per_key"
)


class RoundTripError(AssertionError):
    """Decoder disagreed with the encoder on some trial."""


@dataclass(frozen=True)
class ExperimentConfig:
    scheme: str
    n: int
    k: int
    alpha: float
    trials: int
    key_sets: int
    base_seed: int
    code: str = "auto"
    probe_cap: int = schemes.DEFAULT_PROBE_CAP

    def __post_init__(self) -> None:
        if self.scheme not in schemes.SCHEME_KINDS:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.trials < 1:
            raise ValueError("at least one trial is required")
        if self.key_sets < 1:
            raise ValueError("at least one key set is required")
        if self.code not in CODE_CHOICES:
            raise ValueError(f"unknown code {self.code!r}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")


@dataclass(frozen=True)
class KeySetStats:
    keyset_id: int
    trials: int
    mean_d: float
    se_d: float
    mean_bits: float
    se_bits: float
    bits_per_key: float
    mean_probes: float


@dataclass(frozen=True)
class ExperimentReport:
    scheme: str
    n: int
    k: int
    alpha: float
    code: str
    base_seed: int
    bound_bits_per_key: float
    rows: tuple[KeySetStats, ...]


def derive_trial_seed(base_seed: int, counter: int) -> SharedSeed:
    return SharedSeed(
        z_seed=word64(base_seed, _LANE_TRIAL_Z, counter),
        u_seed=word64(base_seed, _LANE_TRIAL_U, counter),
    )


def random_keyset(n: int, k: int, seed: int) -> KeySet:
    """Uniform k-subset of [1, n] via a seeded partial Fisher-Yates pass."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    swaps: dict[int, int] = {}
    chosen = []
    for i in range(k):
        span = n - i
        v = word64(seed, 1, i)
        bound = rejection_bound(span)
        if bound:
            while v >= bound:
                v = mix64(v + PHI64)
        j = i + v % span
        chosen.append(swaps.get(j, j))
        swaps[j] = swaps.get(i, i)
    return KeySet(n, (c + 1 for c in chosen))


def resolve_code(kind: str, scheme: str, k: int) -> IntegerCode | None:
    """Concrete code for a config; 'auto' matches the scheme's index law."""
    if scheme == "zero":
        return None
    if kind == "auto":
        kind = "delta" if scheme == "pfr" else "golomb"
    if kind == "gamma":
        return EliasGamma()
    if kind == "delta":
        return EliasDelta()
    if kind == "golomb":
        # success probability of one uniform function being injective;
        # certain success (k=1) degenerates to unary
        p = float(Fraction(math.factorial(k), k**k))
        return Golomb(1 if p >= 1.0 else golomb_parameter_for_geometric(p))
    # empirical: resolved by the two-pass driver, which owns the samples
    raise ValueError("empirical codes are built by run_experiment's two-pass mode")


def _bound_bits_per_key(scheme: str, k: int, alpha: float) -> float:
    if scheme == "perfect":
        return bounds.perfect_length_bound(k) / k
    if scheme == "zero":
        return 0.0
    if scheme == "mixture":
        return bounds.mixture_rate_bound(alpha)
    return bounds.sampling_rate_bound(alpha)


def _mean_se(values: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    if len(values) < 2:
        return mean, 0.0
    return mean, statistics.stdev(values) / math.sqrt(len(values))


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    two_pass = cfg.code == "empirical"
    code = EliasDelta() if two_pass else resolve_code(cfg.code, cfg.scheme, cfg.k)
    base_config = schemes.SchemeConfig(
        n=cfg.n, k=cfg.k, alpha=cfg.alpha, kind=cfg.scheme, code=code,
        seed=SharedSeed(0, 0), probe_cap=cfg.probe_cap,
    )

    per_set: list[tuple[list[float], list[int], list[int]]] = []
    all_indices: list[int | None] = []
    for sid in range(cfg.key_sets):
        a = random_keyset(cfg.n, cfg.k, word64(cfg.base_seed, _LANE_KEYSET, sid))
        ds: list[float] = []
        lens: list[int] = []
        probes: list[int] = []
        for trial in range(cfg.trials):
            seed = derive_trial_seed(cfg.base_seed, sid * cfg.trials + trial)
            config = replace(base_config, seed=seed)
            result = schemes.encode(a, config)
            handle = schemes.decode(result.description, config)
            if handle.index != result.index:
                raise RoundTripError(
                    f"decoded index {handle.index} != encoded {result.index} "
                    f"(scheme={cfg.scheme}, keyset={sid}, trial={trial})"
                )
            d = collision_fraction(handle.restrict(a))
            if cfg.scheme == "perfect" and d != 0:
                raise RoundTripError(
                    f"perfect scheme produced collisions (keyset={sid}, "
                    f"trial={trial})"
                )
            ds.append(float(d))
            lens.append(len(result.description))
            probes.append(result.probes)
            all_indices.append(
                result.index if len(result.description) else None
            )
        per_set.append((ds, lens, probes))

    if two_pass:
        # the index law does not depend on the key set, so one code built
        # from the pooled first-pass indices serves every key set
        observed = [i for i in all_indices if i is not None]
        if observed:
            empirical = build_empirical_code(observed)
            pos = 0
            for sid in range(cfg.key_sets):
                ds, lens, probes = per_set[sid]
                for trial in range(cfg.trials):
                    idx = all_indices[pos]
                    if idx is not None:
                        lens[trial] = len(empirical.encode(idx))
                    pos += 1

    rows = []
    for sid, (ds, lens, probes) in enumerate(per_set):
        mean_d, se_d = _mean_se(ds)
        mean_bits, se_bits = _mean_se([float(v) for v in lens])
        rows.append(KeySetStats(
            keyset_id=sid,
            trials=cfg.trials,
            mean_d=mean_d,
            se_d=se_d,
            mean_bits=mean_bits,
            se_bits=se_bits,
            bits_per_key=mean_bits / cfg.k,
            mean_probes=statistics.fmean(probes),
        ))
    return ExperimentReport(
        scheme=cfg.scheme,
        n=cfg.n,
        k=cfg.k,
        alpha=cfg.alpha,
        code=cfg.code,
        base_seed=cfg.base_seed,
        bound_bits_per_key=_bound_bits_per_key(cfg.scheme, cfg.k, cfg.alpha),
        rows=tuple(rows),
    )


def report_to_csv(report: ExperimentReport) -> str:
    lines = [REPORT_CSV_HEADER]
    for row in report.rows:
        lines.append(
            f"{report.scheme},{report.n},{report.k},{report.alpha:.6f},"
            f"{row.keyset_id},{row.trials},{row.mean_d:.6f},{row.se_d:.6f},"
            f"{row.mean_bits:.6f},{row.se_bits:.6f},{row.bits_per_key:.6f},"
            f"{report.bound_bits_per_key:.6f}"
        )
    return "\n".join(lines) + "\n"


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(asdict(report), indent=2, sort_keys=True) + "\n"


def write_report(report: ExperimentReport, path: str | Path, fmt: str) -> None:
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown report format {fmt!r}")
    text = report_to_csv(report) if fmt == "csv" else report_to_json(report)
    Path(path).write_text(text)
