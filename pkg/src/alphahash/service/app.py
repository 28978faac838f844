"""FastAPI service wrapping the hashing library.

The route handlers are plain synchronous functions over the pydantic
models, so the CLI can call them in process; over HTTP they behave
identically.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, HTTPException, Query

from .. import __version__, bounds, harness, oracle, schemes
from ..codes import pack_description, unpack_description
from ..core import KeySet, collision_fraction
from ..randomness import SharedSeed
from . import schemas

app = FastAPI(
    title="alphahash",
    version=__version__,
    description="Minimal alpha-perfect hashing: compact hash-function "
    "descriptions for key sets, rate-bound curves, exact small-k "
    "verification, and Monte Carlo experiments.",
)


def _scheme_config(
    scheme: str, n: int, k: int, alpha: float, code: str, seed: int,
    probe_cap: int,
) -> schemes.SchemeConfig:
    code_obj = harness.resolve_code(code, scheme, k)
    return schemes.SchemeConfig(
        n=n, k=k, alpha=alpha, kind=scheme, code=code_obj,
        seed=SharedSeed.from_master(seed), probe_cap=probe_cap,
    )


def _wire_kind(code: str, scheme: str) -> str:
    if code == "auto":
        return "delta" if scheme == "pfr" else "golomb"
    return code


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/encode", response_model=schemas.EncodeResponse)
def encode(req: schemas.EncodeRequest) -> schemas.EncodeResponse:
    try:
        a = KeySet(req.n, req.keys)
        config = _scheme_config(req.scheme, req.n, a.size, req.alpha,
                                req.code, req.seed, req.probe_cap)
        result = schemes.encode(a, config)
    except (ValueError, schemes.ProbeBudgetError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    wire = pack_description(_wire_kind(req.code, req.scheme), result.description)
    return schemas.EncodeResponse(
        scheme=req.scheme,
        k=a.size,
        index=result.index,
        branch=result.branch,
        probes=result.probes,
        bit_length=len(result.description),
        description_bits=result.description.bits,
        description_hex=wire.hex(),
    )


@app.post("/decode", response_model=schemas.DecodeResponse)
def decode(req: schemas.DecodeRequest) -> schemas.DecodeResponse:
    try:
        a = KeySet(req.n, req.keys)
        # decoding never probes, so the cap is irrelevant here
        config = _scheme_config(req.scheme, req.n, a.size, req.alpha,
                                req.code, req.seed, 10**9)
        kind, bits = unpack_description(bytes.fromhex(req.description_hex))
        expected = _wire_kind(req.code, req.scheme)
        if kind != expected:
            raise ValueError(
                f"container was written with the {kind!r} code, "
                f"request asks for {expected!r}"
            )
        handle = schemes.decode(bits, config)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    values = list(handle.restrict(a))
    return schemas.DecodeResponse(
        index=handle.index,
        hash_values=values,
        collision_fraction=float(collision_fraction(values)),
    )


@app.post("/roundtrip", response_model=schemas.RoundtripResponse)
def roundtrip(req: schemas.EncodeRequest) -> schemas.RoundtripResponse:
    encoded = encode(req)
    decoded = decode(schemas.DecodeRequest(
        scheme=req.scheme, keys=req.keys, n=req.n, alpha=req.alpha,
        code=req.code, seed=req.seed, description_hex=encoded.description_hex,
    ))
    if encoded.index is not None and decoded.index != encoded.index:
        raise HTTPException(
            status_code=500,
            detail=f"decoder index {decoded.index} != encoder {encoded.index}",
        )
    return schemas.RoundtripResponse(
        scheme=req.scheme,
        k=encoded.k,
        index=decoded.index,
        branch=encoded.branch,
        probes=encoded.probes,
        bit_length=encoded.bit_length,
        bits_per_key=encoded.bit_length / encoded.k,
        description_bits=encoded.description_bits,
        description_hex=encoded.description_hex,
        hash_values=decoded.hash_values,
        collision_fraction=decoded.collision_fraction,
    )


@app.get("/bounds/sweep", response_model=schemas.SweepResponse)
def bounds_sweep(
    grid: int = Query(101, ge=2, description="number of uniform grid points"),
) -> schemas.SweepResponse:
    points = bounds.sweep(bounds.uniform_grid(grid))
    return schemas.SweepResponse(
        points=[schemas.SweepPoint(**dataclasses.asdict(p)) for p in points],
        csv=bounds.sweep_csv(points),
    )


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    try:
        cfg = harness.ExperimentConfig(
            scheme=req.scheme, n=req.n, k=req.k, alpha=req.alpha,
            trials=req.trials, key_sets=req.keysets, base_seed=req.seed,
            code=req.code, probe_cap=req.probe_cap,
        )
        report = harness.run_experiment(cfg)
    except (ValueError, schemes.ProbeBudgetError, harness.RoundTripError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return schemas.SimulateResponse(
        scheme=report.scheme,
        n=report.n,
        k=report.k,
        alpha=report.alpha,
        code=report.code,
        bound_bits_per_key=report.bound_bits_per_key,
        rows=[schemas.SimulateRow(**dataclasses.asdict(r)) for r in report.rows],
        csv=harness.report_to_csv(report),
    )


@app.post("/oracle/verify", response_model=schemas.OracleVerifyResponse)
def oracle_verify(
    kmax: int = Query(5, ge=1, le=5),
) -> schemas.OracleVerifyResponse:
    checks = oracle.verify_grid(kmax)
    return schemas.OracleVerifyResponse(
        passed=all(c.passed for c in checks),
        checks=[schemas.OracleCheck(**dataclasses.asdict(c)) for c in checks],
        table=oracle.verification_table(checks),
    )
