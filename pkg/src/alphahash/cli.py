"""Command-line client for the hashing service.

Subcommands map one-to-one onto service endpoints.  By default the
endpoint functions run in process; with --url the same requests go over
HTTP to a running server (`alphahash serve`).

Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import httpx
from fastapi import HTTPException

from . import __version__
from .service import schemas
from .service import app as service


class ServiceClient:
    """Dispatches requests either in process or to a remote server."""

    def __init__(self, url: str | None = None):
        self._http = httpx.Client(base_url=url, timeout=None) if url else None

    def roundtrip(self, req: schemas.EncodeRequest) -> schemas.RoundtripResponse:
        if self._http is None:
            return service.roundtrip(req)
        r = self._http.post("/roundtrip", json=req.model_dump())
        r.raise_for_status()
        return schemas.RoundtripResponse.model_validate(r.json())

    def bounds_sweep(self, grid: int) -> schemas.SweepResponse:
        if self._http is None:
            return service.bounds_sweep(grid)
        r = self._http.get("/bounds/sweep", params={"grid": grid})
        r.raise_for_status()
        return schemas.SweepResponse.model_validate(r.json())

    def simulate(self, req: schemas.SimulateRequest) -> schemas.SimulateResponse:
        if self._http is None:
            return service.simulate(req)
        r = self._http.post("/simulate", json=req.model_dump())
        r.raise_for_status()
        return schemas.SimulateResponse.model_validate(r.json())

    def oracle_verify(self, kmax: int) -> schemas.OracleVerifyResponse:
        if self._http is None:
            return service.oracle_verify(kmax)
        r = self._http.post("/oracle/verify", params={"kmax": kmax})
        r.raise_for_status()
        return schemas.OracleVerifyResponse.model_validate(r.json())


def _parse_keys(text: str) -> list[int]:
    try:
        keys = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"keys must be integers: {exc}")
    if not keys:
        raise argparse.ArgumentTypeError("at least one key is required")
    return keys


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphahash",
        description="Approximately perfect hashing: schemes, bounds, "
        "oracles, experiments.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--url", default=None,
        help="base URL of a running server; default runs in process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bounds_p = sub.add_parser("bounds", help="space-bound curves")
    bounds_sub = bounds_p.add_subparsers(dest="subcommand", required=True)
    sweep_p = bounds_sub.add_parser("sweep", help="rate bounds on an alpha grid")
    sweep_p.add_argument("--grid", type=int, default=101,
                         help="number of uniform grid points (default 101)")
    sweep_p.add_argument("--out", type=Path, default=None,
                         help="CSV output path (default stdout)")

    sim_p = sub.add_parser("simulate", help="Monte Carlo experiment")
    sim_p.add_argument("--scheme", required=True,
                       choices=["perfect", "zero", "mixture", "pfr"])
    sim_p.add_argument("--n", type=int, default=10**6)
    sim_p.add_argument("--k", type=int, required=True)
    sim_p.add_argument("--alpha", type=float, default=1.0)
    sim_p.add_argument("--trials", type=int, required=True)
    sim_p.add_argument("--keysets", type=int, default=1)
    sim_p.add_argument("--seed", type=int, default=0)
    sim_p.add_argument("--code", default="auto",
                       choices=["auto", "gamma", "delta", "golomb", "empirical"])
    sim_p.add_argument("--probe-cap", type=int, default=10**9)
    sim_p.add_argument("--format", default="csv", choices=["csv", "json"])
    sim_p.add_argument("--out", type=Path, default=None,
                       help="output path (default stdout)")

    rt_p = sub.add_parser("roundtrip",
                          help="encode one key set, decode it back, show both")
    rt_p.add_argument("--scheme", required=True,
                      choices=["perfect", "zero", "mixture", "pfr"])
    rt_p.add_argument("--keys", type=_parse_keys, required=True,
                      help="comma-separated keys, e.g. 3,17,99")
    rt_p.add_argument("--n", type=int, default=10**6)
    rt_p.add_argument("--alpha", type=float, default=1.0)
    rt_p.add_argument("--seed", type=int, default=0)
    rt_p.add_argument("--code", default="auto",
                      choices=["auto", "gamma", "delta", "golomb"])
    rt_p.add_argument("--probe-cap", type=int, default=10**9)

    oracle_p = sub.add_parser("oracle", help="exact small-k verification")
    oracle_sub = oracle_p.add_subparsers(dest="subcommand", required=True)
    verify_p = oracle_sub.add_parser(
        "verify", help="certify the closed forms against enumeration")
    verify_p.add_argument("--kmax", type=int, default=5)

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_bounds_sweep(client: ServiceClient, args: argparse.Namespace) -> int:
    resp = client.bounds_sweep(args.grid)
    _emit(resp.csv, args.out)
    return 0


def _cmd_simulate(client: ServiceClient, args: argparse.Namespace) -> int:
    req = schemas.SimulateRequest(
        scheme=args.scheme, n=args.n, k=args.k, alpha=args.alpha,
        trials=args.trials, keysets=args.keysets, seed=args.seed,
        code=args.code, probe_cap=args.probe_cap,
    )
    resp = client.simulate(req)
    if args.format == "csv":
        _emit(resp.csv, args.out)
    else:
        _emit(resp.model_dump_json(indent=2, exclude={"csv"}) + "\n", args.out)
    return 0


def _cmd_roundtrip(client: ServiceClient, args: argparse.Namespace) -> int:
    req = schemas.EncodeRequest(
        scheme=args.scheme, keys=args.keys, n=args.n, alpha=args.alpha,
        code=args.code, seed=args.seed, probe_cap=args.probe_cap,
    )
    resp = client.roundtrip(req)
    print(f"scheme          {resp.scheme}")
    print(f"keys            {','.join(str(key) for key in sorted(args.keys))}")
    print(f"index           {resp.index}"
          + (f"  (branch={resp.branch})" if resp.branch else ""))
    print(f"probes          {resp.probes}")
    print(f"description     {resp.description_bits or '(empty)'}")
    print(f"wire container  {resp.description_hex}")
    print(f"bits            {resp.bit_length}  ({resp.bits_per_key:.4f}/key)")
    print(f"hash values     {','.join(str(v) for v in resp.hash_values)}")
    print(f"collisions      {resp.collision_fraction:.6f}")
    return 0


def _cmd_oracle_verify(client: ServiceClient, args: argparse.Namespace) -> int:
    resp = client.oracle_verify(args.kmax)
    print(resp.table)
    return 0 if resp.passed else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    client = ServiceClient(args.url)
    try:
        if args.command == "bounds":
            return _cmd_bounds_sweep(client, args)
        if args.command == "simulate":
            return _cmd_simulate(client, args)
        if args.command == "roundtrip":
            return _cmd_roundtrip(client, args)
        return _cmd_oracle_verify(client, args)
    except HTTPException as exc:  # in-process service failures
        print(f"error: {exc.detail}", file=sys.stderr)
        return 1
    except httpx.HTTPStatusError as exc:  # remote service failures
        try:
            detail = exc.response.json().get("detail", exc.response.text)
        except ValueError:
            detail = exc.response.text
        print(f"error: {detail}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:  # transport failures
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
