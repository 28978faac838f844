"""Request/response models for the hashing service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SchemeName = Literal["perfect", "zero", "mixture", "pfr"]
CodeName = Literal["auto", "gamma", "delta", "golomb", "empirical"]


class EncodeRequest(BaseModel):
    scheme: SchemeName
    keys: list[int] = Field(..., min_length=1)
    n: int = Field(10**6, ge=1, description="universe size")
    alpha: float = Field(1.0, ge=0.0, le=1.0)
    code: CodeName = "auto"
    seed: int = Field(..., ge=0, description="master seed, split internally")
    probe_cap: int = Field(10**9, ge=1)


class EncodeResponse(BaseModel):
    scheme: SchemeName
    k: int
    index: Optional[int]
    branch: Optional[str]
    probes: int
    bit_length: int
    description_bits: str
    description_hex: str = Field(..., description="wire container, hex")


class DecodeRequest(BaseModel):
    scheme: SchemeName
    keys: list[int] = Field(..., min_length=1)
    n: int = Field(10**6, ge=1)
    alpha: float = Field(1.0, ge=0.0, le=1.0)
    code: CodeName = "auto"
    seed: int = Field(..., ge=0)
    description_hex: str


class DecodeResponse(BaseModel):
    index: int
    hash_values: list[int]
    collision_fraction: float


class RoundtripResponse(BaseModel):
    scheme: SchemeName
    k: int
    index: Optional[int]
    branch: Optional[str]
    probes: int
    bit_length: int
    bits_per_key: float
    description_bits: str
    description_hex: str
    hash_values: list[int]
    collision_fraction: float


class SweepPoint(BaseModel):
    alpha: float
    mixture_bits_per_key: float
    sampling_bits_per_key: float


class SweepResponse(BaseModel):
    points: list[SweepPoint]
    csv: str


class SimulateRequest(BaseModel):
    scheme: SchemeName
    n: int = Field(10**6, ge=1)
    k: int = Field(..., ge=1)
    alpha: float = Field(1.0, ge=0.0, le=1.0)
    trials: int = Field(..., ge=1)
    keysets: int = Field(1, ge=1)
    seed: int = Field(..., ge=0)
    code: CodeName = "auto"
    probe_cap: int = Field(10**9, ge=1)


class SimulateRow(BaseModel):
    keyset_id: int
    trials: int
    mean_d: float
    se_d: float
    mean_bits: float
    se_bits: float
    bits_per_key: float
    mean_probes: float


class SimulateResponse(BaseModel):
    scheme: SchemeName
    n: int
    k: int
    alpha: float
    code: CodeName
    bound_bits_per_key: float
    rows: list[SimulateRow]
    csv: str


class OracleCheck(BaseModel):
    name: str
    k: int
    w: int
    passed: bool
    detail: str


class OracleVerifyResponse(BaseModel):
    passed: bool
    checks: list[OracleCheck]
    table: str


class HealthResponse(BaseModel):
    status: str
    version: str
