"""Pydantic request/response models for the HTTP service.

All indices crossing the wire are 1-based (matching the x1..xn naming in
rendered polynomials); the core library is 0-based.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


class SeedFileModel(BaseModel):
    """Wire form of a seed file; see the repository README for the schema."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=1, alias="schema")
    n: int
    m: int
    labels: list[str]
    B: list[list[int]]
    Lambda_: Optional[list[list[int]]] = Field(default=None, alias="Lambda")

    def to_file_dict(self) -> dict:
        out: dict[str, Any] = {
            "schema": self.schema_version,
            "n": self.n,
            "m": self.m,
            "labels": self.labels,
            "B": self.B,
        }
        if self.Lambda_ is not None:
            out["Lambda"] = self.Lambda_
        return out


class SeedRequest(BaseModel):
    seed: SeedFileModel


class MutateRequest(BaseModel):
    seed: SeedFileModel
    directions: list[int] = Field(min_length=1, description="1-based mutation directions, applied left to right")


class MutatePairRequest(BaseModel):
    seed: SeedFileModel
    k: int = Field(description="1-based mutation direction")
    eps: int = Field(default=1, description="+1 or -1; the result is checked to be sign-independent")


class PolyRequest(BaseModel):
    seed: SeedFileModel
    poly: str


class SupertoricRequest(BaseModel):
    seed: SeedFileModel
    max_subset: Optional[int] = None
    early_exit: bool = False


class ScanRequest(BaseModel):
    seed: SeedFileModel
    defining: bool = False


class MemberRequest(BaseModel):
    seed: SeedFileModel
    members: list[str] = Field(description="candidate set as tokens x<i>, y<i> or 1")
    poly: str


class MutateResponse(BaseModel):
    seed: SeedFileModel
    expansions: list[str]
    text: str


class CheckPairResponse(BaseModel):
    product: list[list[int]]
    diagonal: list[int]
    violations: list[list[int]]
    lambda_skew_violations: list[list[int]]
    is_compatible: bool
    text: str


class MutatePairResponse(BaseModel):
    seed: SeedFileModel
    eps_independent: bool
    matches_matrix_mutation: bool
    compatible_before: bool
    compatible_after: bool
    text: str


class KernelResponse(BaseModel):
    rank: int
    basis: list[list[int]]
    text: str


class InvariantResponse(BaseModel):
    poly: str
    invariant: bool
    torus_rank: int
    text: str


class SupertoricResponse(BaseModel):
    passes: bool
    first_failure: Optional[list[int]]
    checked: int
    truncated: bool
    failures: list[dict]
    text: str


class ScanResponse(BaseModel):
    total_checked: int
    passing_count: int
    require_defining: bool
    candidates: list[dict]
    notes: list[str]
    text: str


class MemberResponse(BaseModel):
    verdict: str = Field(description="member | not_member | negative_ideal_exponent")
    member: Optional[bool]
    convention: str
    text: str


class PosetResponse(BaseModel):
    nodes: list[str]
    edges: list[list[int]]
    cos_violations: list[dict]
    cos_saturated: bool
    text: str


class AcyclicResponse(BaseModel):
    status: str
    detail: str
    smooth: bool
    mu: Optional[int]
    generation_sums: list[str]
    generation_sum_formula: str
    text: str


class CorpusResponse(BaseModel):
    name: str
    ok: bool
    items: list[dict]
    mismatches: list[str]
    text: str


class HealthResponse(BaseModel):
    status: str
    version: str
