"""Seed file format: versioned JSON with fields schema, n, m, labels, B, Lambda.

B is the m x n exchange matrix as a row-major list of rows; Lambda is the
optional n x n Poisson coefficient matrix.  Parsing validates dimensions
and skew-symmetrizability of the principal block before any computation;
Lambda is only shape-checked here, its skew-symmetry is diagnosed
downstream so that defective matrices can be analyzed rather than
rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import ClusterPoissonError
from .intlinalg import IntMatrix
from .seed import Seed

SCHEMA_VERSION = 1


class SeedFileError(ClusterPoissonError, ValueError):
    """Malformed or inconsistent seed file."""


@dataclass(frozen=True)
class SeedFile:
    seed: Seed
    lam: Optional[IntMatrix]


def _int_rows(value, what: str) -> list[list[int]]:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise SeedFileError(f"{what} must be a non-empty list of rows")
    out = []
    for r, row in enumerate(value):
        clean = []
        for c, e in enumerate(row):
            if isinstance(e, bool) or not isinstance(e, int):
                raise SeedFileError(f"{what}[{r}][{c}] is not an integer")
            clean.append(e)
        out.append(clean)
    return out


def parse_seed_dict(data: dict) -> SeedFile:
    if not isinstance(data, dict):
        raise SeedFileError("seed file must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise SeedFileError(f"unsupported schema version {data.get('schema')!r}, expected {SCHEMA_VERSION}")
    for key in ("n", "m", "labels", "B"):
        if key not in data:
            raise SeedFileError(f"missing field {key!r}")
    n, m = data["n"], data["m"]
    if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 0 or m > n:
        raise SeedFileError(f"need integers 0 <= m <= n with n >= 1, got n={n!r} m={m!r}")
    labels = data["labels"]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise SeedFileError(f"labels must be a list of {n} strings")
    b_rows = _int_rows(data["B"], "B")
    if len(b_rows) != m or any(len(r) != n for r in b_rows):
        raise SeedFileError(f"B must be {m} rows of {n} integers")
    if m == 0:
        raise SeedFileError("seeds without mutable variables are not representable (m >= 1)")
    try:
        seed = Seed.initial(IntMatrix.from_rows(b_rows), labels)
    except ClusterPoissonError as exc:
        raise SeedFileError(str(exc)) from exc
    lam = None
    if data.get("Lambda") is not None:
        lam_rows = _int_rows(data["Lambda"], "Lambda")
        if len(lam_rows) != n or any(len(r) != n for r in lam_rows):
            raise SeedFileError(f"Lambda must be {n} rows of {n} integers")
        lam = IntMatrix.from_rows(lam_rows)
    return SeedFile(seed, lam)


def parse_seed_file(text: str) -> SeedFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedFileError(f"invalid JSON: {exc}") from exc
    return parse_seed_dict(data)


def seed_to_dict(seed: Seed, lam: Optional[IntMatrix] = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "n": seed.n,
        "m": seed.m,
        "labels": list(seed.labels),
        "B": seed.b_matrix.to_lists(),
    }
    if lam is not None:
        out["Lambda"] = lam.to_lists()
    return out


def render_seed_file(seed: Seed, lam: Optional[IntMatrix] = None) -> str:
    """Canonical rendering: fixed key order, two-space indent, newline at end."""
    return json.dumps(seed_to_dict(seed, lam), indent=2) + "\n"
