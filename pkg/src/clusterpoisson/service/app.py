"""FastAPI service wrapping the core package.

Every endpoint takes the seed inline in the request body, computes with
exact arithmetic, and returns machine-readable data plus a pre-rendered
human text block.  Client errors (malformed seed files or expressions)
map to 400, broken internal invariants to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ClusterPoissonError, InvariantViolation
from ..corpus import CORPUS_SEEDS, CORPUS_VERIFIERS
from ..intlinalg import IntMatrix
from ..laurent import LaurentPoly, NotDivisible, PolyParseError, parse_poly
from ..poisson import PoissonSeed, check_pair, mutate_pair_report, super_toric, toric_lattice
from ..seed import Seed
from ..seedio import SeedFile, SeedFileError, parse_seed_dict, seed_to_dict
from ..tpp import (
    CandidateSet,
    NegativeIdealExponent,
    acyclic_classify,
    ideal_member,
    inclusion_poset,
    scan_tp_candidates,
)
from . import schemas

app = FastAPI(
    title="clusterpoisson",
    version=__version__,
    description="Exact Poisson cluster algebra computations: mutation, compatible pairs, "
    "toric actions, and torus-invariant Poisson prime candidates.",
)


class RequestError(ClusterPoissonError):
    """Bad request content that pydantic cannot catch (semantic validation)."""


@app.exception_handler(ClusterPoissonError)
async def _core_error_handler(request: Request, exc: ClusterPoissonError):
    if isinstance(exc, InvariantViolation):
        return JSONResponse(status_code=500, content={"detail": f"invariant violation: {exc}"})
    return JSONResponse(status_code=400, content={"detail": str(exc)})


def _load(model: schemas.SeedFileModel) -> SeedFile:
    return parse_seed_dict(model.to_file_dict())


def _require_lambda(sf: SeedFile) -> IntMatrix:
    if sf.lam is None:
        raise RequestError("this operation needs a Lambda matrix in the seed file")
    return sf.lam


def _direction(seed: Seed, k: int) -> int:
    if not 1 <= k <= seed.m:
        raise RequestError(f"mutation direction {k} out of range (1..{seed.m})")
    return k - 1


def _seed_model(seed: Seed, lam: IntMatrix | None = None) -> schemas.SeedFileModel:
    return schemas.SeedFileModel.model_validate(seed_to_dict(seed, lam))


def _parse_members(seed: Seed, tokens: list[str]) -> CandidateSet:
    x_part, y_part, has_one = set(), set(), False
    for tok in tokens:
        t = tok.strip()
        if t == "1":
            has_one = True
        elif t.startswith("x") and t[1:].isdigit():
            j = int(t[1:])
            if not 1 <= j <= seed.n:
                raise RequestError(f"set member {t} out of range (x1..x{seed.n})")
            x_part.add(j - 1)
        elif t.startswith("y") and t[1:].isdigit():
            i = int(t[1:])
            if not 1 <= i <= seed.m:
                raise RequestError(f"set member {t} out of range (y1..y{seed.m})")
            y_part.add(i - 1)
        else:
            raise RequestError(f"cannot parse set member {t!r}; use x<i>, y<i> or 1")
    return CandidateSet.make(seed.n, seed.m, x_part, y_part, has_one)


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/mutate", response_model=schemas.MutateResponse)
def mutate(req: schemas.MutateRequest) -> schemas.MutateResponse:
    sf = _load(req.seed)
    seed = sf.seed
    for k in req.directions:
        seed = seed.mutate(_direction(seed, k))
    expansions = [p.render() for p in seed.expansions]
    lines = [f"mutation sequence {list(req.directions)} applied"]
    lines += [f"  {seed.labels[j]} = {expansions[j]}" for j in range(seed.n)]
    lines.append("exchange matrix:")
    lines += ["  " + row for row in str(seed.b_matrix).splitlines()]
    return schemas.MutateResponse(seed=_seed_model(seed, sf.lam), expansions=expansions, text="\n".join(lines))


@app.post("/check-pair", response_model=schemas.CheckPairResponse)
def check_pair_endpoint(req: schemas.SeedRequest) -> schemas.CheckPairResponse:
    sf = _load(req.seed)
    ps = PoissonSeed(sf.seed, _require_lambda(sf), allow_skew_violations=True)
    report = check_pair(ps)
    data = report.to_dict()
    return schemas.CheckPairResponse(**data, text=report.render_text())


@app.post("/mutate-pair", response_model=schemas.MutatePairResponse)
def mutate_pair_endpoint(req: schemas.MutatePairRequest) -> schemas.MutatePairResponse:
    sf = _load(req.seed)
    if req.eps not in (1, -1):
        raise RequestError("eps must be +1 or -1")
    ps = PoissonSeed(sf.seed, _require_lambda(sf), allow_skew_violations=True)
    report = mutate_pair_report(ps, _direction(sf.seed, req.k), req.eps)
    out = report.pair
    text = "\n".join(
        [
            f"pair mutated in direction {req.k} (matches matrix mutation; "
            f"sign-independent: {report.eps_independent})",
            "new exchange matrix:",
            *("  " + r for r in str(out.seed.b_matrix).splitlines()),
            "new coefficient matrix:",
            *("  " + r for r in str(out.lam).splitlines()),
            f"compatible before: {report.compatible_before}, after: {report.compatible_after}",
        ]
    )
    return schemas.MutatePairResponse(
        seed=_seed_model(out.seed, out.lam),
        eps_independent=report.eps_independent,
        matches_matrix_mutation=True,
        compatible_before=report.compatible_before,
        compatible_after=report.compatible_after,
        text=text,
    )


@app.post("/kernel", response_model=schemas.KernelResponse)
def kernel(req: schemas.SeedRequest) -> schemas.KernelResponse:
    sf = _load(req.seed)
    t = toric_lattice(sf.seed.b_matrix)
    lines = [f"toric weight lattice ker(B): rank {t.rank}"]
    lines += ["  " + " ".join(str(e) for e in v) for v in t.basis.vectors]
    return schemas.KernelResponse(rank=t.rank, basis=[list(v) for v in t.basis.vectors], text="\n".join(lines))


@app.post("/invariant", response_model=schemas.InvariantResponse)
def invariant(req: schemas.PolyRequest) -> schemas.InvariantResponse:
    sf = _load(req.seed)
    poly = parse_poly(req.poly, sf.seed.n)
    t = toric_lattice(sf.seed.b_matrix)
    from ..poisson import is_invariant as _is_invariant

    verdict = _is_invariant(t, poly)
    text = f"{poly.render()} is {'invariant' if verdict else 'NOT invariant'} under the rank-{t.rank} torus"
    return schemas.InvariantResponse(poly=poly.render(), invariant=verdict, torus_rank=t.rank, text=text)


@app.post("/supertoric", response_model=schemas.SupertoricResponse)
def supertoric(req: schemas.SupertoricRequest) -> schemas.SupertoricResponse:
    sf = _load(req.seed)
    ps = PoissonSeed(sf.seed, _require_lambda(sf), allow_skew_violations=True)
    try:
        report = super_toric(ps, max_subset=req.max_subset, early_exit=req.early_exit)
    except ValueError as exc:
        raise RequestError(str(exc)) from exc
    data = report.to_dict()
    return schemas.SupertoricResponse(
        passes=data["passes"],
        first_failure=data["first_failure"],
        checked=data["checked"],
        truncated=data["truncated"],
        failures=data["failures"],
        text=report.render_text(),
    )


@app.post("/tpp-scan", response_model=schemas.ScanResponse)
def tpp_scan(req: schemas.ScanRequest) -> schemas.ScanResponse:
    sf = _load(req.seed)
    try:
        report = scan_tp_candidates(sf.seed, require_defining=req.defining)
    except ValueError as exc:
        raise RequestError(str(exc)) from exc
    return schemas.ScanResponse(**report.to_dict(), text=report.render_text())


@app.post("/member", response_model=schemas.MemberResponse)
def member(req: schemas.MemberRequest) -> schemas.MemberResponse:
    sf = _load(req.seed)
    cand = _parse_members(sf.seed, req.members)
    poly = parse_poly(req.poly, sf.seed.n)
    convention = "every term needs a strictly positive exponent in some ideal variable"
    try:
        verdict = ideal_member(poly, cand)
    except NegativeIdealExponent as exc:
        return schemas.MemberResponse(
            verdict="negative_ideal_exponent",
            member=None,
            convention=convention,
            text=f"not decidable in these coordinates: {exc}",
        )
    label = "member" if verdict else "not_member"
    return schemas.MemberResponse(
        verdict=label,
        member=verdict,
        convention=convention,
        text=f"{poly.render()} is {'in' if verdict else 'NOT in'} the candidate ideal {cand.render(sf.seed.labels)}",
    )


@app.post("/poset", response_model=schemas.PosetResponse)
def poset(req: schemas.ScanRequest) -> schemas.PosetResponse:
    sf = _load(req.seed)
    try:
        report = scan_tp_candidates(sf.seed, require_defining=req.defining)
    except ValueError as exc:
        raise RequestError(str(exc)) from exc
    diagram = inclusion_poset(report)
    return schemas.PosetResponse(**diagram.to_dict(), text=diagram.render_text())


@app.post("/acyclic", response_model=schemas.AcyclicResponse)
def acyclic(req: schemas.SeedRequest) -> schemas.AcyclicResponse:
    sf = _load(req.seed)
    verdict = acyclic_classify(sf.seed, sf.lam)
    return schemas.AcyclicResponse(**verdict.to_dict(), text=verdict.render_text())


@app.post("/corpus/verify/{name}", response_model=schemas.CorpusResponse)
def corpus_verify(name: str) -> schemas.CorpusResponse:
    if name not in CORPUS_VERIFIERS:
        raise RequestError(f"unknown corpus entry {name!r}; choose from {sorted(CORPUS_VERIFIERS)}")
    report = CORPUS_VERIFIERS[name]()
    return schemas.CorpusResponse(**report.to_dict(), text=report.render_text())


@app.get("/corpus/seed/{name}", response_model=schemas.SeedFileModel)
def corpus_seed(name: str) -> schemas.SeedFileModel:
    if name not in CORPUS_SEEDS:
        raise RequestError(f"unknown corpus entry {name!r}; choose from {sorted(CORPUS_SEEDS)}")
    ps = CORPUS_SEEDS[name]()
    return _seed_model(ps.seed, ps.lam)
