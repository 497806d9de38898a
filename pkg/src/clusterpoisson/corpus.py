"""Built-in example seeds with independent cross-verification.

The Grassmannian G(2,5) seed ships with a second, independent computation
path: its cluster variables are realized as 2x2 minors of a generic 2x5
matrix, and the Poisson data is re-derived from the standard bracket on
matrix entries.  Running both routes catches transcription and rule
errors on either side.

The shipped 7x7 coefficient matrix is reproduced verbatim from its
source and is knowingly inconsistent: entry (2,6) = -2 breaks
skew-symmetry against (6,2) = 1, the minor-algebra bracket gives -1
there, and the compatibility product picks up a stray -1 at (1,6).  The
verification report asserts these findings as regressions instead of
silently repairing the matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .intlinalg import IntMatrix, LatticeBasis
from .laurent import LaurentPoly
from .poisson import PoissonSeed, bracket, check_pair, toric_lattice
from .seed import Seed, explore
from .tpp import CandidateSet, acyclic_classify, codim_report, scan_tp_candidates, synthesize_inverse_lambda

# ---------------------------------------------------------------------------
# Generic 2x5 matrix algebra: entries a_{ri} with r in {1,2}, i in 1..5,
# mapped to polynomial variables 0..9 (row-major).

NUM_MATRIX_VARS = 10


def matrix_entry(r: int, i: int) -> LaurentPoly:
    if r not in (1, 2) or not 1 <= i <= 5:
        raise IndexError(f"no matrix entry ({r},{i})")
    return LaurentPoly.variable(NUM_MATRIX_VARS, (r - 1) * 5 + (i - 1))


def minor(i: int, j: int) -> LaurentPoly:
    """The 2x2 minor on columns i < j of the generic 2x5 matrix."""
    if not 1 <= i < j <= 5:
        raise IndexError(f"minor indices must satisfy 1 <= i < j <= 5, got ({i},{j})")
    return matrix_entry(1, i) * matrix_entry(2, j) - matrix_entry(2, i) * matrix_entry(1, j)


ALL_MINOR_INDICES = tuple((i, j) for i in range(1, 6) for j in range(i + 1, 6))


def identify_minor(p: LaurentPoly) -> Optional[tuple[int, int]]:
    """Match a 10-variable polynomial against the ten minors."""
    for i, j in ALL_MINOR_INDICES:
        if p == minor(i, j):
            return (i, j)
    return None


def standard_bracket(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Standard Poisson bracket on 2x5 matrix entries, extended by Leibniz.

    On generators: {a_ri, a_sj} = (sgn(r-s) + sgn(i-j)) * a_rj * a_si.
    """
    if p.nvars != NUM_MATRIX_VARS or q.nvars != NUM_MATRIX_VARS:
        raise ValueError("standard_bracket operates on 2x5 matrix-entry polynomials")
    out = LaurentPoly.zero(NUM_MATRIX_VARS)
    gens = [(r, i) for r in (1, 2) for i in range(1, 6)]
    for r, i in gens:
        dp = p.derivative((r - 1) * 5 + (i - 1))
        if dp.is_zero():
            continue
        for s, j in gens:
            dq = q.derivative((s - 1) * 5 + (j - 1))
            if dq.is_zero():
                continue
            sign = (r > s) - (r < s) + (i > j) - (i < j)
            if sign:
                out = out + dp * dq * matrix_entry(r, j) * matrix_entry(s, i) * sign
    return out


# ---------------------------------------------------------------------------
# The G(2,5) seed: x1 = d13, x2 = d14 mutable; d12, d23, d34, d45, d15 frozen.

G25_LABELS = ("d13", "d14", "d12", "d23", "d34", "d45", "d15")
G25_MINOR_ORDER = ((1, 3), (1, 4), (1, 2), (2, 3), (3, 4), (4, 5), (1, 5))

G25_B = IntMatrix.from_rows([
    [0, 1, -1, 1, -1, 0, 0],
    [-1, 0, 0, 0, 1, -1, 1],
])

# Verbatim coefficient matrix; see the module docstring for its known defect.
G25_LAMBDA = IntMatrix.from_rows([
    [0, -1, 1, -1, -1, -2, -1],
    [1, 0, 1, 0, -1, -2, -1],
    [-1, -1, 0, -1, -2, -2, -1],
    [1, 0, 1, 0, -1, -2, 0],
    [1, 1, 2, 1, 0, -1, 0],
    [2, 1, 2, 2, 1, 0, 1],
    [1, 1, 1, 0, 0, -1, 0],
])

G25_WEIGHTS = (
    (1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 0, 0, 0, 1),
    (0, 0, 1, 1, 0, 0, 0),
    (1, 0, 0, 1, 1, 0, 0),
    (0, 1, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 1, 1),
)


def g25_seed() -> PoissonSeed:
    return PoissonSeed(Seed.initial(G25_B, G25_LABELS), G25_LAMBDA, allow_skew_violations=True)


def g25_minor_values() -> tuple[LaurentPoly, ...]:
    """The initial cluster variables as minor polynomials."""
    return tuple(minor(i, j) for i, j in G25_MINOR_ORDER)


def expansion_as_minors(p: LaurentPoly) -> LaurentPoly:
    """Evaluate an initial-cluster Laurent expansion at the minors."""
    return p.eval_at(g25_minor_values())


# ---------------------------------------------------------------------------
# Singular hypersurface: x1*x1' = x2^2 + x3^2 with log-canonical brackets
# {x1,x2} = x1 x2, {x1,x3} = -x1 x3, {x2,x3} = 0.

SINGULAR_B = IntMatrix.from_rows([[0, 2, -2]])
SINGULAR_LAMBDA = IntMatrix.from_rows([
    [0, 1, -1],
    [-1, 0, 0],
    [1, 0, 0],
])


def singular_seed() -> PoissonSeed:
    return PoissonSeed(Seed.initial(SINGULAR_B, ("x1", "x2", "x3")), SINGULAR_LAMBDA)


def rank2_acyclic_seed(b: int) -> PoissonSeed:
    """Coefficient-free rank-2 seed B = [[0,b],[-b,0]] with minimal mu*B^-1."""
    if b < 1:
        raise ValueError("b must be a positive integer")
    matrix = IntMatrix.from_rows([[0, b], [-b, 0]])
    lam, _ = synthesize_inverse_lambda(matrix)
    return PoissonSeed(Seed.initial(matrix), lam)


# ---------------------------------------------------------------------------
# Verification reports

@dataclass(frozen=True)
class CorpusItem:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class CorpusReport:
    name: str
    items: tuple[CorpusItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "items": [{"name": i.name, "ok": i.ok, "detail": i.detail} for i in self.items],
            "mismatches": [i.name for i in self.items if not i.ok],
        }

    def render_text(self) -> str:
        lines = [f"corpus verification: {self.name}"]
        for item in self.items:
            lines.append(f"  [{'ok' if item.ok else 'MISMATCH'}] {item.name}: {item.detail}")
        lines.append("result: " + ("all checks passed" if self.ok else "mismatches found"))
        return "\n".join(lines)


def verify_g25() -> CorpusReport:
    items: list[CorpusItem] = []
    ps = g25_seed()
    seed = ps.seed
    minors = g25_minor_values()

    def add(name: str, ok: bool, detail: str) -> None:
        items.append(CorpusItem(name, ok, detail))

    # Plücker identities on all five column quadruples.
    pluecker_ok = all(
        (minor(i, k) * minor(j, l) - minor(i, j) * minor(k, l) - minor(i, l) * minor(j, k)).is_zero()
        for i, j, k, l in itertools.combinations(range(1, 6), 4)
    )
    add("pluecker-identities", pluecker_ok, "d_ik*d_jl = d_ij*d_kl + d_il*d_jk for all 5 quadruples")

    # Exchange binomials in seed coordinates.
    p1 = seed.exchange_binomial(0).binomial
    p2 = seed.exchange_binomial(1).binomial
    want1 = LaurentPoly.monomial(7, (0, 1, 0, 1, 0, 0, 0)) + LaurentPoly.monomial(7, (0, 0, 1, 0, 1, 0, 0))
    want2 = LaurentPoly.monomial(7, (0, 0, 0, 0, 1, 0, 1)) + LaurentPoly.monomial(7, (1, 0, 0, 0, 0, 1, 0))
    add("exchange-binomials", p1 == want1 and p2 == want2, "P1 = x2*x4 + x3*x5 and P2 = x5*x7 + x1*x6")

    # Exchange relations against the minor algebra: the relations must be
    # Plücker identities and the new variables must be d24 and d35.
    y1 = expansion_as_minors(seed.mutate(0).expansions[0])
    y2 = expansion_as_minors(seed.mutate(1).expansions[1])
    add("mutation-at-1-gives-d24", y1 == minor(2, 4), "first exchange relation solves to the minor d24")
    add("mutation-at-2-gives-d35", y2 == minor(3, 5), "second exchange relation solves to the minor d35")

    # Toric weights.
    t = toric_lattice(seed.b_matrix)
    in_kernel = all(t.basis.contains(w) for w in G25_WEIGHTS)
    span = LatticeBasis.from_vectors(7, G25_WEIGHTS)
    add(
        "torus-weights",
        in_kernel and span.rank == 5 and t.rank == 5 and span == t.basis,
        "all six weight vectors lie in ker(B) and span the full rank-5 kernel lattice",
    )

    # Log-canonical coefficients of the standard bracket versus the shipped
    # matrix.  The single expected mismatch is the documented (2,6) defect.
    mismatches = []
    for i in range(7):
        for j in range(i + 1, 7):
            br = standard_bracket(minors[i], minors[j])
            coeff = br.exact_div(minors[i] * minors[j]).constant_value()
            if coeff is None:
                mismatches.append(((i + 1, j + 1), "not log-canonical"))
            elif coeff != ps.lam.at(i, j):
                mismatches.append(((i + 1, j + 1), int(coeff), ps.lam.at(i, j)))
    add(
        "log-canonical-vs-shipped-matrix",
        mismatches == [((2, 6), -1, -2)],
        f"sole expected mismatch at (2,6): bracket gives -1, shipped matrix has -2; found {mismatches}",
    )
    add(
        "shipped-matrix-skew-defect",
        ps.skew_violations == ((1, 5, -2, 1),),
        "skew-symmetry fails exactly at (2,6)/(6,2) with values -2 vs 1",
    )

    # Compatibility forensics on the verbatim pair.
    report = check_pair(ps)
    add(
        "compatibility-forensics",
        report.product.row(1) == (0, 2, 0, 0, 0, 0, 0)
        and report.diagonal == (2, 2)
        and report.violations == ((0, 5, -1),)
        and not report.is_compatible,
        "B*Lambda row 2 = (0,2,0,0,0,0,0); sole off-diagonal violation (1,6) = -1 beside diagonal (2,2)",
    )

    # Finite type: five clusters, five mutable variables, all of them minors.
    result = explore(seed)
    found = sorted(identify_minor(expansion_as_minors(v)) for v in result.variables)
    add(
        "finite-type-five-clusters",
        result.cluster_count == 5
        and not result.truncated
        and found == [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)],
        f"exchange graph closes at {result.cluster_count} clusters; mutable variables are minors {found}",
    )
    integral = all(p.is_integral() for s in result.seeds for p in s.expansions)
    add("laurent-integrality", integral, "every expansion in every reached seed has integer coefficients")

    # Candidate scan table.
    scan = scan_tp_candidates(seed)
    passing = set(scan.passing_sets())

    def cand(x=(), y=()):
        return CandidateSet.make(7, 2, x, y)

    singles = [s for s in passing if s.size == 1]
    s1, s2, s3 = cand((0, 2, 3)), cand((2, 3), (0,)), cand((0, 2, 3), (0,))
    add(
        "scan-coefficient-singletons",
        sorted(s.sort_key() for s in singles) == [cand((j,)).sort_key() for j in (2, 3, 4, 5, 6)],
        "exactly the five frozen-variable singletons pass at size 1",
    )
    add(
        "scan-pair-fails-triples-pass",
        cand((2, 3)) not in passing
        and s1 in passing
        and s2 in passing
        and s3 in passing,
        "{d12,d23} fails; {d12,d23,d13}, {d12,d23,y1}, {d12,d23,d13,y1} pass",
    )
    add(
        "scan-codimensions",
        (codim_report(s1).codim, codim_report(s2).codim, codim_report(s3).codim) == (2, 2, 3),
        "normalized codimensions 2, 2, 3 for the three passing supersets",
    )

    # Two independent bracket routes: {x1, y1} via the coefficient matrix
    # against the standard bracket of the corresponding minors.
    y1_exp = seed.mutate(0).expansions[0]
    via_lambda = expansion_as_minors(bracket(ps.lam, LaurentPoly.variable(7, 0), y1_exp))
    via_minors = standard_bracket(minor(1, 3), minor(2, 4))
    add(
        "bracket-two-routes",
        via_lambda == via_minors and via_minors == minor(1, 4) * minor(2, 3) * (-2),
        "{d13, d24} = -2*d14*d23 along both computation routes",
    )

    return CorpusReport("g25", tuple(items))


def verify_singular() -> CorpusReport:
    items: list[CorpusItem] = []
    ps = singular_seed()
    seed = ps.seed

    def add(name: str, ok: bool, detail: str) -> None:
        items.append(CorpusItem(name, ok, detail))

    p1 = seed.exchange_binomial(0).binomial
    want = LaurentPoly.monomial(3, (0, 2, 0)) + LaurentPoly.monomial(3, (0, 0, 2))
    add("exchange-binomial", p1 == want, "P1 = x2^2 + x3^2")

    report = check_pair(ps)
    add(
        "anti-compatible-pair",
        report.product.row(0) == (-4, 0, 0) and report.diagonal == (-4,) and not report.is_compatible,
        "B*Lambda = (-4, 0, 0): diagonal entry negative, reported not corrected",
    )

    scan = scan_tp_candidates(seed)
    passing = set(scan.passing_sets())

    def cand(x=(), y=()):
        return CandidateSet.make(3, 1, x, y)

    expected = {
        cand(),
        cand((1,)),
        cand((2,)),
        cand((0, 1, 2)),
        cand((1, 2), (0,)),
        cand((0, 1, 2), (0,)),
    }
    add(
        "scan-prime-sublist",
        passing == expected,
        "passers are {}, {x2}, {x3}, {x1,x2,x3}, {x1',x2,x3}, {x1,x1',x2,x3}",
    )
    add(
        "generator-pair-excluded",
        cand((1, 2)) not in passing,
        "{x2,x3} appears in the source ideal list but fails here: both monomials of "
        "x2^2+x3^2 land in it while neither x1 nor x1' does, and its quotient has zero "
        "divisors, so it is a torus-invariant Poisson ideal that is not prime",
    )
    return CorpusReport("singular", tuple(items))


def verify_rank2(values: tuple[int, ...] = (1, 2, 3)) -> CorpusReport:
    items: list[CorpusItem] = []

    def add(name: str, ok: bool, detail: str) -> None:
        items.append(CorpusItem(name, ok, detail))

    for b in values:
        ps = rank2_acyclic_seed(b)
        add(
            f"b{b}-inverse-coefficients",
            ps.lam == IntMatrix.from_rows([[0, -1], [1, 0]]),
            "minimal integral multiple of B^-1 is [[0,-1],[1,0]]",
        )
        verdict = acyclic_classify(ps.seed, ps.lam)
        add(
            f"b{b}-classifier",
            verdict.no_nontrivial_tpps and verdict.smooth,
            "no non-trivial torus-invariant Poisson primes; smooth",
        )
        add(
            f"b{b}-trivial-torus",
            toric_lattice(ps.seed.b_matrix).rank == 0,
            "ker(B) is trivial, so there are no global toric actions",
        )
        add(
            f"b{b}-compatible",
            check_pair(ps).is_compatible and check_pair(ps).diagonal == (b, b),
            f"B*Lambda = diag({b},{b})",
        )
    return CorpusReport("rank2", tuple(items))


CORPUS_VERIFIERS = {
    "g25": verify_g25,
    "singular": verify_singular,
    "rank2": verify_rank2,
}

CORPUS_SEEDS = {
    "g25": g25_seed,
    "singular": singular_seed,
    "rank2": lambda: rank2_acyclic_seed(1),
}
