"""Torus-invariant Poisson prime candidates.

The scan enumerates subsets S of Y = {x_1..x_n, y_1..y_m, 1} and keeps
those passing a decidable necessary condition: for every mutable i, both
monomials of the exchange binomial P_i land in the monomial ideal of
S's cluster variables exactly when x_i or y_i belongs to S.  Everything
reported here is therefore a *candidate* set, never a verified prime;
full ideal membership in the ambient algebra is undecidable at this
level.  Reports carry a geometric-genericity assumption flag for the
codimension values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .errors import ClusterPoissonError, DimensionMismatch, InvariantViolation
from .intlinalg import IntMatrix, rational_rank
from .laurent import LaurentPoly
from .poisson import lambda_submatrix
from .seed import Seed


class NegativeIdealExponent(ClusterPoissonError, ValueError):
    """A queried Laurent polynomial has a negative exponent in an ideal
    variable, so it is outside the expected image of the algebra."""


class NonTermination(ClusterPoissonError, RuntimeError):
    """The mutation search exceeded its iteration bound, which signals an
    inconsistent membership oracle."""


@dataclass(frozen=True)
class CandidateSet:
    """Subset of Y = {x_1..x_n, y_1..y_m, 1}, all indices 0-based."""

    n: int
    m: int
    x_part: frozenset[int]
    y_part: frozenset[int]
    contains_one: bool = False

    def __post_init__(self) -> None:
        if not all(0 <= j < self.n for j in self.x_part):
            raise IndexError("x_part indices out of range")
        if not all(0 <= i < self.m for i in self.y_part):
            raise IndexError("y_part indices out of range")

    @classmethod
    def make(cls, n: int, m: int, x_part: Sequence[int] = (), y_part: Sequence[int] = (),
             contains_one: bool = False) -> "CandidateSet":
        return cls(n, m, frozenset(x_part), frozenset(y_part), contains_one)

    @property
    def size(self) -> int:
        return len(self.x_part) + len(self.y_part) + (1 if self.contains_one else 0)

    def is_defining(self) -> bool:
        """Whether every mutable cluster variable in S has its one-step
        mutation partner in S as well."""
        return all(i in self.y_part for i in self.x_part if i < self.m)

    def non_defining_indices(self) -> tuple[int, ...]:
        return tuple(sorted(i for i in self.x_part if i < self.m and i not in self.y_part))

    def contains(self, other: "CandidateSet") -> bool:
        return (
            other.x_part <= self.x_part
            and other.y_part <= self.y_part
            and (self.contains_one or not other.contains_one)
        )

    def sort_key(self) -> tuple:
        return (self.size, tuple(sorted(self.x_part)), tuple(sorted(self.y_part)), self.contains_one)

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        names = []
        for j in sorted(self.x_part):
            names.append(labels[j] if labels else f"x{j + 1}")
        names.extend(f"y{i + 1}" for i in sorted(self.y_part))
        if self.contains_one:
            names.append("1")
        return "{" + ", ".join(names) + "}"


@dataclass(frozen=True)
class YSetEntry:
    kind: str  # "x", "y" or "one"
    index: Optional[int]
    label: str
    expansion: LaurentPoly


@dataclass(frozen=True)
class YSet:
    entries: tuple[YSetEntry, ...]

    def expansion_of(self, kind: str, index: Optional[int]) -> LaurentPoly:
        for e in self.entries:
            if e.kind == kind and e.index == index:
                return e.expansion
        raise KeyError((kind, index))


def y_set(seed: Seed) -> YSet:
    """The extended cluster, all one-step mutation variables, and 1."""
    entries = [YSetEntry("x", j, seed.labels[j], seed.expansions[j]) for j in range(seed.n)]
    for i in range(seed.m):
        exch = seed.exchange_binomial(i)
        entries.append(YSetEntry("y", i, f"y{i + 1}", exch.expansion.exact_div(seed.expansions[i])))
    entries.append(YSetEntry("one", None, "1", LaurentPoly.one(seed.n)))
    return YSet(tuple(entries))


def p_in_js(seed: Seed, i: int, s: CandidateSet) -> bool:
    """Monomial-ideal membership of the exchange binomial P_i in J_S.

    J_S is the monomial prime generated by the cluster variables of S in
    the current polynomial ring, so P_i lies in it exactly when both of
    its monomials involve some variable of S.x_part.
    """
    binomial = seed.exchange_binomial(i).binomial
    return binomial.support_hits(s.x_part, mode="every")


def candidate_passes(seed: Seed, s: CandidateSet) -> tuple[bool, Optional[str]]:
    """Apply the scan filter to one candidate, with a failure reason."""
    if s.contains_one:
        return False, "contains the unit marker"
    for i in range(seed.m):
        hit = p_in_js(seed, i, s)
        listed = i in s.x_part or i in s.y_part
        if hit != listed:
            side = "in" if hit else "not in"
            return False, f"exchange binomial {i + 1} is {side} J_S but membership of x/y {i + 1} disagrees"
    return True, None


@dataclass(frozen=True)
class CodimReport:
    """Codimension bookkeeping for a candidate set.

    ``x_count`` is the raw number of cluster variables in S, an upper
    bound for the codimension.  ``codim`` normalizes it by discounting
    every mutable index whose mutation partner is missing: each such
    index is removed from the cluster part by one step of the
    defining-cluster search.  Both values assume geometric genericity.
    """

    x_count: int
    non_defining: tuple[int, ...]
    codim: int
    assumes_geometric_genericity: bool = True

    def to_dict(self) -> dict:
        return {
            "x_count": self.x_count,
            "non_defining": [i + 1 for i in self.non_defining],
            "codim": self.codim,
            "assumes_geometric_genericity": self.assumes_geometric_genericity,
        }


def codim_report(s: CandidateSet) -> CodimReport:
    non_def = s.non_defining_indices()
    return CodimReport(len(s.x_part), non_def, len(s.x_part) - len(non_def))


@dataclass(frozen=True)
class CandidateReport:
    candidate: CandidateSet
    codim: CodimReport
    defining: bool


@dataclass(frozen=True)
class ScanReport:
    n: int
    m: int
    total: int
    passing: tuple[CandidateReport, ...]
    require_defining: bool
    labels: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def failing_count(self) -> int:
        return self.total - len(self.passing)

    def passing_sets(self) -> tuple[CandidateSet, ...]:
        return tuple(r.candidate for r in self.passing)

    def to_dict(self) -> dict:
        return {
            "total_checked": self.total,
            "passing_count": len(self.passing),
            "require_defining": self.require_defining,
            "candidates": [
                {
                    "set": r.candidate.render(self.labels or None),
                    "x_part": [j + 1 for j in sorted(r.candidate.x_part)],
                    "y_part": [i + 1 for i in sorted(r.candidate.y_part)],
                    "defining": r.defining,
                    **r.codim.to_dict(),
                }
                for r in self.passing
            ],
            "notes": list(self.notes),
        }

    def render_text(self) -> str:
        lines = [
            f"checked {self.total} candidate subsets, {len(self.passing)} pass the filter"
            + (" (defining sets only)" if self.require_defining else "")
        ]
        for r in self.passing:
            tag = " defining" if r.defining else ""
            lines.append(f"  {r.candidate.render(self.labels or None)}  codim {r.codim.codim}{tag}")
        lines.append("values are candidate sets under the decidable exchange filter, not verified prime ideals")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def scan_tp_candidates(seed: Seed, require_defining: bool = False) -> ScanReport:
    """Enumerate all 2^(n+m) unit-free subsets of Y and keep the passers.

    With ``require_defining`` the defining-set condition (x_i in S forces
    y_i in S) is enforced on top of the exchange filter.
    """
    n, m = seed.n, seed.m
    if n + m > 24:
        raise ValueError(f"candidate scan enumerates 2^{n + m} subsets; refusing beyond 2^24")
    supports = []
    for i in range(m):
        row = seed.b_matrix.row(i)
        pos = frozenset(j for j, e in enumerate(row) if e > 0)
        neg = frozenset(j for j, e in enumerate(row) if e < 0)
        supports.append((pos, neg))
    passing = []
    total = 0
    subsets = []
    for x_bits in itertools.product((False, True), repeat=n):
        x_part = frozenset(j for j, b in enumerate(x_bits) if b)
        for y_bits in itertools.product((False, True), repeat=m):
            subsets.append((x_part, frozenset(i for i, b in enumerate(y_bits) if b)))
    subsets.sort(key=lambda xy: (len(xy[0]) + len(xy[1]), tuple(sorted(xy[0])), tuple(sorted(xy[1]))))
    for x_part, y_part in subsets:
        total += 1
        ok = True
        for i in range(m):
            pos, neg = supports[i]
            hit = bool(pos & x_part) and bool(neg & x_part)
            if hit != (i in x_part or i in y_part):
                ok = False
                break
        if not ok:
            continue
        cand = CandidateSet(n, m, x_part, y_part)
        defining = cand.is_defining()
        if require_defining and not defining:
            continue
        passing.append(CandidateReport(cand, codim_report(cand), defining))
    return ScanReport(n, m, total, tuple(passing), require_defining, seed.labels)


def _split_support(exps: Sequence[int], x_part: frozenset[int]) -> tuple[bool, bool]:
    """(has positive ideal exponent, has negative ideal exponent)."""
    pos = any(exps[j] > 0 for j in x_part)
    neg = any(exps[j] < 0 for j in x_part)
    return pos, neg


def ideal_member(z: LaurentPoly, s: CandidateSet) -> bool:
    """Membership test in the candidate ideal, in defining-cluster coordinates.

    True iff every term has a strictly positive exponent in some cluster
    variable of S.  A term with a negative exponent in an ideal variable
    raises NegativeIdealExponent: such an element lies outside the image
    of the algebra in these coordinates, so the test does not apply.
    """
    if z.nvars != s.n:
        raise DimensionMismatch("polynomial and candidate set have different variable counts")
    for exps in z.terms:
        pos, neg = _split_support(exps, s.x_part)
        if neg:
            raise NegativeIdealExponent(
                f"term with exponents {exps} has a negative power of an ideal variable"
            )
        if not pos:
            return False
    return True


def nonzero_member(z: LaurentPoly, s: CandidateSet) -> bool:
    """Total membership test: every term touches some ideal variable with
    a nonzero exponent.

    This variant never raises and is the oracle form used by the
    defining-cluster search, whose queries (one-step mutation variables)
    legitimately carry negative powers of ideal variables.
    """
    if z.nvars != s.n:
        raise DimensionMismatch("polynomial and candidate set have different variable counts")
    return all(any(exps[j] != 0 for j in s.x_part) for exps in z.terms)


@dataclass(frozen=True)
class MembershipOracle:
    """Predicate deciding ideal membership of initial-cluster expansions."""

    fn: Callable[[LaurentPoly], bool]
    name: str = ""
    thread_safe: bool = True

    def __call__(self, p: LaurentPoly) -> bool:
        return self.fn(p)

    @classmethod
    def for_candidate(cls, s: CandidateSet) -> "MembershipOracle":
        return cls(lambda p: nonzero_member(p, s), name=f"nonzero-support {s.render()}")

    def spot_check(self, members: Sequence[LaurentPoly], monomials: Sequence[LaurentPoly]) -> None:
        """Sample-level consistency with ideal axioms: closure under
        addition and under multiplication by monomials."""
        for p in members:
            if not self(p):
                raise InvariantViolation(f"oracle rejects a declared member {p.render()}")
        for p, q in itertools.combinations(members, 2):
            if not self(p + q) and not (p + q).is_zero():
                raise InvariantViolation("oracle is not closed under addition")
        for p in members:
            for mono in monomials:
                if not self(p * mono):
                    raise InvariantViolation("oracle is not closed under monomial multiplication")


@dataclass(frozen=True)
class QuotientProjection:
    poly: LaurentPoly
    kept: tuple[int, ...]
    bracket_matrix: IntMatrix


def quotient_project(z: LaurentPoly, s: CandidateSet, lam: IntMatrix) -> QuotientProjection:
    """Project onto the quotient by the candidate ideal.

    Terms with a positive exponent in an ideal variable are dropped; the
    survivors are re-expressed in the complement coordinates, which carry
    the induced bracket given by the corresponding submatrix.
    """
    if z.nvars != s.n:
        raise DimensionMismatch("polynomial and candidate set have different variable counts")
    kept = tuple(j for j in range(s.n) if j not in s.x_part)
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, c in z.terms.items():
        pos, neg = _split_support(exps, s.x_part)
        if neg:
            raise NegativeIdealExponent(
                f"term with exponents {exps} has a negative power of an ideal variable"
            )
        if pos:
            continue
        out[tuple(exps[j] for j in kept)] = c
    return QuotientProjection(LaurentPoly(len(kept), out), kept, lambda_submatrix(lam, kept))


@dataclass(frozen=True)
class DefiningSearchResult:
    seed: Seed
    trace: tuple[int, ...]

    @property
    def steps(self) -> int:
        return len(self.trace)


def is_defining_cluster(seed: Seed, oracle: MembershipOracle) -> bool:
    """Whether the oracle marks y_i whenever it marks x_i, for mutable i."""
    for i in range(seed.m):
        if oracle(seed.expansions[i]):
            exch = seed.exchange_binomial(i)
            if not oracle(exch.expansion.exact_div(seed.expansions[i])):
                return False
    return True


def defining_cluster(seed: Seed, oracle: MembershipOracle) -> DefiningSearchResult:
    """Mutate towards a defining cluster for the oracle's ideal.

    Repeatedly picks the smallest mutable i with x_i in the ideal but y_i
    not, and mutates there.  The search is guaranteed to need at most m
    productive steps; exceeding that bound raises NonTermination, which
    signals an oracle inconsistent with any torus-invariant prime.
    """
    current = seed
    trace: list[int] = []
    for _ in range(seed.m + 1):
        step = None
        for i in range(current.m):
            if oracle(current.expansions[i]):
                exch = current.exchange_binomial(i)
                if not oracle(exch.expansion.exact_div(current.expansions[i])):
                    step = i
                    break
        if step is None:
            return DefiningSearchResult(current, tuple(trace))
        if len(trace) >= seed.m:
            raise NonTermination(f"more than {seed.m} productive steps; oracle is inconsistent")
        current = current.mutate(step)
        trace.append(step)
    raise NonTermination("unreachable")


@dataclass(frozen=True)
class PosetEdge:
    lower: int
    upper: int
    codim_jump: int


@dataclass(frozen=True)
class InclusionPoset:
    nodes: tuple[CandidateSet, ...]
    edges: tuple[PosetEdge, ...]
    cos_violations: tuple[PosetEdge, ...]
    labels: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "nodes": [n.render(self.labels or None) for n in self.nodes],
            "edges": [[e.lower, e.upper] for e in self.edges],
            "cos_violations": [
                {"lower": e.lower, "upper": e.upper, "codim_jump": e.codim_jump} for e in self.cos_violations
            ],
            "cos_saturated": not self.cos_violations,
        }

    def render_text(self) -> str:
        lines = [f"{len(self.nodes)} candidate sets, {len(self.edges)} covering relations"]
        for e in self.edges:
            lines.append(f"  {self.nodes[e.lower].render(self.labels or None)} < {self.nodes[e.upper].render(self.labels or None)}")
        if self.cos_violations:
            lines.append("codimension-one saturation FAILS for:")
            for e in self.cos_violations:
                lines.append(
                    f"  {self.nodes[e.lower].render(self.labels or None)} < "
                    f"{self.nodes[e.upper].render(self.labels or None)} (codim jump {e.codim_jump})"
                )
        else:
            lines.append("every covering relation raises the codimension by exactly 1")
        return "\n".join(lines)


def inclusion_poset(report: ScanReport) -> InclusionPoset:
    """Hasse diagram of the passing candidates under componentwise inclusion.

    Saturation is checked on normalized codimensions: each covering
    relation should raise the codimension by exactly one; violations are
    reported, not fatal.
    """
    nodes = sorted(report.passing_sets(), key=lambda s: s.sort_key())
    less = [[a != b and b.contains(a) for b in nodes] for a in nodes]
    edges = []
    violations = []
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if not less[i][j]:
                continue
            if any(less[i][k] and less[k][j] for k in range(len(nodes))):
                continue
            jump = codim_report(b).codim - codim_report(a).codim
            edge = PosetEdge(i, j, jump)
            edges.append(edge)
            if jump != 1:
                violations.append(edge)
    return InclusionPoset(tuple(nodes), tuple(edges), tuple(violations), report.labels)


@dataclass(frozen=True)
class AcyclicVerdict:
    status: str
    detail: str
    smooth: bool = False
    mu: Optional[int] = None
    generation_sums: tuple[Fraction, ...] = ()

    @property
    def no_nontrivial_tpps(self) -> bool:
        return self.status == "no_nontrivial_tpps"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "detail": self.detail,
            "smooth": self.smooth,
            "mu": self.mu,
            "generation_sums": [str(v) for v in self.generation_sums],
            "generation_sum_formula": "sum_j invB[i][j]*(max(B[i][j],0)+min(B[i][j],0))",
        }

    def render_text(self) -> str:
        if self.no_nontrivial_tpps:
            lines = ["verdict: no non-trivial torus-invariant Poisson primes; the variety is smooth"]
            lines.append("per-row values of sum_j invB[i][j]*(max(B[i][j],0)+min(B[i][j],0)): "
                         + ", ".join(str(v) for v in self.generation_sums))
            if self.mu is not None:
                lines.append(f"coefficient matrix is mu*B^-1 with mu = {self.mu}")
            return "\n".join(lines)
        return f"verdict: inconclusive, failed condition: {self.detail}"


def _fraction_inverse(b: IntMatrix) -> Optional[list[list[Fraction]]]:
    """Exact inverse by Gauss-Jordan over Fraction; None when singular."""
    n = b.rows
    work = [[Fraction(b.at(i, j)) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c]), None)
        if piv is None:
            return None
        work[c], work[piv] = work[piv], work[c]
        inv = Fraction(1) / work[c][c]
        work[c] = [v * inv for v in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                factor = work[i][c]
                work[i] = [v - factor * w for v, w in zip(work[i], work[c])]
    return [row[n:] for row in work]


def acyclic_classify(seed: Seed, lam: Optional[IntMatrix] = None) -> AcyclicVerdict:
    """Classifier for coefficient-free acyclic seeds.

    Checks, in order: no frozen variables; B skew-symmetric with strictly
    positive entries above the diagonal; even rank; B invertible; the
    coefficient matrix equals mu*B^-1 for a nonzero integer mu (synthesized
    minimally when absent); and for every row i the mixed sum
    sum_j invB[i][j]*(max(B[i][j],0)+min(B[i][j],0)) is nonzero.  When all
    hold, no non-trivial torus-invariant Poisson prime exists and the
    underlying variety is smooth.
    """
    b = seed.b_matrix
    n = b.cols
    if seed.m != n:
        return AcyclicVerdict("has_coefficients", f"seed has {n - seed.m} frozen variables")
    if not b.is_skew_symmetric():
        return AcyclicVerdict("not_skew_symmetric", "exchange matrix is not skew-symmetric")
    for i in range(n):
        for j in range(i + 1, n):
            if b.at(i, j) <= 0:
                return AcyclicVerdict(
                    "not_acyclic_order", f"entry ({i + 1},{j + 1}) = {b.at(i, j)} is not positive"
                )
    if n % 2:
        return AcyclicVerdict("odd_rank", f"odd rank {n}")
    if rational_rank(b) < n:
        return AcyclicVerdict("singular_matrix", "exchange matrix is singular")
    inv = _fraction_inverse(b)
    assert inv is not None
    mu: Optional[int] = None
    if lam is not None:
        product = b.mul(lam)
        d = product.at(0, 0)
        if d == 0 or any(product.at(i, j) != (d if i == j else 0) for i in range(n) for j in range(n)):
            return AcyclicVerdict(
                "lambda_not_scalar_inverse", "coefficient matrix is not a nonzero integer multiple of B^-1"
            )
        mu = d
    else:
        mu = lcm(*(v.denominator for row in inv for v in row))
    sums = tuple(sum(inv[i][j] * b.at(i, j) for j in range(n)) for i in range(n))
    for i, v in enumerate(sums):
        if v == 0:
            return AcyclicVerdict(
                "generation_sum_zero",
                f"row {i + 1}: sum_j invB[i][j]*(max(B[i][j],0)+min(B[i][j],0)) = 0",
                generation_sums=sums,
            )
    return AcyclicVerdict(
        "no_nontrivial_tpps", "all conditions hold", smooth=True, mu=mu, generation_sums=sums
    )


def synthesize_inverse_lambda(b: IntMatrix) -> tuple[IntMatrix, int]:
    """Minimal positive mu with mu*B^-1 integral, and that matrix."""
    inv = _fraction_inverse(b)
    if inv is None:
        raise InvariantViolation("exchange matrix is singular")
    mu = lcm(*(v.denominator for row in inv for v in row))
    return IntMatrix.from_rows([[int(v * mu) for v in row] for row in inv]), mu
