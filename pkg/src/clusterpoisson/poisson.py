"""Log-canonical Poisson brackets, compatible pairs, and toric lattices.

A Poisson seed couples a seed with a skew-symmetric integer coefficient
matrix L.  The pair (B, L) is compatible when B*L is zero outside the
diagonal of its principal block and positive on it.  Compatibility
checking is forensic by design: the report carries the full product
matrix and every violating entry, so inconsistent inputs are surfaced
rather than masked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DimensionMismatch, InvariantViolation
from .intlinalg import IntMatrix, LatticeBasis, integer_kernel, rational_rank, sum_rank
from .laurent import LaurentPoly
from .seed import Seed, mutate_matrix


@dataclass(frozen=True)
class PoissonSeed:
    seed: Seed
    lam: IntMatrix
    allow_skew_violations: bool = False

    def __post_init__(self) -> None:
        n = self.seed.n
        if self.lam.rows != n or self.lam.cols != n:
            raise DimensionMismatch(f"coefficient matrix must be {n}x{n}, got {self.lam.rows}x{self.lam.cols}")
        if not self.allow_skew_violations and self.skew_violations:
            raise InvariantViolation(
                f"coefficient matrix is not skew-symmetric at entries {self.skew_violations}"
            )

    @property
    def skew_violations(self) -> tuple[tuple[int, int, int, int], ...]:
        return self.lam.skew_symmetry_violations()

    def mutate(self, k: int, eps: int = 1) -> "PoissonSeed":
        return mutate_pair(self, k, eps)


@dataclass(frozen=True)
class CompatibilityReport:
    """Forensic diagnosis of the product B*L."""

    product: IntMatrix
    diagonal: tuple[int, ...]
    violations: tuple[tuple[int, int, int], ...]
    lam_skew_violations: tuple[tuple[int, int, int, int], ...]
    is_compatible: bool

    def to_dict(self) -> dict:
        return {
            "product": self.product.to_lists(),
            "diagonal": list(self.diagonal),
            "violations": [list(v) for v in self.violations],
            "lambda_skew_violations": [list(v) for v in self.lam_skew_violations],
            "is_compatible": self.is_compatible,
        }

    def render_text(self) -> str:
        lines = ["product B*Lambda:"]
        lines.extend("  " + row for row in str(self.product).splitlines())
        lines.append(f"principal diagonal: {self.diagonal}")
        if self.violations:
            lines.append("off-diagonal violations (row, col, value), 1-based:")
            for i, j, v in self.violations:
                lines.append(f"  ({i + 1}, {j + 1}) = {v}")
        if self.lam_skew_violations:
            lines.append("Lambda skew-symmetry violations (i, j, L_ij, L_ji), 1-based:")
            for i, j, a, b in self.lam_skew_violations:
                lines.append(f"  ({i + 1}, {j + 1}): {a} vs {b}")
        lines.append(f"compatible: {self.is_compatible}")
        return "\n".join(lines)


def check_pair(ps: PoissonSeed) -> CompatibilityReport:
    """Full diagnosis of the compatibility condition for (B, Lambda)."""
    b, lam = ps.seed.b_matrix, ps.lam
    product = b.mul(lam)
    m = b.rows
    diagonal = tuple(product.at(i, i) for i in range(m))
    violations = tuple(
        (i, j, product.at(i, j))
        for i in range(m)
        for j in range(product.cols)
        if i != j and product.at(i, j) != 0
    )
    compatible = not violations and all(d > 0 for d in diagonal) and not ps.skew_violations
    return CompatibilityReport(product, diagonal, violations, ps.skew_violations, compatible)


def bracket(lam: IntMatrix, p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Log-canonical bracket: {x^a, x^b} = (a^T L b) x^(a+b), extended bilinearly.

    The same formula covers inverted variables, since the pairing is
    linear in the (possibly negative) exponent vectors.
    """
    n = lam.rows
    if lam.cols != n or p.nvars != n or q.nvars != n:
        raise DimensionMismatch("bracket operands must match the coefficient matrix size")
    out = LaurentPoly.zero(n)
    lam_t = lam.transpose()
    for ea, ca in p.terms.items():
        row = lam_t.mul_vec(ea)  # row = a^T L
        for eb, cb in q.terms.items():
            pairing = sum(r * e for r, e in zip(row, eb))
            if pairing:
                out = out + LaurentPoly.monomial(n, tuple(a + b for a, b in zip(ea, eb)), ca * cb * pairing)
    return out


def pair_mutation_matrices(b: IntMatrix, k: int, eps: int) -> tuple[IntMatrix, IntMatrix]:
    """The elementary matrices (E, F) attached to direction k and sign eps.

    E is n x n and differs from the identity only in column k; F is m x m
    and differs only in row k.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    m, n = b.rows, b.cols
    if not 0 <= k < m:
        raise IndexError(f"direction {k} out of range (0..{m - 1})")
    e_rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        e_rows[i][k] = -1 if i == k else max(0, -eps * b.at(k, i))
    f_rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for j in range(m):
        f_rows[k][j] = -1 if j == k else max(0, eps * b.at(j, k))
    return IntMatrix.from_rows(e_rows), IntMatrix.from_rows(f_rows)


@dataclass(frozen=True)
class PairMutationReport:
    pair: PoissonSeed
    eps_independent: bool
    compatible_before: bool
    compatible_after: bool


def mutate_pair_report(ps: PoissonSeed, k: int, eps: int = 1) -> PairMutationReport:
    """Mutate a Poisson seed in direction k via the elementary matrices.

    B_k = F^T B E^T and L_k = E^T L E.  The new exchange matrix must agree
    with plain matrix mutation.  Sign-independence of L_k and preservation
    of compatibility are guaranteed for compatible pairs, so their failure
    on a compatible input raises; on an incompatible input they are
    recorded in the report for the caller to surface.
    """
    b = ps.seed.b_matrix
    e, f = pair_mutation_matrices(b, k, eps)
    new_b = f.transpose().mul(b).mul(e.transpose())
    new_lam = e.transpose().mul(ps.lam).mul(e)
    if new_b != mutate_matrix(b, k):
        raise InvariantViolation("pair mutation disagrees with matrix mutation")
    e2, _ = pair_mutation_matrices(b, k, -eps)
    eps_independent = e2.transpose().mul(ps.lam).mul(e2) == new_lam
    compatible_before = check_pair(ps).is_compatible
    out = PoissonSeed(ps.seed.mutate(k), new_lam, allow_skew_violations=ps.allow_skew_violations)
    compatible_after = check_pair(out).is_compatible
    if compatible_before and not eps_independent:
        raise InvariantViolation("mutated coefficient matrix depends on the sign choice")
    if compatible_before and not compatible_after:
        raise InvariantViolation("pair mutation broke compatibility")
    return PairMutationReport(out, eps_independent, compatible_before, compatible_after)


def mutate_pair(ps: PoissonSeed, k: int, eps: int = 1) -> PoissonSeed:
    """Mutated Poisson seed; see mutate_pair_report for the self-checks."""
    return mutate_pair_report(ps, k, eps).pair


@dataclass(frozen=True)
class ToricLattice:
    """Weight lattice of global torus actions: T = ker(B)."""

    basis: LatticeBasis

    @property
    def rank(self) -> int:
        return self.basis.rank


def toric_lattice(b: IntMatrix) -> ToricLattice:
    return ToricLattice(integer_kernel(b))


def is_invariant(t: ToricLattice, p: LaurentPoly) -> bool:
    """Whether p is fixed by every torus action in T.

    A Laurent polynomial is invariant iff each of its exponent vectors
    pairs to zero with every weight vector.
    """
    if p.nvars != t.basis.ambient_dim:
        raise DimensionMismatch("polynomial and lattice live in different ambient dimensions")
    return all(
        sum(w * e for w, e in zip(v, exps)) == 0 for v in t.basis.vectors for exps in p.terms
    )


def quotient_torus_rank(t: ToricLattice, removed: Sequence[int]) -> int:
    """Rank of the image of T under deleting the listed coordinates."""
    removed_set = set(removed)
    for j in removed_set:
        if not 0 <= j < t.basis.ambient_dim:
            raise IndexError(f"coordinate {j} out of range")
    keep = [j for j in range(t.basis.ambient_dim) if j not in removed_set]
    if not keep:
        return 0
    return t.basis.project(keep).rank


def radical(lam: IntMatrix) -> LatticeBasis:
    """Integer radical of the bilinear form: {u : u^T L = 0}.

    For a skew-symmetric matrix this equals the kernel of L.
    """
    return integer_kernel(lam.transpose())


def radical_torus_overlap_rank(b: IntMatrix, lam: IntMatrix) -> int:
    """Rank of the rational intersection of rad(Lambda) with the orthogonal
    complement of T = ker(B).  Zero for compatible pairs.
    """
    rad = radical(lam)
    t = integer_kernel(b)
    if t.rank == 0:
        t_perp = LatticeBasis.full(b.cols)
    else:
        t_perp = integer_kernel(IntMatrix.from_rows(t.vectors))
    return rad.rank + t_perp.rank - sum_rank(rad, t_perp)


@dataclass(frozen=True)
class SubsetEntry:
    subset: tuple[int, ...]
    rank: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.rank == self.expected


@dataclass(frozen=True)
class SupertoricReport:
    ambient: int
    passes: bool
    first_failure: Optional[tuple[int, ...]]
    entries: tuple[SubsetEntry, ...]
    max_subset: Optional[int]
    truncated: bool

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient,
            "passes": self.passes,
            "first_failure": [j + 1 for j in self.first_failure] if self.first_failure is not None else None,
            "checked": len(self.entries),
            "max_subset": self.max_subset,
            "truncated": self.truncated,
            "failures": [
                {"subset": [j + 1 for j in e.subset], "rank": e.rank, "expected": e.expected}
                for e in self.entries
                if not e.ok
            ],
        }

    def render_text(self) -> str:
        lines = [f"subsets checked: {len(self.entries)}" + (" (size-capped)" if self.truncated else "")]
        bad = [e for e in self.entries if not e.ok]
        if bad:
            lines.append(f"FAILED for {len(bad)} subsets; first failure (1-based): "
                         f"{tuple(j + 1 for j in bad[0].subset)} rank {bad[0].rank} != {bad[0].expected}")
        else:
            lines.append("rank condition holds for every checked subset")
        return "\n".join(lines)


def super_toric(ps: PoissonSeed, max_subset: Optional[int] = None, early_exit: bool = False) -> SupertoricReport:
    """Check rank(T_i + Im(L_i)) = n - |i| over coordinate subsets i.

    Subsets are visited in (size, lexicographic) order so the first
    failure is deterministic.  The scan is exponential in n: for n > 12 a
    subset-size cap must be given explicitly.
    """
    n = ps.seed.n
    if max_subset is None and n > 12:
        raise ValueError("full subset scan is exponential; pass max_subset for n > 12")
    cap = n if max_subset is None else min(max_subset, n)
    t = integer_kernel(ps.seed.b_matrix)
    entries: list[SubsetEntry] = []
    first_failure: Optional[tuple[int, ...]] = None
    for size in range(cap + 1):
        for subset in itertools.combinations(range(n), size):
            keep = [j for j in range(n) if j not in subset]
            expected = len(keep)
            if expected == 0:
                rank = 0
            else:
                projected = [[v[j] for j in keep] for v in t.vectors]
                lam_cols = ps.lam.submatrix(keep, keep).transpose().entries
                rank = rational_rank_rows(projected + [list(c) for c in lam_cols], expected)
            entry = SubsetEntry(subset, rank, expected)
            entries.append(entry)
            if not entry.ok and first_failure is None:
                first_failure = subset
                if early_exit:
                    return SupertoricReport(n, False, first_failure, tuple(entries), max_subset, cap < n)
    return SupertoricReport(n, first_failure is None, first_failure, tuple(entries), max_subset, cap < n)


def rational_rank_rows(rows: Sequence[Sequence[int]], ncols: int) -> int:
    if not rows:
        return 0
    return rational_rank(IntMatrix.from_rows(rows)) if any(any(r) for r in rows) else 0


def lambda_submatrix(lam: IntMatrix, keep: Sequence[int]) -> IntMatrix:
    """Coefficient matrix of the induced bracket on the kept coordinates."""
    return lam.submatrix(keep, keep)


def bracket_jacobiator(lam: IntMatrix, p: LaurentPoly, q: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """{p,{q,r}} + {r,{p,q}} + {q,{r,p}}; identically zero for log-canonical brackets."""
    return (
        bracket(lam, p, bracket(lam, q, r))
        + bracket(lam, r, bracket(lam, p, q))
        + bracket(lam, q, bracket(lam, r, p))
    )
