"""Seeds, exchange binomials, matrix and cluster mutation, exchange-graph search.

A seed is an extended cluster of n variables of which the first m are
mutable, an m x n exchange matrix whose principal m x m block is
skew-symmetrizable, and for every current variable its Laurent expansion
in the initial cluster.  Expansions identify cluster variables uniquely,
which gives decidable seed equality without isomorphism heuristics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvariantViolation
from .intlinalg import IntMatrix, skew_symmetrizer
from .laurent import LaurentPoly


def principal_part(b: IntMatrix) -> IntMatrix:
    m = b.rows
    return b.submatrix(range(m), range(m))


def check_exchange_matrix(b: IntMatrix) -> None:
    """Validate shape and skew-symmetrizability of the principal block."""
    if b.rows > b.cols:
        raise InvariantViolation(f"exchange matrix has more rows ({b.rows}) than columns ({b.cols})")
    if skew_symmetrizer(principal_part(b)) is None:
        raise InvariantViolation("principal block of the exchange matrix is not skew-symmetrizable")


def mutate_matrix(b: IntMatrix, k: int) -> IntMatrix:
    """Matrix mutation in direction k (0-based, k < rows).

    Row and column k flip sign; every other entry picks up
    (|b_ik| b_kj + b_ik |b_kj|) / 2.  The result is checked to still have
    a skew-symmetrizable principal block.
    """
    m, n = b.rows, b.cols
    if not 0 <= k < m:
        raise IndexError(f"mutation direction {k} out of range (0..{m - 1})")
    new_rows = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b.at(i, j))
            else:
                row.append(b.at(i, j) + (abs(b.at(i, k)) * b.at(k, j) + b.at(i, k) * abs(b.at(k, j))) // 2)
        new_rows.append(row)
    out = IntMatrix.from_rows(new_rows)
    if skew_symmetrizer(principal_part(out)) is None:
        raise InvariantViolation(f"mutation at {k} broke skew-symmetrizability")
    return out


@dataclass(frozen=True)
class ExchangeBinomial:
    """The two-monomial exchange value for one mutable direction.

    ``binomial`` is written in the seed's own variables; ``expansion`` is
    the same value pushed down to initial-cluster coordinates.
    """

    direction: int
    binomial: LaurentPoly
    expansion: LaurentPoly


@dataclass(frozen=True)
class Seed:
    labels: tuple[str, ...]
    b_matrix: IntMatrix
    expansions: tuple[LaurentPoly, ...]
    history: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        check_exchange_matrix(self.b_matrix)
        if len(self.labels) != self.n or len(self.expansions) != self.n:
            raise InvariantViolation("labels/expansions length must equal the extended cluster size")
        for p in self.expansions:
            if p.nvars != self.n:
                raise InvariantViolation("expansions must live in the initial-cluster Laurent ring")
            if not p.is_integral():
                raise InvariantViolation(f"non-integer coefficients in expansion {p.render()}")

    @classmethod
    def initial(cls, b: IntMatrix, labels: Optional[Sequence[str]] = None) -> "Seed":
        n = b.cols
        if labels is None:
            labels = tuple(f"x{j + 1}" for j in range(n))
        return cls(tuple(labels), b, tuple(LaurentPoly.variable(n, j) for j in range(n)))

    @property
    def n(self) -> int:
        return self.b_matrix.cols

    @property
    def m(self) -> int:
        return self.b_matrix.rows

    def is_frozen(self, j: int) -> bool:
        return j >= self.m

    def exchange_binomial(self, i: int) -> ExchangeBinomial:
        """Exchange value in direction i: one monomial per sign of row i."""
        if not 0 <= i < self.m:
            raise IndexError(f"direction {i} out of range (0..{self.m - 1})")
        row = self.b_matrix.row(i)
        pos = tuple(max(e, 0) for e in row)
        neg = tuple(max(-e, 0) for e in row)
        binomial = LaurentPoly.monomial(self.n, pos) + LaurentPoly.monomial(self.n, neg)
        expansion = LaurentPoly.one(self.n)
        for j, e in enumerate(pos):
            if e:
                expansion = expansion * self.expansions[j] ** e
        second = LaurentPoly.one(self.n)
        for j, e in enumerate(neg):
            if e:
                second = second * self.expansions[j] ** e
        return ExchangeBinomial(i, binomial, expansion + second)

    def mutate(self, k: int) -> "Seed":
        """Replace variable k by the exchange quotient and mutate the matrix.

        The new expansion is computed by exact division in initial-cluster
        coordinates; integer coefficients and non-negative exponents of
        frozen variables are enforced as runtime checks.
        """
        exch = self.exchange_binomial(k)
        new_expansion = exch.expansion.exact_div(self.expansions[k])
        if not new_expansion.is_integral():
            raise InvariantViolation(
                f"mutation at {k} produced non-integer coefficients: {new_expansion.render()}"
            )
        mins = new_expansion.min_exponents()
        if any(mins[j] < 0 for j in range(self.m, self.n)):
            raise InvariantViolation(f"mutation at {k} inverted a frozen variable: {new_expansion.render()}")
        expansions = list(self.expansions)
        expansions[k] = new_expansion
        labels = list(self.labels)
        labels[k] = labels[k][:-1] if labels[k].endswith("'") else labels[k] + "'"
        return Seed(tuple(labels), mutate_matrix(self.b_matrix, k), tuple(expansions), self.history + (k,))

    def mutate_sequence(self, directions: Iterable[int]) -> "Seed":
        out = self
        for k in directions:
            out = out.mutate(k)
        return out

    def canonical_key(self) -> tuple:
        """Equality key up to permutation of the mutable variables.

        Mutable slots are sorted by their expansion; the exchange matrix
        has its rows and mutable columns permuted accordingly.
        """
        order = sorted(range(self.m), key=lambda i: self.expansions[i].key())
        b = self.b_matrix
        permuted = tuple(
            tuple(b.at(order[i], order[j]) for j in range(self.m)) + tuple(b.at(order[i], j) for j in range(self.m, self.n))
            for i in range(self.m)
        )
        return (
            tuple(self.expansions[i].key() for i in order),
            tuple(p.key() for p in self.expansions[self.m:]),
            permuted,
        )


@dataclass(frozen=True)
class ExploreResult:
    seeds: tuple[Seed, ...]
    variables: tuple[LaurentPoly, ...]
    truncated: bool = False
    depth_reached: int = 0

    @property
    def cluster_count(self) -> int:
        return len(self.seeds)


def explore(seed: Seed, depth: Optional[int] = None, max_seeds: int = 10_000) -> ExploreResult:
    """Breadth-first search of the mutation graph up to ``depth``.

    Seeds are deduplicated by canonical form.  ``depth=None`` explores to
    closure; generic seeds have infinite mutation classes, so the search
    stops and reports truncation once ``max_seeds`` distinct seeds are
    found.
    """
    if depth is not None and depth < 0:
        raise ValueError("depth must be >= 0")
    seen = {seed.canonical_key()}
    found = [seed]
    frontier = deque([(seed, 0)])
    truncated = False
    depth_reached = 0
    while frontier:
        current, d = frontier.popleft()
        depth_reached = max(depth_reached, d)
        if depth is not None and d >= depth:
            continue
        for k in range(current.m):
            nxt = current.mutate(k)
            key = nxt.canonical_key()
            if key in seen:
                continue
            if len(found) >= max_seeds:
                truncated = True
                continue
            seen.add(key)
            found.append(nxt)
            frontier.append((nxt, d + 1))
    variables: dict[tuple, LaurentPoly] = {}
    for s in found:
        for i in range(s.m):
            variables.setdefault(s.expansions[i].key(), s.expansions[i])
    ordered = tuple(variables[k] for k in sorted(variables))
    return ExploreResult(tuple(found), ordered, truncated, depth_reached)
