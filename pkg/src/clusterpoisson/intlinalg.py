"""Exact integer linear algebra.

Everything here works on arbitrary-precision Python integers; there is no
floating point anywhere.  Ranks come from fraction-free (Bareiss-style)
elimination, integer kernels from a Hermite-form unimodular reduction, so
kernel bases are saturated (they generate the full group of integer
solutions, not a finite-index subgroup) and canonical (row-style Hermite
form with positive pivots), which makes lattice equality decidable by
plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix, stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            for e in row:
                if not isinstance(e, int):
                    raise TypeError(f"non-integer entry {e!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(e) for e in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def at(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries)
        )

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def skew_symmetry_violations(self) -> tuple[tuple[int, int, int, int], ...]:
        """All pairs (i, j, a_ij, a_ji) with i <= j where a_ij != -a_ji."""
        if not self.is_square():
            raise DimensionMismatch("skew-symmetry is only defined for square matrices")
        out = []
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self.entries[i][j] != -self.entries[j][i]:
                    out.append((i, j, self.entries[i][j], self.entries[j][i]))
        return tuple(out)

    def is_skew_symmetric(self) -> bool:
        return self.is_square() and not self.skew_symmetry_violations()

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __str__(self) -> str:
        widths = [max(len(str(self.entries[i][j])) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join(
            "[ " + "  ".join(str(e).rjust(w) for e, w in zip(row, widths)) + " ]" for row in self.entries
        )


def _rank_of_rows(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rational rank by fraction-free Bareiss elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    nrows = len(work)
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(rank + 1, nrows):
            for j in range(c + 1, ncols):
                # Bareiss step: division by the previous pivot is exact
                work[i][j] = (work[rank][c] * work[i][j] - work[i][c] * work[rank][j]) // prev
            work[i][c] = 0
        prev = work[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


def rational_rank(m: IntMatrix) -> int:
    """Rank of the matrix over the rationals."""
    return _rank_of_rows(m.entries, m.cols)


def hermite_form_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice generated by ``rows``.

    Pivots are positive, entries above a pivot are reduced into
    [0, pivot), zero rows are dropped.  Two generating sets span the same
    lattice iff they produce identical output.
    """
    work, _ = _hermite_with_transform(rows, ncols)
    return [r for r in work if any(r)]


def _hermite_with_transform(
    rows: Sequence[Sequence[int]], ncols: int
) -> tuple[list[list[int]], list[list[int]]]:
    """Hermite reduction returning (H, U) with U unimodular and U*A = H."""
    work = [list(r) for r in rows]
    n = len(work)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op_sub(i: int, k: int, q: int) -> None:
        if q == 0:
            return
        work[i] = [a - q * b for a, b in zip(work[i], work[k])]
        u[i] = [a - q * b for a, b in zip(u[i], u[k])]

    rank = 0
    for c in range(ncols):
        # Euclidean sweep: leave a single nonzero in column c at row `rank`
        while True:
            piv = None
            for i in range(rank, n):
                if work[i][c] != 0 and (piv is None or abs(work[i][c]) < abs(work[piv][c])):
                    piv = i
            if piv is None:
                break
            work[rank], work[piv] = work[piv], work[rank]
            u[rank], u[piv] = u[piv], u[rank]
            done = True
            for i in range(rank + 1, n):
                if work[i][c] != 0:
                    row_op_sub(i, rank, work[i][c] // work[rank][c])
                    if work[i][c] != 0:
                        done = False
            if done:
                break
        if rank < n and work[rank][c] != 0:
            if work[rank][c] < 0:
                work[rank] = [-a for a in work[rank]]
                u[rank] = [-a for a in u[rank]]
            for i in range(rank):
                row_op_sub(i, rank, work[i][c] // work[rank][c])
            rank += 1
            if rank == n:
                break
    return work, u


@dataclass(frozen=True)
class LatticeBasis:
    """Saturated basis of a sublattice of Z^ambient_dim, in Hermite form."""

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "LatticeBasis":
        rows = [tuple(int(e) for e in v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector length {len(v)} != ambient {ambient_dim}")
        canon = hermite_form_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in canon))

    @classmethod
    def full(cls, ambient_dim: int) -> "LatticeBasis":
        return cls(ambient_dim, tuple(tuple(1 if i == j else 0 for j in range(ambient_dim)) for i in range(ambient_dim)))

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence[int]) -> bool:
        """Whether v is an integer combination of the basis vectors."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} != ambient {self.ambient_dim}")
        w = [int(e) for e in v]
        for b in self.vectors:
            p = next(j for j, e in enumerate(b) if e != 0)
            q, rem = divmod(w[p], b[p])
            if rem:
                return False
            if q:
                w = [a - q * e for a, e in zip(w, b)]
        return not any(w)

    def project(self, keep: Sequence[int]) -> "LatticeBasis":
        """Image lattice under the coordinate projection onto ``keep``."""
        keep = list(keep)
        return LatticeBasis.from_vectors(len(keep), [[v[j] for j in keep] for v in self.vectors])


def integer_kernel(m: IntMatrix) -> LatticeBasis:
    """Saturated canonical basis of {w in Z^cols : M*w = 0}.

    Unimodular row reduction of the transpose: rows of the transform that
    land on zero rows of the Hermite form are exactly an integer basis of
    the kernel.
    """
    at = m.transpose()
    h, u = _hermite_with_transform(at.entries, at.cols)
    kernel_rows = [u[i] for i in range(len(h)) if not any(h[i])]
    basis = LatticeBasis.from_vectors(m.cols, kernel_rows)
    assert all(not any(m.mul_vec(v)) for v in basis.vectors)
    return basis


def sum_rank(a: LatticeBasis, b: LatticeBasis) -> int:
    """Rational rank of the lattice sum A + B."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")
    return _rank_of_rows(list(a.vectors) + list(b.vectors), a.ambient_dim)


def skew_symmetrizer(p: IntMatrix) -> Optional[tuple[int, ...]]:
    """Componentwise-minimal positive integer diagonal D with P*D skew-symmetric.

    Ratios are forced along a spanning forest of the nonzero pattern and
    then verified globally; returns None when no such diagonal exists.
    """
    if not p.is_square():
        raise DimensionMismatch("skew-symmetrizer needs a square matrix")
    n = p.rows
    if any(p.at(i, i) != 0 for i in range(n)):
        return None
    for i in range(n):
        for j in range(i + 1, n):
            a, b = p.at(i, j), p.at(j, i)
            if (a == 0) != (b == 0) or a * b > 0:
                return None
    # (P*D)_ij = p_ij * d_j, so each edge forces d_j / d_i = -p_ji / p_ij > 0
    d: list[Optional[Fraction]] = [None] * n
    components: list[list[int]] = []
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if d[j] is None and p.at(i, j) != 0:
                    d[j] = d[i] * Fraction(-p.at(j, i), p.at(i, j))
                    comp.append(j)
                    stack.append(j)
        components.append(comp)
    for comp in components:
        scale = lcm(*(d[i].denominator for i in comp))
        ints = [d[i].numerator * (scale // d[i].denominator) for i in comp]
        g = gcd(*ints)
        for i, value in zip(comp, ints):
            d[i] = value // g
    diag = tuple(int(x) for x in d)
    for i in range(n):
        for j in range(n):
            if p.at(i, j) * diag[j] != -p.at(j, i) * diag[i]:
                return None
    return diag
