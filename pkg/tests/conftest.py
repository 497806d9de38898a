"""Shared fixtures, independent test oracles, and random-input generators.

The oracles here deliberately avoid the library's computation paths:
ranks come from Fraction-based Gauss elimination, kernels from bounded
box enumeration, and minimal skew-symmetrizers from brute-force search,
so library results are checked against genuinely independent code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

import pytest

from clusterpoisson.corpus import g25_seed
from clusterpoisson.intlinalg import IntMatrix, rational_rank
from clusterpoisson.laurent import LaurentPoly
from clusterpoisson.poisson import PoissonSeed
from clusterpoisson.seed import Seed


def frac_rank(rows, ncols: int) -> int:
    work = [[Fraction(e) for e in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c] / work[rank][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def box_kernel_vectors(m: IntMatrix, bound: int) -> list[tuple[int, ...]]:
    """All integer kernel vectors with coordinates in [-bound, bound]."""
    out = []
    for w in itertools.product(range(-bound, bound + 1), repeat=m.cols):
        if any(w) and all(v == 0 for v in m.mul_vec(w)):
            out.append(w)
    return out


def brute_skew_symmetrizer(p: IntMatrix, bound: int):
    """Componentwise-minimal positive diagonal with P*D skew, by search."""
    n = p.rows
    valid = []
    for d in itertools.product(range(1, bound + 1), repeat=n):
        ok = all(
            p.at(i, j) * d[j] == -p.at(j, i) * d[i] for i in range(n) for j in range(n)
        )
        if ok:
            valid.append(d)
    if not valid:
        return None
    best = min(valid, key=lambda d: (sum(d), d))
    assert all(all(b <= v for b, v in zip(best, d)) for d in valid), "minimum is not componentwise"
    return best


@pytest.fixture
def g25():
    return g25_seed()


def fraction_inverse(b: IntMatrix) -> list[list[Fraction]]:
    n = b.rows
    work = [
        [Fraction(b.at(i, j)) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = next(i for i in range(c, n) if work[i][c])
        work[c], work[piv] = work[piv], work[c]
        scale = Fraction(1) / work[c][c]
        work[c] = [v * scale for v in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [v - f * w for v, w in zip(work[i], work[c])]
    return [row[n:] for row in work]


def random_skew(rng, n: int, bound: int = 3) -> IntMatrix:
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            entries[i][j] = v
            entries[j][i] = -v
    return IntMatrix.from_rows(entries)


def random_compatible_pair(rng) -> PoissonSeed:
    """Compatible pairs from two constructions.

    Square case: B random nonsingular skew with Lambda the minimal integer
    multiple of its inverse.  Rectangular case: B = [B_pr | I] with
    Lambda = [[0, -I], [I, B_pr]], which multiplies out to [I | 0].
    """
    if rng.random() < 0.5:
        n = rng.choice((2, 4, 6))
        while True:
            b = random_skew(rng, n)
            if rational_rank(b) == n:
                break
        inv = fraction_inverse(b)
        mu = lcm(*(v.denominator for row in inv for v in row))
        lam = IntMatrix.from_rows([[int(v * mu) for v in row] for row in inv])
        return PoissonSeed(Seed.initial(b), lam)
    m = rng.choice((1, 2, 3))
    b_pr = random_skew(rng, m) if m > 1 else IntMatrix.from_rows([[0]])
    rows = [list(b_pr.row(i)) + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    b = IntMatrix.from_rows(rows)
    lam_rows = []
    for i in range(m):
        lam_rows.append([0] * m + [-1 if j == i else 0 for j in range(m)])
    for i in range(m):
        lam_rows.append([1 if j == i else 0 for j in range(m)] + list(b_pr.row(i)))
    return PoissonSeed(Seed.initial(b), IntMatrix.from_rows(lam_rows))


def random_laurent(rng, nvars: int, max_terms: int = 3, exp_range: int = 2) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-exp_range, exp_range) for _ in range(nvars))
        c = rng.randint(-3, 3)
        if c:
            terms[exps] = Fraction(c)
    return LaurentPoly(nvars, terms)


def guarded_laurent(rng, s, max_terms: int = 3) -> LaurentPoly:
    """Random polynomial with non-negative exponents on the ideal variables."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(
            rng.randint(0, 2) if j in s.x_part else rng.randint(-2, 2) for j in range(s.n)
        )
        c = rng.randint(-3, 3)
        if c:
            terms[exps] = Fraction(c)
    return LaurentPoly(s.n, terms)
