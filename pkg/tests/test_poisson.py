import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterpoisson.corpus import G25_B, G25_LAMBDA, G25_WEIGHTS
from clusterpoisson.errors import InvariantViolation
from clusterpoisson.intlinalg import IntMatrix, LatticeBasis, integer_kernel, rational_rank
from clusterpoisson.laurent import LaurentPoly
from clusterpoisson.poisson import (
    PoissonSeed,
    bracket,
    bracket_jacobiator,
    check_pair,
    is_invariant,
    mutate_pair,
    mutate_pair_report,
    pair_mutation_matrices,
    quotient_torus_rank,
    radical,
    radical_torus_overlap_rank,
    super_toric,
    toric_lattice,
)
from clusterpoisson.seed import Seed, mutate_matrix

from conftest import frac_rank, random_compatible_pair


def mono(nvars, exps, coeff=1):
    return LaurentPoly.monomial(nvars, exps, coeff)


def g25_pair():
    return PoissonSeed(Seed.initial(G25_B), G25_LAMBDA, allow_skew_violations=True)


@st.composite
def laurent_polys(draw, nvars, max_terms=3, exp_range=2):
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.integers(-exp_range, exp_range)) for _ in range(nvars))
        c = draw(st.integers(-3, 3))
        if c:
            terms[exps] = c
    return LaurentPoly(nvars, terms)


class TestPoissonSeed:
    def test_strict_rejects_non_skew(self):
        with pytest.raises(InvariantViolation):
            PoissonSeed(Seed.initial(G25_B), G25_LAMBDA)

    def test_forensic_mode_records_violations(self):
        ps = g25_pair()
        assert ps.skew_violations == ((1, 5, -2, 1),)

    def test_dimension_check(self):
        with pytest.raises(Exception):
            PoissonSeed(Seed.initial(G25_B), IntMatrix.identity(3), allow_skew_violations=True)


class TestBracket:
    def test_g25_generators(self):
        ps = g25_pair()
        x1, x2 = LaurentPoly.variable(7, 0), LaurentPoly.variable(7, 1)
        assert bracket(ps.lam, x1, x2) == mono(7, (1, 1, 0, 0, 0, 0, 0), -1)

    def test_inverted_variable_flips_sign(self):
        lam = IntMatrix.from_rows([[0, -1], [1, 0]])
        inv_x1 = mono(2, (-1, 0))
        x2 = LaurentPoly.variable(2, 1)
        assert bracket(lam, inv_x1, x2) == mono(2, (-1, 1), 1)

    @given(laurent_polys(nvars=3))
    def test_self_bracket_vanishes(self, p):
        lam = IntMatrix.from_rows([[0, 1, -2], [-1, 0, 3], [2, -3, 0]])
        assert bracket(lam, p, p).is_zero()

    @given(laurent_polys(nvars=3), laurent_polys(nvars=3), laurent_polys(nvars=3))
    @settings(max_examples=60)
    def test_jacobi_and_leibniz(self, p, q, r):
        lam = IntMatrix.from_rows([[0, 2, -1], [-2, 0, 1], [1, -1, 0]])
        assert bracket_jacobiator(lam, p, q, r).is_zero()
        assert bracket(lam, p, q * r) == bracket(lam, p, q) * r + q * bracket(lam, p, r)

    def test_invariance_closed_under_bracket(self):
        ps = g25_pair()
        t = toric_lattice(ps.seed.b_matrix)
        p = mono(7, G25_B.row(0))
        q = mono(7, G25_B.row(1)) + mono(7, tuple(2 * e for e in G25_B.row(0)))
        assert is_invariant(t, p) and is_invariant(t, q)
        assert is_invariant(t, bracket(ps.lam, p, q))


class TestCheckPair:
    def test_two_by_two_compatible(self):
        ps = PoissonSeed(
            Seed.initial(IntMatrix.from_rows([[0, 1], [-1, 0]])),
            IntMatrix.from_rows([[0, -1], [1, 0]]),
        )
        report = check_pair(ps)
        assert report.is_compatible
        assert report.diagonal == (1, 1)
        assert report.violations == ()

    def test_g25_forensics(self):
        report = check_pair(g25_pair())
        assert report.product.row(1) == (0, 2, 0, 0, 0, 0, 0)
        assert report.product.row(0) == (2, 0, 0, 0, 0, -1, 0)
        assert report.diagonal == (2, 2)
        assert report.violations == ((0, 5, -1),)
        assert not report.is_compatible

    def test_compatible_product_has_full_rank(self):
        rng = random.Random(5)
        for _ in range(25):
            ps = random_compatible_pair(rng)
            report = check_pair(ps)
            assert report.is_compatible
            assert rational_rank(report.product) == ps.seed.m


class TestMutatePair:
    def test_worked_two_by_two_example(self):
        b = IntMatrix.from_rows([[0, 1], [-1, 0]])
        e, f = pair_mutation_matrices(b, 0, 1)
        assert e.entries == ((-1, 0), (0, 1))
        assert f.entries == ((-1, 0), (0, 1))
        ps = PoissonSeed(Seed.initial(b), IntMatrix.from_rows([[0, -1], [1, 0]]))
        out = mutate_pair(ps, 0, 1)
        assert out.seed.b_matrix.entries == ((0, -1), (1, 0))
        assert out.lam.entries == ((0, 1), (-1, 0))
        assert mutate_pair(ps, 0, -1).lam == out.lam

    def test_symmetrizable_pair(self):
        b = IntMatrix.from_rows([[0, 2], [-1, 0]])
        ps = PoissonSeed(Seed.initial(b), IntMatrix.from_rows([[0, -1], [1, 0]]))
        assert check_pair(ps).is_compatible
        out = mutate_pair(ps, 0)
        assert out.seed.b_matrix == mutate_matrix(b, 0)
        assert check_pair(out).is_compatible

    def test_random_pairs_preserve_everything(self):
        rng = random.Random(77)
        for _ in range(40):
            ps = random_compatible_pair(rng)
            k = rng.randrange(ps.seed.m)
            plus = mutate_pair_report(ps, k, 1)
            minus = mutate_pair_report(ps, k, -1)
            assert plus.eps_independent and minus.eps_independent
            assert plus.pair.lam == minus.pair.lam
            assert plus.pair.seed.b_matrix == mutate_matrix(ps.seed.b_matrix, k)
            assert plus.compatible_after

    def test_incompatible_input_is_reported_not_raised(self):
        report = mutate_pair_report(g25_pair(), 0, 1)
        assert not report.compatible_before
        assert not report.eps_independent
        assert report.pair.seed.b_matrix == mutate_matrix(G25_B, 0)


class TestToricLattice:
    def test_g25_rank_and_members(self):
        t = toric_lattice(G25_B)
        assert t.rank == 5
        for w in G25_WEIGHTS:
            assert t.basis.contains(w)
        assert LatticeBasis.from_vectors(7, G25_WEIGHTS) == t.basis

    def test_full_rank_square_matrix_has_no_actions(self):
        assert toric_lattice(IntMatrix.from_rows([[0, 2], [-2, 0]])).rank == 0

    def test_zero_matrix_fixes_everything(self):
        assert toric_lattice(IntMatrix.from_rows([[0, 0, 0]])).rank == 3


class TestIsInvariant:
    def test_exchange_monomials_are_invariant(self):
        t = toric_lattice(G25_B)
        assert is_invariant(t, mono(7, G25_B.row(0)))

    def test_single_variable_is_not(self):
        t = toric_lattice(G25_B)
        assert not is_invariant(t, LaurentPoly.variable(7, 0))

    def test_constants_are_invariant(self):
        t = toric_lattice(G25_B)
        assert is_invariant(t, LaurentPoly.one(7))
        assert is_invariant(t, LaurentPoly.zero(7))


class TestQuotientTorusRank:
    def test_no_deletion(self):
        t = toric_lattice(G25_B)
        assert quotient_torus_rank(t, ()) == 5

    def test_delete_everything(self):
        t = toric_lattice(G25_B)
        assert quotient_torus_rank(t, range(7)) == 0

    def test_delete_first_coordinate(self):
        t = toric_lattice(G25_B)
        assert quotient_torus_rank(t, (0,)) == 5


class TestRadical:
    def test_nondegenerate(self):
        assert radical(IntMatrix.from_rows([[0, -1], [1, 0]])).rank == 0

    def test_zero_form(self):
        assert radical(IntMatrix.from_rows([[0, 0], [0, 0]])).rank == 2

    def test_g25_rank_nullity(self):
        lam = G25_LAMBDA
        assert radical(lam).rank + rational_rank(lam) == 7

    def test_disjoint_from_torus_complement_on_compatible_pairs(self):
        rng = random.Random(11)
        for _ in range(20):
            ps = random_compatible_pair(rng)
            assert radical_torus_overlap_rank(ps.seed.b_matrix, ps.lam) == 0


class TestSuperToric:
    def test_full_subset_is_vacuous(self):
        report = super_toric(g25_pair())
        full = next(e for e in report.entries if len(e.subset) == 7)
        assert full.rank == 0 and full.expected == 0 and full.ok

    def test_empty_subset_on_compatible_pairs(self):
        rng = random.Random(3)
        for _ in range(10):
            ps = random_compatible_pair(rng)
            report = super_toric(ps, max_subset=0)
            assert report.entries[0].rank == ps.seed.n

    def test_g25_table_against_independent_elimination(self):
        ps = g25_pair()
        report = super_toric(ps)
        assert len(report.entries) == 128
        t = integer_kernel(G25_B)
        for entry in report.entries:
            keep = [j for j in range(7) if j not in entry.subset]
            if not keep:
                expected = 0
            else:
                proj = [[v[j] for j in keep] for v in t.vectors]
                lam_sub = [[G25_LAMBDA.at(i, j) for j in keep] for i in keep]
                expected = frac_rank(proj + list(map(list, zip(*lam_sub))), len(keep))
            assert entry.rank == expected

    def test_g25_failing_subsets_are_frozen(self):
        report = super_toric(g25_pair())
        failures = [tuple(j + 1 for j in e.subset) for e in report.entries if not e.ok]
        assert failures == [(2,), (1, 6), (2, 3), (2, 4), (1, 6, 7), (2, 3, 4)]
        assert not report.passes
        assert report.first_failure == (1,)  # 0-based coordinate of x2

    def test_early_exit_and_cap(self):
        report = super_toric(g25_pair(), max_subset=1, early_exit=True)
        assert report.truncated
        assert not report.passes
        assert report.entries[-1].subset == (1,)

    def test_large_ambient_needs_cap(self):
        b = IntMatrix.from_rows([[0] * 13])
        ps = PoissonSeed(Seed.initial(b), IntMatrix.from_rows([[0] * 13 for _ in range(13)]))
        with pytest.raises(ValueError):
            super_toric(ps)
        assert super_toric(ps, max_subset=1).entries
