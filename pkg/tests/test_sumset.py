import random

import pytest
from gmpy2 import mpq

from exact_sumset import (
    ContractViolation,
    Poly,
    SparseFn,
    SumsetParams,
    RunStats,
    compute_sumset,
    convolve,
    poly_mul,
    random_restrictions,
    real_set,
)
from exact_sumset.oracle import brute_convolve, brute_sumset
from exact_sumset.sumset import verify_linear_basis

from conftest import EXPERIMENT_PARAMS, random_rat_set


class TestRandomRestrictions:
    def test_singleton_side(self, rng):
        fam = random_restrictions((5,), (0, 1, 2), rng, constant=6)
        for Ai, _ in fam.pairs:
            assert Ai in ((), (5,))

    def test_reproducible(self):
        fam1 = random_restrictions((0, 1, 2, 3), (0, 4), random.Random(42), 8)
        fam2 = random_restrictions((0, 1, 2, 3), (0, 4), random.Random(42), 8)
        assert fam1 == fam2

    def test_m_bound(self, rng):
        import math
        A = tuple(range(17))
        B = tuple(range(100, 131))
        fam = random_restrictions(A, B, rng, constant=6)
        cap = 6 * math.log2(max(len(A), len(B)) + 2) ** 2 * 4
        assert fam.m <= cap
        for Ai, Bi in fam.pairs:
            assert set(Ai) <= set(A) and set(Bi) <= set(B)

    def test_separation_statistics(self):
        # published constant: every element pair separated in >= 95% of runs
        A = (0, 1, 2, 3)
        B = (0, 4)
        pairs = [(c1, c2)
                 for i, c1 in enumerate(brute_sumset(A, B))
                 for c2 in brute_sumset(A, B)[i + 1:]]
        good = 0
        runs = 120
        for seed in range(runs):
            fam = random_restrictions(A, B, random.Random(seed), constant=160)
            sums = [set(brute_sumset(Ai, Bi)) if Ai and Bi else set()
                    for Ai, Bi in fam.pairs]
            if all(any(len(s & {c1, c2}) == 1 for s in sums)
                   for c1, c2 in pairs):
                good += 1
        assert good / runs >= 0.95


class TestVerification:
    def test_accepts_exactly_linear_distinct(self):
        basis = [Poly([-1, 1]), Poly([-2, 1]), Poly([3, 1])]
        assert verify_linear_basis(basis, 3) == (mpq(-3), 1, 2)

    def test_rejects_corrupted(self):
        linear = [Poly([-1, 1]), Poly([-2, 1])]
        # wrong count
        assert verify_linear_basis(linear, 3) is None
        # non-linear member
        assert verify_linear_basis(linear + [poly_quadratic()], 3) is None
        # duplicate root collapses below t
        assert verify_linear_basis(linear + [Poly([-1, 1])], 3) is None


def poly_quadratic():
    return poly_mul(Poly([-4, 1]), Poly([-5, 1]))


class TestComputeSumset:
    def test_examples(self, rng, params):
        assert compute_sumset((0, 1), (0, 2), rng, params) == \
            tuple(map(mpq, (0, 1, 2, 3)))
        assert compute_sumset((mpq(-3),), (mpq(7),), rng, params) == (mpq(4),)
        got = compute_sumset((0, mpq(1, 3), mpq(2, 3)), (0, mpq(1, 3)), rng, params)
        assert got == (0, mpq(1, 3), mpq(2, 3), 1)

    def test_empty_rejected(self, rng, params):
        with pytest.raises(ContractViolation):
            compute_sumset((), (1,), rng, params)

    def test_matches_brute_random(self, rng, params):
        for _ in range(30):
            A = random_rat_set(rng, 7)
            B = random_rat_set(rng, 7)
            assert compute_sumset(A, B, rng, params) == brute_sumset(A, B)

    def test_matches_brute_structured(self, rng, params):
        ap = tuple(range(24))
        assert compute_sumset(ap, ap, rng, params) == tuple(map(mpq, range(47)))
        geo = tuple(mpq(1, 2 ** k) for k in range(6))
        assert compute_sumset(geo, geo, rng, params) == brute_sumset(geo, geo)

    def test_lower_bound_on_outputs(self, rng, params):
        for _ in range(10):
            A = random_rat_set(rng, 6)
            B = random_rat_set(rng, 6)
            out = compute_sumset(A, B, rng, params)
            assert len(out) >= len(A) + len(B) - 1

    def test_deterministic_for_fixed_seed(self, params):
        A = (0, 1, mpq(7, 2), 9)
        B = (0, mpq(1, 2), 4)
        runs = [compute_sumset(A, B, random.Random(99), params) for _ in range(2)]
        assert runs[0] == runs[1]

    def test_retry_statistics(self, params):
        # verification should essentially never need a redraw
        master = random.Random(7)
        total = 0
        worst = 0
        for _ in range(40):
            A = random_rat_set(master, 6, dens=(1, 2))
            B = random_rat_set(master, 6, dens=(1, 2))
            stats = RunStats()
            compute_sumset(A, B, master, params, stats)
            total += stats.retries
            worst = max(worst, stats.retries)
        assert total / 40 <= 1.1
        assert worst <= 3

    def test_threads_match_sequential(self):
        A = (0, 1, 5, mpq(13, 2))
        B = (0, 2, 3)
        seq = compute_sumset(A, B, random.Random(5),
                             SumsetParams(restriction_constant=6, threads=1))
        par = compute_sumset(A, B, random.Random(5),
                             SumsetParams(restriction_constant=6, threads=4))
        assert seq == par


class TestConvolve:
    def test_examples(self, rng, params):
        assert convolve(SparseFn([(0, 2)]), SparseFn([(5, 3)]), rng, params) == \
            SparseFn([(5, 6)])
        f = SparseFn([(0, 1), (1, 1)])
        assert convolve(f, f, rng, params) == SparseFn([(0, 1), (1, 2), (2, 1)])
        assert convolve(SparseFn([(0, 1), (2, 1)]), SparseFn([(1, 1)]), rng, params) == \
            SparseFn([(1, 1), (3, 1)])

    def test_positive_values_required(self, rng, params):
        f = SparseFn([(0, 1), (1, -2)])
        with pytest.raises(ContractViolation):
            convolve(f, SparseFn([(0, 1)]), rng, params)

    def test_matches_brute(self, rng, params):
        for _ in range(20):
            pts_f = random_rat_set(rng, 6, lo=-20, hi=20, dens=(1, 2))
            pts_g = random_rat_set(rng, 6, lo=-20, hi=20, dens=(1, 2))
            f = SparseFn((p, mpq(rng.randrange(1, 9), rng.choice((1, 3)))) for p in pts_f)
            g = SparseFn((p, mpq(rng.randrange(1, 9))) for p in pts_g)
            assert convolve(f, g, rng, params) == SparseFn(brute_convolve(f, g))


class TestRealSet:
    def test_canonicalizes(self):
        assert real_set([3, mpq(6, 2), 1, mpq(1, 2)]) == (mpq(1, 2), 1, 3)
        assert real_set([]) == ()
