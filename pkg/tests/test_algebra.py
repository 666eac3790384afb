import random

import pytest
from gmpy2 import mpq

from exact_sumset import (
    ContractViolation,
    ParseError,
    Poly,
    format_rational,
    hankel_det_sign,
    parse_rational,
    poly_divrem,
    poly_gcd,
    poly_mul,
    product_tree,
    read_rational_tokens,
    remainder_tree,
)

X = Poly([0, 1])


def poly(*coeffs):
    return Poly(coeffs)


class TestRationalText:
    def test_forms(self):
        assert parse_rational("3/6") == mpq(1, 2)
        assert parse_rational("-7") == -7
        assert parse_rational("+2.50") == mpq(5, 2)
        assert parse_rational("-0.125") == mpq(-1, 8)
        assert parse_rational(".5") == mpq(1, 2)

    def test_decimal_is_exact(self):
        # 0.1 must become exactly 1/10, not a float artifact
        v = parse_rational("0.1")
        assert v.numerator == 1 and v.denominator == 10

    def test_canonical_output(self):
        assert format_rational(mpq(8, 4)) == "2"
        assert format_rational(mpq(-3, 6)) == "-1/2"
        assert parse_rational(format_rational(mpq(22, 7))) == mpq(22, 7)

    def test_tokens_and_comments(self):
        text = "# header\n1/2 3\n# mid\n-4 0.5  # trailing\n"
        assert read_rational_tokens(text) == [mpq(1, 2), 3, -4, mpq(1, 2)]

    @pytest.mark.parametrize("bad", ["", "1/0", "a", "1..2", "1/2/3", "2.x"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_rational(bad)


class TestPolyBasics:
    def test_zero_and_degree(self):
        assert Poly([0, 0]).is_zero()
        assert Poly([0, 0]).degree == -1
        assert poly(1, 2, 0).degree == 1

    def test_mul_examples(self):
        assert poly(1, 1) * poly(-1, 1) == poly(-1, 0, 1)
        p = poly(3, -2, 7)
        assert p * Poly.one() == p
        assert poly(2, -3, 1) * X == poly(0, 2, -3, 1)

    def test_mul_karatsuba_matches_schoolbook(self):
        rng = random.Random(1)
        for _ in range(12):
            a = Poly(mpq(rng.randrange(-9, 10), rng.choice([1, 2, 3]))
                     for _ in range(rng.randrange(1, 90)))
            b = Poly(mpq(rng.randrange(-9, 10), rng.choice([1, 2, 3]))
                     for _ in range(rng.randrange(1, 90)))
            want = [mpq(0)] * (len(a.coeffs) + len(b.coeffs))
            for i, ai in enumerate(a.coeffs):
                for j, bj in enumerate(b.coeffs):
                    want[i + j] += ai * bj
            assert poly_mul(a, b) == Poly(want)

    def test_divrem_examples(self):
        assert poly_divrem(poly(-1, 0, 1), poly(-1, 1)) == (poly(1, 1), Poly.zero())
        assert poly_divrem(poly(0, 0, 1), poly(-1, 1)) == (poly(1, 1), poly(1))
        p = poly(2, 5, 1)
        assert poly_divrem(p, p) == (Poly.one(), Poly.zero())

    def test_divrem_random_identity(self):
        rng = random.Random(2)
        for _ in range(40):
            p = Poly(mpq(rng.randrange(-9, 10), rng.choice([1, 2]))
                     for _ in range(rng.randrange(0, 65)))
            d = Poly(mpq(rng.randrange(-9, 10), rng.choice([1, 2]))
                     for _ in range(rng.randrange(1, 65)))
            if d.is_zero():
                continue
            q, r = poly_divrem(p, d)
            assert q * d + r == p
            assert r.degree < d.degree

    def test_div_by_zero(self):
        with pytest.raises(ContractViolation):
            poly_divrem(X, Poly.zero())


class TestGcd:
    def test_examples(self):
        assert poly_gcd(poly(-1, 0, 1), poly(0, -1, 1)) == poly(-1, 1)
        p = poly(4, 6)
        assert poly_gcd(p, Poly.zero()) == p.monic()
        assert poly_gcd(X, poly(1, 1)) == Poly.one()

    def test_both_zero(self):
        with pytest.raises(ContractViolation):
            poly_gcd(Poly.zero(), Poly.zero())

    def test_random_properties(self):
        rng = random.Random(3)
        for _ in range(30):
            g = Poly.from_roots([rng.randrange(-5, 6) for _ in range(rng.randrange(0, 4))])
            p = g * Poly.from_roots([rng.randrange(-5, 6) for _ in range(rng.randrange(0, 4))])
            q = g * Poly.from_roots([rng.randrange(-5, 6) for _ in range(rng.randrange(0, 4))])
            if p.is_zero() and q.is_zero():
                continue
            got = poly_gcd(p, q)
            assert got.is_monic()
            for s in (p, q):
                if not s.is_zero():
                    assert poly_divrem(s, got)[1].is_zero()
            # cofactors are coprime
            cp = poly_divrem(p, got)[0]
            cq = poly_divrem(q, got)[0]
            if not cp.is_zero() and not cq.is_zero():
                assert poly_gcd(cp, cq) == Poly.one()


class TestTrees:
    def test_product_tree_examples(self):
        tree = product_tree([poly(-1, 1), poly(-2, 1)])
        assert tree.root == poly(2, -3, 1)
        single = product_tree([poly(5, 1)])
        assert single.root == poly(5, 1) and single.left is None
        assert product_tree([X, X, X, X]).root == poly(0, 0, 0, 0, 1)

    def test_product_tree_rejects(self):
        with pytest.raises(ContractViolation):
            product_tree([])
        with pytest.raises(ContractViolation):
            product_tree([Poly.zero()])

    def test_remainder_tree_examples(self):
        leaves = [poly(-1, 1), poly(-2, 1)]
        tree = product_tree(leaves)
        assert remainder_tree(poly(0, 0, 1), tree) == [poly(1), poly(4)]
        assert remainder_tree(Poly.zero(), tree) == [Poly.zero(), Poly.zero()]
        t2 = product_tree([poly(-1, 1)])
        assert remainder_tree(poly(-1, 1), t2) == [Poly.zero()]

    def test_remainder_tree_matches_direct(self):
        rng = random.Random(4)
        for _ in range(15):
            leaves = [Poly([mpq(rng.randrange(-6, 7)) for _ in range(rng.randrange(1, 4))] + [mpq(1)])
                      for _ in range(rng.randrange(1, 9))]
            tree = product_tree(leaves)
            p = Poly(mpq(rng.randrange(-9, 10)) for _ in range(rng.randrange(0, 12)))
            got = remainder_tree(p, tree)
            assert got == [poly_divrem(p, leaf)[1] for leaf in leaves]


def naive_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = mpq(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * naive_det(minor)
        total += term if j % 2 == 0 else -term
    return total


class TestHankelSign:
    def test_examples(self):
        assert hankel_det_sign((1, 5, 7), 1) == 1
        assert hankel_det_sign((1, 3, 9), 2) == 0
        assert hankel_det_sign((2, 3, 5), 2) == 1

    def test_insufficient(self):
        with pytest.raises(ContractViolation):
            hankel_det_sign((1, 2), 2)

    def test_matches_cofactor_expansion(self):
        rng = random.Random(5)
        for _ in range(60):
            dim = rng.randrange(1, 7)
            sums = [mpq(rng.randrange(-6, 7), rng.choice([1, 2, 3]))
                    for _ in range(2 * dim - 1)]
            m = [[sums[i + j] for j in range(dim)] for i in range(dim)]
            want = naive_det(m)
            want_sign = 0 if want == 0 else (1 if want > 0 else -1)
            assert hankel_det_sign(sums, dim) == want_sign
