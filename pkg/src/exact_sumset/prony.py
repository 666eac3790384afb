"""Power-sum machinery for sparse recovery over the rationals.

A finite-support function f is probed through the moment sequence
sum(x^i * f(x)) for i = 0, 1, 2, ...  Those moments behave like evaluations
of a sparse polynomial at a geometric progression: they satisfy a linear
recurrence whose minimal polynomial is exactly prod(X - a) over the support
of f, they multiply under convolution via a binomial product rule, and a
Hankel matrix built from them tests the support size of nonnegative f.
"""

from __future__ import annotations

import operator
from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .algebra import ONE, ZERO, Poly, Rat, hankel_det_sign, poly_mul
from .errors import ContractViolation

# PowerSums: tuple of Rat, entry i = sum of x^i * f(x) over the support
PowerSums = tuple


class SparseFn:
    """Finite-support function, stored as sorted (point, value) pairs.

    Points are strictly increasing and no stored value is zero.
    """

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        cleaned = sorted((mpq(x), mpq(v)) for x, v in entries if mpq(v) != 0)
        for (x1, _), (x2, _) in zip(cleaned, cleaned[1:]):
            if x1 == x2:
                raise ContractViolation(f"duplicate support point {x1}")
        object.__setattr__(self, "entries", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("SparseFn is immutable")

    @staticmethod
    def indicator(points) -> "SparseFn":
        return SparseFn((x, 1) for x in points)

    def support(self) -> tuple:
        return tuple(x for x, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseFn) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"SparseFn({list(self.entries)!r})"


def power_sums(f: SparseFn, k: int) -> PowerSums:
    """First k moments of f, powers built by iterated multiplication."""
    if k < 0:
        raise ContractViolation("k must be >= 0")
    sums = [ZERO] * k
    for x, v in f:
        p = v
        for i in range(k):
            sums[i] += p
            p *= x
    return tuple(sums)


def interpolate_from_power_sums(sums: Sequence, support: Sequence) -> SparseFn:
    """The unique function on the given support matching the leading moments.

    Solves the transposed-Vandermonde system through the master polynomial
    M(X) = prod(X - a): with M_a = M / (X - a), the weighted moment sum
    sum_k M_a[k] * sums[k] collapses to M_a(a) * f(a).
    """
    support = [mpq(a) for a in support]
    for a1, a2 in zip(sorted(support), sorted(support)[1:]):
        if a1 == a2:
            raise ContractViolation(f"duplicate support point {a1}")
    t = len(support)
    if len(sums) < t:
        raise ContractViolation(f"need {t} power sums, got {len(sums)}")
    master = Poly.from_roots(support)
    entries = []
    for a in support:
        # synthetic division: master / (X - a), then Horner for the norm
        qc = [ZERO] * t
        carry = master.coeffs[t]
        for j in range(t - 1, -1, -1):
            qc[j] = carry
            carry = master.coeffs[j] + carry * a
        weighted = ZERO
        for k in range(t):
            if qc[k] != 0:
                weighted += qc[k] * sums[k]
        norm = ZERO
        pw = ONE
        for k in range(t):
            norm += qc[k] * pw
            pw *= a
        value = weighted / norm
        if value != 0:
            entries.append((a, value))
    return SparseFn(entries)


def convolve_power_sums(fs: Sequence, gs: Sequence) -> PowerSums:
    """Moments of the convolution from moments of the factors.

    Entry m is sum over i+j=m of binomial(m,i) * fs[i] * gs[j]; computed by
    dividing by factorials, multiplying the generating polynomials, and
    re-multiplying.  Factorials are built incrementally and are invertible
    since we are in characteristic zero.
    """
    if len(fs) != len(gs):
        raise ContractViolation("power sum sequences differ in length")
    k = len(fs)
    if k == 0:
        return ()
    fact = [mpz(1)] * k
    for i in range(1, k):
        fact[i] = fact[i - 1] * i
    u = Poly(mpq(fs[i]) / fact[i] for i in range(k))
    v = Poly(mpq(gs[i]) / fact[i] for i in range(k))
    prod = poly_mul(u, v).coeffs
    out = []
    for m in range(k):
        c = prod[m] if m < len(prod) else ZERO
        out.append(c * fact[m])
    return tuple(out)


# ---------------------------------------------------------------------------
# minimal polynomial of a linear recurrence (Berlekamp-Massey)
# ---------------------------------------------------------------------------

def _bm_integer(seq: Sequence) -> tuple[int, list]:
    """Scale-free Berlekamp-Massey over the integers.

    Maintains the connection polynomial as an integer vector proportional to
    the true one; each update multiplies through by the stored discrepancy
    and strips the content to keep coefficients near the size of the answer.
    Returns (L, C) with C[0] the leading scale and deg C <= L.
    """
    C = [mpz(1)]
    B = [mpz(1)]
    L = 0
    m = 1
    b = mpz(1)
    zero = mpz(0)
    for i in range(len(seq)):
        top = min(L, len(C) - 1)
        lo = i - top  # always >= 0: the locked degree never exceeds the index
        d = sum(map(operator.mul, C, reversed(seq[lo: i + 1])), zero)
        if d == 0:
            m += 1
            continue
        lengthen = 2 * L <= i
        prev = C[:] if lengthen else None
        newlen = max(len(C), len(B) + m)
        nxt = [b * (C[j] if j < len(C) else mpz(0)) for j in range(newlen)]
        for j, bj in enumerate(B):
            if bj:
                nxt[j + m] -= d * bj
        g = mpz(0)
        for c in nxt:
            g = gmpy2.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            nxt = [c // g for c in nxt]
        C = nxt
        if lengthen:
            B = prev
            b = d
            L = i + 1 - L
            m = 1
        else:
            m += 1
    return L, C


def _connection_to_monic(L: int, C: list, q) -> Poly:
    """Monic minimal polynomial from a connection vector, undoing root scaling.

    The connection orientation is reversed (lam[L - j] ~ C[j]); a sequence
    that was rescaled by q^i has its recurrence roots multiplied by q, so the
    coefficient at degree L - j picks up a factor q^-j on the way back.
    """
    lead = C[0]
    lam = [ZERO] * (L + 1)
    qpow = mpz(1)
    for j in range(min(len(C), L + 1)):
        if C[j]:
            lam[L - j] = mpq(C[j], lead) / qpow
        qpow *= q
    return Poly(lam)


def _clear_denominators(seq: list) -> tuple[list, "mpz"]:
    """Rescale s_i -> c * q^i * s_i into integers; returns (ints, q).

    The constant c only rescales the sequence; the geometric factor q^i
    rescales the recurrence roots by q, which the caller undoes.  q is grown
    greedily until every denominator divides c * q^i.
    """
    dens = [s.denominator for s in seq]
    c = dens[0]
    q = mpz(1)
    while True:
        grown = False
        pw = mpz(c)
        for i in range(1, len(seq)):
            pw *= q
            deficit = dens[i] // gmpy2.gcd(dens[i], pw)
            if deficit > 1:
                q *= deficit
                grown = True
                break
        if not grown:
            break
    ints = []
    pw = mpz(c)
    for i, s in enumerate(seq):
        if i:
            pw *= q
        ints.append(mpz(s * pw))
    return ints, q


def minimal_polynomial(seq: Sequence) -> Poly:
    """Monic polynomial of least degree annihilating every window of seq.

    The returned Lambda of degree r satisfies
    sum(Lambda[l] * seq[i + l] for l in range(r + 1)) == 0 for all
    0 <= i < len(seq) - r.
    """
    if not len(seq):
        raise ContractViolation("minimal_polynomial of an empty sequence")
    seq = [mpq(s) for s in seq]
    if all(s.denominator == 1 for s in seq):
        ints = [mpz(s) for s in seq]
        q = mpz(1)
    else:
        ints, q = _clear_denominators(seq)
    L, C = _bm_integer(ints)
    return _connection_to_monic(L, C, q)


# ---------------------------------------------------------------------------
# sumset-flavoured applications of the moment machinery
# ---------------------------------------------------------------------------

def _integer_scaled(A: Sequence, B: Sequence) -> tuple[list, list, "mpz"]:
    """Scale both sets by the lcm of their denominators to land in integers.

    Pure change of variables: (qA) + (qB) = q(A + B), so support-size
    questions are unchanged and roots are recovered by dividing by q.
    """
    q = mpz(1)
    for x in A:
        q = gmpy2.lcm(q, mpq(x).denominator)
    for x in B:
        q = gmpy2.lcm(q, mpq(x).denominator)
    As = [mpz(mpq(a) * q) for a in A]
    Bs = [mpz(mpq(b) * q) for b in B]
    return As, Bs, q


def _indicator_moments(points: Sequence, k: int) -> list:
    sums = [mpz(0)] * k
    for x in points:
        p = mpz(1)
        x = mpz(x)
        for i in range(k):
            sums[i] += p
            p *= x
    return sums


def _convolved_moments(As: Sequence, Bs: Sequence, k: int) -> list:
    """Integer moments of 1_A (*) 1_B up to length k.

    Stays in integer arithmetic by applying the binomial product rule
    directly instead of the factorial-scaled generating-function form.
    """
    fs = _indicator_moments(As, k)
    gs = _indicator_moments(Bs, k)
    out = []
    for m in range(k):
        acc = mpz(0)
        for i in range(m + 1):
            fi = fs[i]
            gj = gs[m - i]
            if fi and gj:
                acc += gmpy2.bincoef(m, i) * fi * gj
        out.append(acc)
    return out


def lambda_of_sumset(A: Sequence, B: Sequence, t: int) -> Poly:
    """prod(X - c) over c in A + B, for any bound t >= |A + B|.

    Moments of the indicator convolution to length 2t feed the recurrence
    solver; the window still determines the same minimal polynomial when t
    overshoots, so an over-large bound is harmless (just slower).
    Either set empty yields the constant polynomial 1.
    """
    if t < 0:
        raise ContractViolation("t must be >= 0")
    if not A or not B:
        return Poly.one()
    As, Bs, q = _integer_scaled(A, B)
    hs = _convolved_moments(As, Bs, 2 * t)
    L, C = _bm_integer(hs)
    return _connection_to_monic(L, C, q)


def sparsity_exceeds(sums: Sequence, s: int) -> bool:
    """Does the underlying nonnegative function have more than s support points?

    Tests positive definiteness of the (s+1) x (s+1) moment Hankel matrix;
    the matrix is always positive semidefinite for nonnegative functions and
    is singular exactly when the support fits in s points.
    """
    if s < 0:
        raise ContractViolation("s must be >= 0")
    if len(sums) < 2 * s + 1:
        raise ContractViolation(
            f"sparsity test at level {s} needs {2 * s + 1} moments, got {len(sums)}")
    return hankel_det_sign(sums, s + 1) > 0


def _lambda_scaled(As: Sequence, Bs: Sequence, t: int, q) -> Poly:
    """prod(X - c) over c in (As + Bs) / q, for integer-scaled inputs.

    The moment window is 2 * min(t, |As| * |Bs|): both are valid sparsity
    bounds for the restricted sumset, and the product is often far smaller.
    """
    if not As or not Bs:
        return Poly.one()
    bound = min(t, len(As) * len(Bs))
    hs = _convolved_moments(As, Bs, 2 * bound)
    L, C = _bm_integer(hs)
    return _connection_to_monic(L, C, q)


def _sumset_size_scaled(As: Sequence, Bs: Sequence, charge=None) -> int:
    """|As + Bs| by doubling a sparsity bound, testing via recurrence degree.

    For the nonnegative moment sequences seen here, "support larger than s"
    is equivalent to "no degree-s recurrence annihilates the first 2s+1
    moments": the (s+1)-dimensional moment Hankel matrix is positive
    semidefinite, so it is singular exactly when the support fits in s
    points.  The recurrence-degree test therefore follows the same doubling
    trajectory as the Hankel determinant sign at a fraction of the cost, and
    the final window already pins the exact size.
    """
    s = max(len(As), len(Bs))
    while True:
        if charge is not None:
            charge(s)
        hs = _convolved_moments(As, Bs, 2 * s + 1)
        L, _ = _bm_integer(hs)
        if L <= s:
            return L
        s *= 2


def sumset_size(A: Sequence, B: Sequence) -> int:
    """|A + B|, deterministically, in output-sensitive time."""
    if not A or not B:
        raise ContractViolation("sumset_size of an empty set")
    As, Bs, _ = _integer_scaled(A, B)
    return _sumset_size_scaled(As, Bs)
