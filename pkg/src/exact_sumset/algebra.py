"""Exact rational and dense polynomial arithmetic.

Everything downstream runs on top of this module: rationals are gmpy2.mpq
values in canonical reduced form (gcd(|num|, den) = 1, den > 0), polynomials
are immutable coefficient tuples over those rationals, lowest degree first,
with trailing zeros stripped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import gmpy2

from .errors import ContractViolation, ParseError
from gmpy2 import mpq, mpz

Rat = mpq  # canonical reduced rational; the field element everywhere

ZERO = mpq(0)
ONE = mpq(1)

# poly_mul falls back to schoolbook below this many coefficients
KARATSUBA_CUTOFF = 32


# ---------------------------------------------------------------------------
# rational text format
#
# One token per value.  Accepted forms: "p/q", integer "p", decimal "±d.d...d".
# Whitespace separates tokens; "#" starts a comment that runs to end of line.
# Decimals are converted exactly: d digits after the point become a
# denominator of 10^d.  Floating point is never involved.
# ---------------------------------------------------------------------------

def parse_rational(token: str) -> Rat:
    token = token.strip()
    if not token:
        raise ParseError("empty rational token")
    body = token[1:] if token[0] in "+-" else token
    sign = -1 if token[0] == "-" else 1
    if "/" in body:
        num_s, _, den_s = body.partition("/")
        if not (num_s.isdigit() and den_s.isdigit()):
            raise ParseError(f"malformed rational token {token!r}")
        den = int(den_s)
        if den == 0:
            raise ParseError(f"zero denominator in {token!r}")
        return mpq(sign * int(num_s), den)
    if "." in body:
        int_s, _, frac_s = body.partition(".")
        if not ((int_s.isdigit() or int_s == "") and frac_s.isdigit()):
            raise ParseError(f"malformed decimal token {token!r}")
        scale = 10 ** len(frac_s)
        return mpq(sign * (int(int_s or "0") * scale + int(frac_s)), scale)
    if not body.isdigit():
        raise ParseError(f"malformed rational token {token!r}")
    return mpq(sign * int(body))


def format_rational(x: Rat) -> str:
    """Canonical text form: `p/q` with q > 0 and gcd 1, integers without `/1`."""
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def read_rational_tokens(text: str) -> list[Rat]:
    values = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        for token in body.split():
            values.append(parse_rational(token))
    return values


# ---------------------------------------------------------------------------
# dense univariate polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Immutable dense polynomial over Rat, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):  # trailing zeros stripped
        cs = [mpq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def x_minus(root) -> "Poly":
        return Poly((-mpq(root), 1))

    @staticmethod
    def from_roots(roots: Iterable) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = poly_mul(p, Poly.x_minus(r))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Rat:
        if not self.coeffs:
            raise ContractViolation("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lead = self.leading()
        if lead == 1:
            return self
        return Poly(c / lead for c in self.coeffs)

    def evaluate(self, x) -> Rat:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale(self, s) -> "Poly":
        s = mpq(s)
        return Poly(c * s for c in self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = list(self.coeffs)
        while len(out) < len(other.coeffs):
            out.append(ZERO)
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return Poly(out)

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Poly"):
        return poly_divrem(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(format_rational(c))
            else:
                xs = "X" if i == 1 else f"X^{i}"
                terms.append(xs if c == 1 else f"{format_rational(c)}*{xs}")
        return "Poly(" + " + ".join(terms) + ")"


def _school_mul(a: Sequence, b: Sequence) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _kara_mul(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    if min(len(a), len(b)) < KARATSUBA_CUTOFF:
        return _school_mul(a, b)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    if not a1 or not b1:
        return _school_mul(a, b)
    z0 = _kara_mul(a0, b0)
    z2 = _kara_mul(a1, b1)
    sa = list(a0) + [ZERO] * (len(a1) - len(a0))
    for i, c in enumerate(a1):
        sa[i] += c
    sb = list(b0) + [ZERO] * (len(b1) - len(b0))
    for i, c in enumerate(b1):
        sb[i] += c
    z1 = _kara_mul(sa, sb)
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] += c
        z1[i] -= c
    for i, c in enumerate(z2):
        out[i + 2 * h] += c
        if i < len(z1):
            z1[i] -= c
        else:
            z1.append(-c)
    for i, c in enumerate(z1):
        if c != 0:
            out[i + h] += c
    return out


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly.zero()
    return Poly(_kara_mul(p.coeffs, q.coeffs))


def poly_divrem(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Exact division with remainder: p = q*d + r with deg r < deg d."""
    if d.is_zero():
        raise ContractViolation("polynomial division by zero")
    if p.degree < d.degree:
        return Poly.zero(), p
    rem = list(p.coeffs)
    dc = d.coeffs
    dn = len(dc)
    inv_lead = 1 / dc[-1]
    quo = [ZERO] * (len(rem) - dn + 1)
    for k in range(len(rem) - dn, -1, -1):
        c = rem[k + dn - 1]
        if c == 0:
            continue
        q = c * inv_lead
        quo[k] = q
        for j in range(dn - 1):
            rem[k + j] -= q * dc[j]
        rem[k + dn - 1] = ZERO
    return Poly(quo), Poly(rem[: dn - 1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm.

    Each remainder is normalized monic to keep coefficient growth in check.
    """
    if p.is_zero() and q.is_zero():
        raise ContractViolation("gcd(0, 0) is undefined")
    a, b = p, q
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = poly_divrem(a, b)
        a, b = b, (r if r.is_zero() else r.monic())
    return a.monic()


# ---------------------------------------------------------------------------
# product and remainder trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductTree:
    """Binary tree over a polynomial list: node i covers leaves [lo, hi)."""

    poly: Poly
    lo: int
    hi: int
    left: "ProductTree | None" = None
    right: "ProductTree | None" = None

    def __iter__(self) -> Iterator["ProductTree"]:
        yield self
        if self.left is not None:
            yield from self.left
            yield from self.right

    @property
    def root(self) -> Poly:
        return self.poly


def product_tree(ps: Sequence[Poly]) -> ProductTree:
    """Leaf i holds ps[i]; internal nodes hold products of their children."""
    if not ps:
        raise ContractViolation("product tree over empty list")
    for p in ps:
        if p.is_zero():
            raise ContractViolation("product tree leaf is the zero polynomial")

    def build(lo: int, hi: int) -> ProductTree:
        if hi - lo == 1:
            return ProductTree(ps[lo], lo, hi)
        mid = (lo + hi + 1) // 2  # ceil(n/2) / floor(n/2) split
        left = build(lo, mid)
        right = build(mid, hi)
        return ProductTree(poly_mul(left.poly, right.poly), lo, hi, left, right)

    return build(0, len(ps))


def remainder_tree(p: Poly, tree: ProductTree) -> list[Poly]:
    """p mod (each leaf), by reducing against every node on the way down."""
    out: list[Poly] = [Poly.zero()] * (tree.hi - tree.lo)

    def descend(node: ProductTree, r: Poly) -> None:
        _, r = poly_divrem(r, node.poly) if not r.is_zero() else (None, r)
        if node.left is None:
            out[node.lo - tree.lo] = r
            return
        descend(node.left, r)
        descend(node.right, r)

    descend(tree, p)
    return out


# ---------------------------------------------------------------------------
# exact Hankel determinant sign (fraction-free Bareiss elimination)
# ---------------------------------------------------------------------------

def hankel_det_sign(sums: Sequence, dim: int) -> int:
    """Sign of det [sums[i+j]] for i, j in range(dim), computed exactly.

    Needs at least 2*dim - 1 entries.  Returns -1, 0 or +1.
    """
    if dim <= 0:
        raise ContractViolation("hankel_det_sign needs dim >= 1")
    if len(sums) < 2 * dim - 1:
        raise ContractViolation(
            f"hankel_det_sign needs {2 * dim - 1} entries, got {len(sums)}")
    used = [mpq(s) for s in sums[: 2 * dim - 1]]
    den_lcm = mpz(1)
    for s in used:
        den_lcm = gmpy2.lcm(den_lcm, s.denominator)
    # scaling every entry by the positive lcm leaves the sign unchanged
    ints = [mpz(s * den_lcm) for s in used]
    m = [[ints[i + j] for j in range(dim)] for i in range(dim)]
    sign = 1
    prev = mpz(1)
    for k in range(dim - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, dim) if m[r][k] != 0), None)
            if swap is None:
                return 0  # column of zeros below: singular
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, dim):
            row_i = m[i]
            row_k = m[k]
            lead = row_i[k]
            for j in range(k + 1, dim):
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = mpz(0)
        prev = pivot
    last = m[dim - 1][dim - 1]
    if last == 0:
        return 0
    return sign if last > 0 else -sign
