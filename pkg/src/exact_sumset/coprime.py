"""Reduced coprime bases of polynomial sets.

A coprime basis of a set P of polynomials is a pairwise-coprime set Q such
that every member of P factors (with repetition, up to scalars) into members
of Q; it is reduced when every member of Q divides some member of P.  Bases
are built by extending one polynomial at a time with batched remainder
computations, merging two bases through bit-indexed products, and a
divide-and-conquer driver.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import Poly, poly_divrem, poly_gcd, poly_mul, product_tree, remainder_tree
from .errors import ContractViolation


class CoprimeBasis:
    """Sorted tuple of monic nonconstant polynomials, pairwise coprime."""

    __slots__ = ("polys",)

    def __init__(self, polys: Iterable[Poly] = ()):
        uniq = {p.coeffs: p for p in polys}
        ordered = sorted(uniq.values(), key=lambda p: (p.degree, p.coeffs))
        for p in ordered:
            if p.degree < 1:
                raise ContractViolation("basis members must be nonconstant")
            if not p.is_monic():
                raise ContractViolation("basis members must be monic")
        object.__setattr__(self, "polys", tuple(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("CoprimeBasis is immutable")

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoprimeBasis) and self.polys == other.polys

    def __repr__(self) -> str:
        return f"CoprimeBasis({list(self.polys)!r})"

    def total_degree(self) -> int:
        return sum(p.degree for p in self.polys)

    def factor_exponents(self, p: Poly) -> dict[Poly, int]:
        """Exponent of each basis member in p, by repeated trial division.

        Raises if p does not factor into basis members times a constant.
        """
        if p.is_zero():
            raise ContractViolation("cannot factor the zero polynomial")
        exps: dict[Poly, int] = {}
        rem = p.monic()
        for q in self.polys:
            while rem.degree >= q.degree:
                quo, r = poly_divrem(rem, q)
                if not r.is_zero():
                    break
                exps[q] = exps.get(q, 0) + 1
                rem = quo
        if rem.degree != 0:
            raise ContractViolation(f"{p!r} does not factor into the basis")
        return exps


def _split_until_coprime(members: list[Poly], fresh: list[Poly]) -> list[Poly]:
    """Restore pairwise coprimality by gcd splitting.

    `members` are already pairwise coprime among themselves; `fresh` may
    collide with them or with each other.  Each hit replaces a pair (a, b)
    with (g, a/g, b/g), which strictly lowers total degree, so this stops.
    """
    settled = [p for p in members if p.degree >= 1]
    queue = [p.monic() for p in fresh if p.degree >= 1]
    while queue:
        cand = queue.pop()
        for i, other in enumerate(settled):
            g = poly_gcd(cand, other)
            if g.degree >= 1:
                del settled[i]
                co_cand, _ = poly_divrem(cand, g)
                co_other, _ = poly_divrem(other, g)
                queue.append(g)
                for piece in (co_cand, co_other):
                    if piece.degree >= 1:
                        queue.append(piece.monic())
                break
        else:
            if not any(cand == s for s in settled):
                settled.append(cand)
    return settled


def extend_basis(p: Poly, basis: CoprimeBasis) -> CoprimeBasis:
    """Reduced coprime basis of (source set of `basis`) plus {p}.

    Follows the batched-gcd recipe: reduce p against every member through a
    product/remainder tree, split each member into its p-part and co-part,
    and append what is left of p after dividing out everything shared.
    Degree-0 results are discarded on the spot.
    """
    if p.is_zero():
        raise ContractViolation("cannot extend a basis by the zero polynomial")
    p = p.monic() if p.degree >= 1 else p
    if p.degree < 1:
        return basis
    members = list(basis)
    if not members:
        return CoprimeBasis([p])
    tree = product_tree(members)
    residues = remainder_tree(p, tree)
    kept: list[Poly] = []
    fresh: list[Poly] = []
    shared_product = Poly.one()
    clean = True
    for q, res in zip(members, residues):
        g = q if res.is_zero() else poly_gcd(res, q)
        if g.degree == 0:
            kept.append(q)
            continue
        shared_product = poly_mul(shared_product, g)
        co, _ = poly_divrem(q, g)
        fresh.append(g)
        if co.degree >= 1:
            fresh.append(co.monic())
            if poly_gcd(g, co).degree >= 1:
                clean = False
    gcd_with_product = poly_gcd(p, shared_product) if shared_product.degree >= 1 else Poly.one()
    tail, _ = poly_divrem(p, gcd_with_product)
    if tail.degree >= 1:
        fresh.append(tail.monic())
        if gcd_with_product.degree >= 1 and poly_gcd(tail, gcd_with_product).degree >= 1:
            clean = False
    if clean:
        # collisions are impossible here: pieces from different members
        # divide coprime members, same-member pairs and the tail were just
        # checked, and everything else is coprime by construction
        return CoprimeBasis(kept + fresh)
    return CoprimeBasis(_split_until_coprime(kept, fresh))


def merge_bases(q1: CoprimeBasis, q2: CoprimeBasis) -> CoprimeBasis:
    """Reduced coprime basis of the union of the two source sets.

    Members of q2 are folded in through bit-indexed products: position l of
    the binary index of each member decides which of two products it joins,
    and extending q1 by all 2L products recovers every member as a gcd.
    """
    if not len(q2):
        return q1
    members = list(q2)
    bits = max(1, (len(members) - 1).bit_length())
    out = q1
    for level in range(bits):
        for side in (0, 1):
            group = [q for idx, q in enumerate(members) if (idx >> level) & 1 == side]
            if not group:
                continue
            product = group[0]
            for q in group[1:]:
                product = poly_mul(product, q)
            out = extend_basis(product, out)
    return out


def coprime_basis(ps: Sequence[Poly]) -> CoprimeBasis:
    """Reduced coprime basis of a polynomial list, by divide and conquer.

    Constants are ignored; a singleton input returns its monic form.
    """
    work = []
    seen = set()
    for p in ps:
        if p.is_zero():
            raise ContractViolation("coprime basis over a zero polynomial")
        if p.degree < 1:
            continue
        mp = p.monic()
        if mp.coeffs not in seen:
            seen.add(mp.coeffs)
            work.append(mp)
    if not work:
        return CoprimeBasis()

    def build(lo: int, hi: int) -> CoprimeBasis:
        if hi - lo == 1:
            return CoprimeBasis([work[lo]])
        mid = (lo + hi) // 2
        return merge_bases(build(lo, mid), build(mid, hi))

    return build(0, len(work))
