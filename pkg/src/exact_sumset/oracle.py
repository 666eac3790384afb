"""Independent brute-force reference implementations.

These are the ground truth the fast algorithms are tested against.  They are
deliberately written from the problem definitions, without sharing any code
with the main algorithm modules, and favor clarity over speed.
"""

from __future__ import annotations

from bisect import bisect_left

from gmpy2 import mpq

from .algebra import Poly


def brute_sumset(A, B):
    """A + B by the double loop, deduplicated and sorted."""
    out = set()
    for a in A:
        for b in B:
            out.add(a + b)
    return tuple(sorted(out))


def brute_convolve(f, g):
    """Pointwise convolution sum over all support pairs; zero values dropped."""
    acc: dict = {}
    for (x, fx) in f:
        for (y, gy) in g:
            z = x + y
            acc[z] = acc.get(z, mpq(0)) + fx * gy
    return tuple(sorted((z, v) for z, v in acc.items() if v != 0))


def brute_constellation(A, B):
    """All shifts s with A + s subset of B, tried from the candidates B - a0."""
    if not A:
        return tuple(sorted(B))
    bset = set(B)
    a0 = min(A)
    hits = []
    for b in B:
        s = b - a0
        if all((a + s) in bset for a in A):
            hits.append(s)
    return tuple(sorted(hits))


def brute_capped(items, t):
    """All subset sums <= t of a multiset given as (value, multiplicity) pairs.

    Exact-rational dynamic programming over a growing set of reachable sums.
    """
    sums = {mpq(0)}
    for value, mult in items:
        value = mpq(value)
        for _ in range(mult):
            new = set()
            for s in sums:
                c = s + value
                if c <= t:
                    new.add(c)
            if not new - sums:
                break  # further copies reach nothing new
            sums |= new
    return tuple(sorted(sums))


def brute_3sum(A, B, C) -> bool:
    """Is there a + b = c with a in A, b in B, c in C?  Sorted lookup on C."""
    cs = sorted(C)
    for a in A:
        for b in B:
            s = a + b
            i = bisect_left(cs, s)
            if i < len(cs) and cs[i] == s:
                return True
    return False


def brute_min_poly(support) -> Poly:
    """Direct expansion of prod(X - a) over the given points."""
    p = Poly.one()
    for a in support:
        p = p * Poly.x_minus(a)
    return p
