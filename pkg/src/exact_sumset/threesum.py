"""3SUM with preprocessing: decompose once, answer subset queries fast.

Preprocessing covers all solution pairs (a, b) with a + b in C by a
decomposition into rectangle pairs with small sumsets plus a remainder set.
Queries scan the remainder and run the output-sensitive sumset engine on
each rectangle intersected with the query sets.  Query correctness never
depends on the decomposition meeting its size targets, only on the covering
property, so the default provider is a sound-and-complete quadratic
fallback: no rectangles, every solution pair in the remainder.  A genuine
subquadratic decomposition can be plugged in through the provider hook.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Sequence

from gmpy2 import mpq

from .errors import ContractViolation
from .sumset import DEFAULT_PARAMS, SumsetParams, compute_sumset, real_set


@dataclass(frozen=True)
class BsgDecomposition:
    """Rectangles (A_i, B_i) plus a remainder covering all solution pairs."""

    pairs: tuple
    remainder: tuple
    alpha: object

    @property
    def k(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class ThreeSumIndex:
    """Preprocessed data for subset 3SUM queries."""

    A: tuple
    B: tuple
    C: tuple
    decomposition: BsgDecomposition
    seed: int
    params: SumsetParams = field(default=DEFAULT_PARAMS)


def _check_alpha(alpha) -> "mpq":
    alpha = mpq(alpha)
    if not (0 < alpha < 1):
        raise ContractViolation(f"alpha must be in (0, 1), got {alpha}")
    return alpha


def bsg_decompose(A, B, C, alpha, rng) -> BsgDecomposition:
    """Fallback decomposition provider: an exhaustive remainder, no rectangles.

    Sound and complete by construction (quadratic scan); the rng argument is
    part of the provider interface and unused here.
    """
    alpha = _check_alpha(alpha)
    A = real_set(A)
    B = real_set(B)
    C = real_set(C)
    cset = set(C)
    remainder = tuple((a, b) for a in A for b in B if a + b in cset)
    return BsgDecomposition(pairs=(), remainder=remainder, alpha=alpha)


def default_alpha(n: int) -> "mpq":
    """Rational stand-in for n^(-1/7), clamped inside (0, 1)."""
    if n <= 1:
        return mpq(1, 2)
    scaled = round(10 ** 6 * n ** (1.0 / 7.0))
    return min(mpq(999, 1000), mpq(10 ** 6, scaled))


def preprocess(A, B, C, rng, alpha=None,
               provider: Callable = bsg_decompose,
               params: SumsetParams = DEFAULT_PARAMS) -> ThreeSumIndex:
    """Build the query index; alpha defaults to n^(-1/7)."""
    A = real_set(A)
    B = real_set(B)
    C = real_set(C)
    n = max(len(A), len(B), len(C))
    if alpha is None:
        alpha = default_alpha(n)
    seed = rng.getrandbits(64)
    if n == 0:
        decomposition = BsgDecomposition((), (), _check_alpha(alpha))
    else:
        decomposition = provider(A, B, C, alpha, random.Random(seed))
    return ThreeSumIndex(A=A, B=B, C=C, decomposition=decomposition,
                         seed=seed, params=params)


def _sorted_contains(xs: Sequence, x) -> bool:
    i = bisect_left(xs, x)
    return i < len(xs) and xs[i] == x


def _subset_of(sub: Sequence, sup: Sequence, label: str) -> None:
    for x in sub:
        if not _sorted_contains(sup, x):
            raise ContractViolation(f"{label} query set is not a subset ({x})")


def query(idx: ThreeSumIndex, A_q, B_q, C_q) -> bool:
    """Is there a + b = c with a in A', b in B', c in C'?  Exact."""
    A_q = real_set(A_q)
    B_q = real_set(B_q)
    C_q = real_set(C_q)
    _subset_of(A_q, idx.A, "A")
    _subset_of(B_q, idx.B, "B")
    _subset_of(C_q, idx.C, "C")
    if not A_q or not B_q or not C_q:
        return False
    aset = set(A_q)
    bset = set(B_q)
    cset = set(C_q)
    for a, b in idx.decomposition.remainder:
        if a in aset and b in bset and (a + b) in cset:
            return True
    rng = random.Random(idx.seed)
    for Ai, Bi in idx.decomposition.pairs:
        Ar = tuple(x for x in Ai if x in aset)  # sorted-merge intersection
        Br = tuple(x for x in Bi if x in bset)
        if not Ar or not Br:
            continue
        for c in compute_sumset(Ar, Br, rng, idx.params):
            if c in cset:
                return True
    return False
