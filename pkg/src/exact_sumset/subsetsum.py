"""Output-sensitive subset sums over nonnegative rationals.

All subset sums of a multiset are assembled by divide and conquer over the
items, merging partial answers with the output-sensitive sumset engine.
Target-capped subset sums use two levels of color coding: items of one
scale are scattered into random parts so that, with constant probability,
no two chosen items collide, after which prefix-restricted sumset folds
assemble everything below the cap.  Both capped levels are one-sided: they
may miss sums (hence the boosting) but never invent one.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import ContractViolation
from .restricted import derive_stream, prefix_sumset
from .sumset import DEFAULT_PARAMS, SumsetParams, compute_sumset, real_set

# boosting exponent for the per-layer repetitions in capped_subset_sums;
# the published analysis uses 102, which buys failure probability n^-101
# at a staggering constant; tests may lower it with a documented failure
# budget because every run stays sound (subset of the truth)
DEFAULT_BOOST_EXPONENT = 102

# repetitions of the second level inside the first: ceil(4 * log2(k + 1))
LEVEL1_BOOST_FACTOR = 4


class RatMultiset:
    """Multiset of nonnegative rationals as sorted (value, multiplicity) pairs."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable = ()):
        merged: dict = {}
        for value, mult in items:
            value = mpq(value)
            mult = int(mult)
            if value < 0:
                raise ContractViolation(f"negative value {value}")
            if mult < 1:
                raise ContractViolation(f"multiplicity {mult} must be >= 1")
            merged[value] = merged.get(value, 0) + mult
        object.__setattr__(self, "items",
                           tuple(sorted(merged.items())))

    def __setattr__(self, name, value):
        raise AttributeError("RatMultiset is immutable")

    @staticmethod
    def from_values(values: Iterable) -> "RatMultiset":
        return RatMultiset((v, 1) for v in values)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.items)

    def values(self) -> tuple:
        return tuple(v for v, _ in self.items)

    def copies(self) -> list:
        out = []
        for v, m in self.items:
            out.extend([v] * m)
        return out

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMultiset) and self.items == other.items

    def __repr__(self) -> str:
        return f"RatMultiset({list(self.items)!r})"


def _bundle_values(X: RatMultiset) -> list:
    """Binary-split multiplicities into single pseudo-items.

    (v, m) becomes v, 2v, 4v, ..., rv with the powers of two and remainder
    summing to m, so that subsets of the bundles realize exactly the sums
    {0, v, ..., m v}.
    """
    out = []
    for v, m in X:
        power = 1
        while m > 0:
            take = min(power, m)
            out.append(v * take)
            m -= take
            power *= 2
    return out


def all_subset_sums(X: RatMultiset, rng,
                    params: SumsetParams = DEFAULT_PARAMS,
                    debug: bool = False) -> tuple:
    """The set of all subset sums of X (including 0), exactly.

    Divide and conquer over the multiplicity bundles; each merge is one
    output-sensitive sumset computation.
    """
    bundles = _bundle_values(X)

    def solve(lo: int, hi: int) -> tuple:
        if hi - lo == 1:
            w = bundles[lo]
            return real_set((0, w))
        mid = (lo + hi) // 2
        left = solve(lo, mid)
        right = solve(mid, hi)
        merged = compute_sumset(left, right, rng, params)
        if debug:
            assert len(merged) >= len(left) + len(right) - 1
        return merged

    if not bundles:
        return (mpq(0),)
    return solve(0, len(bundles))


def _check_scale(A: RatMultiset, u) -> "mpq":
    if not len(A):
        raise ContractViolation("empty multiset has no scale")
    u = mpq(u) if u is not None else A.items[0][0]
    if u <= 0:
        raise ContractViolation("scale u must be positive")
    lo, hi = A.items[0][0], A.items[-1][0]
    if lo < u or hi > 2 * u:
        raise ContractViolation(f"values must lie in [{u}, {2*u}]")
    return u


def capped_level2(A: RatMultiset, t, rng,
                  params: SumsetParams = DEFAULT_PARAMS,
                  u=None) -> tuple:
    """One color-coding round for same-scale items: a subset of S(A, t).

    Scatters the item copies into 2k^2 parts (k = floor(t/u)) and folds the
    part value-sets with prefix-restricted sumsets; any fixed subset sum
    survives when its at most k items avoid pairwise collisions, which
    happens with probability at least 1/2.
    """
    t = mpq(t)
    if not len(A):
        return (mpq(0),)
    u = _check_scale(A, u)
    k = int(t / u)
    if k == 0:
        return (mpq(0),)
    parts: list[set] = [set() for _ in range(2 * k * k)]
    for value in A.copies():
        parts[rng.randrange(len(parts))].add(value)
    acc = (mpq(0),)
    for part in parts:
        if not part:
            continue
        block = real_set(part | {mpq(0)})
        acc = prefix_sumset(acc, block, t, rng, params)
    return acc


def capped_level1(A: RatMultiset, t, rng,
                  params: SumsetParams = DEFAULT_PARAMS,
                  u=None) -> tuple:
    """Scaled color coding for same-scale items: a subset of S(A, t).

    Tiny scales are solved outright (every subset already fits under t).
    Otherwise the copies are scattered into k parts, each part is solved by
    boosted second-level rounds below a reduced cap, and the part results
    are folded pairwise with prefix-restricted sumsets.
    """
    t = mpq(t)
    if not len(A):
        return (mpq(0),)
    u = _check_scale(A, u)
    n = A.n
    if u <= t / (2 * n):
        return all_subset_sums(A, rng, params)
    k = int(t / u)
    if k == 0:
        return (mpq(0),)
    parts: list[list] = [[] for _ in range(k)]
    for value in A.copies():
        parts[rng.randrange(k)].append(value)
    lg = math.ceil(math.log2(k + 1))
    t_part = min(t, 12 * lg * u)
    rounds = math.ceil(LEVEL1_BOOST_FACTOR * math.log2(k + 1))
    level: list = []
    for part in parts:
        if not part:
            continue
        sub = RatMultiset.from_values(part)
        found: set = {mpq(0)}
        for _ in range(rounds):
            found.update(capped_level2(sub, t_part, derive_stream(rng), params, u))
        level.append(real_set(found))
    if not level:
        return (mpq(0),)
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            nxt.append(prefix_sumset(level[i], level[i + 1], t, rng, params))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return tuple(c for c in level[0] if c <= t)


def _preprocess(X: RatMultiset, t) -> RatMultiset:
    """Drop items above the target and cap multiplicities at floor(t/v)."""
    kept = []
    for v, m in X:
        if v == 0 or v > t:
            continue
        kept.append((v, min(m, int(t / v))))
    return RatMultiset(kept)


def capped_subset_sums(X: RatMultiset, t, rng,
                       params: SumsetParams = DEFAULT_PARAMS,
                       boost_exponent: int = DEFAULT_BOOST_EXPONENT,
                       debug: bool = False) -> tuple:
    """S(X, t) = all subset sums up to t; exact with high probability.

    Always sound (never reports a non-sum).  A recursive half-split first
    estimates the output size, which fixes the boosting count; items are
    then layered by scale, each layer is solved by boosted first-level
    color coding, small items are solved exactly, and everything is folded
    together under the cap.
    """
    t = mpq(t)
    if t < 0:
        raise ContractViolation("target must be >= 0")
    A = _preprocess(X, t)
    n = A.n
    if n == 0:
        return (mpq(0),)
    if n == 1:
        v, m = A.items[0]
        return tuple(v * j for j in range(m + 1) if v * j <= t)

    copies = A.copies()
    X1 = RatMultiset.from_values(copies[0::2])
    X2 = RatMultiset.from_values(copies[1::2])
    s1 = len(capped_subset_sums(X1, t / 2, derive_stream(rng), params,
                                boost_exponent))
    s2 = len(capped_subset_sums(X2, t / 2, derive_stream(rng), params,
                                boost_exponent))

    L = math.ceil(math.log2(n))
    layers: list[list] = [[] for _ in range(L + 1)]
    tail = []
    tail_cut = t / 2 ** (L + 1)
    for v, m in A:
        if v <= tail_cut:
            tail.append((v, m))
            continue
        # level l collects values in (t/2^(l+1), t/2^l]
        level = 0
        while level < L and 2 ** (level + 1) * v <= t:
            level += 1
        layers[level].append((v, m))

    rounds = max(1, math.ceil(boost_exponent * math.log2(max(n, 2))
                              + 2 * math.log2(max(s1, 1))
                              + 2 * math.log2(max(s2, 1))))
    pieces: list = []
    if tail:
        pieces.append(all_subset_sums(RatMultiset(tail), derive_stream(rng), params))
    for level, bucket in enumerate(layers):
        if not bucket:
            continue
        sub = RatMultiset(bucket)
        found: set = {mpq(0)}
        for _ in range(rounds):
            found.update(capped_level1(sub, t, derive_stream(rng), params,
                                       u=t / 2 ** (level + 1)))
        pieces.append(real_set(found))

    result = (mpq(0),)
    for piece in pieces:
        before = (len(result), len(piece))
        result = prefix_sumset(result, piece, t, rng, params)
        if debug:
            assert len(result) >= max(before)
    if debug:
        assert n <= len(result)
    return result
