"""Prefix- and interval-restricted sumsets, and the time-budgeted primitive.

The budgeted primitive runs the full sumset engine under an abstract work
allowance proportional to s * log^3(s): small sumsets finish, large ones
trip the allowance and come back as a claim that |A + B| >= s (correct with
high probability; completed sets are always exact).

The interval solver partitions both sets into rank blocks and only sums the
block pairs whose value range can touch the window.  The prefix solver
recurses along a staircase: whenever a subproblem claims to be large it is
split into one rectangle that lies fully under the threshold (solved
outright) and two thinner rectangles (recursed), while the rectangle fully
above the threshold is discarded.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import ContractViolation
from .sumset import (
    DEFAULT_PARAMS,
    RunStats,
    SumsetParams,
    WorkMeter,
    _BudgetExceeded,
    _compute_sumset,
    compute_sumset,
    real_set,
)

# budget = BUDGET_FACTOR * restriction_constant * s * ceil(log2(s + 2))^3
# abstract work units; the factor is calibrated so that instances with
# |A + B| <= s virtually always complete (see tests), then frozen
BUDGET_FACTOR = 16

# fall back to the quadratic reference past this recursion depth; the
# analysis says the staircase never gets this deep, but correctness should
# not hinge on that
DEPTH_CAP_SLACK = 8


@dataclass(frozen=True)
class ClaimAtLeast:
    """Budget verdict: the sumset was not computed and likely has >= bound elements."""

    bound: int


def derive_stream(rng) -> random.Random:
    """Child RNG stream; deterministic function of the parent state."""
    return random.Random(rng.getrandbits(64))


def sumset_with_budget(A, B, s: int, rng,
                       params: SumsetParams = DEFAULT_PARAMS):
    """Either exactly A + B, or ClaimAtLeast(s) after the budget is spent.

    A returned set is unconditionally correct; a claim is correct with high
    probability.
    """
    if s < 1:
        raise ContractViolation("budget parameter s must be >= 1")
    limit = BUDGET_FACTOR * params.restriction_constant * s * \
        math.ceil(math.log2(s + 2)) ** 3
    meter = WorkMeter(limit=limit)
    try:
        return _compute_sumset(A, B, rng, params, meter)
    except _BudgetExceeded:
        return ClaimAtLeast(s)


def _rank_blocks(xs: Sequence, g: int) -> list:
    size = math.ceil(len(xs) / g)
    return [xs[i: i + size] for i in range(0, len(xs), size)]


def interval_sumset(A, B, lo, hi, rng,
                    params: SumsetParams = DEFAULT_PARAMS,
                    debug: bool = False) -> tuple:
    """Exactly (A + B) intersected with [lo, hi].

    Runs every block-count guess (the right one depends on the unknown
    output size); each guess is a complete correct algorithm, and the result
    of the cheapest one is returned.  With debug=True the per-guess results
    are cross-checked equal.
    """
    lo = mpq(lo)
    hi = mpq(hi)
    if lo > hi:
        raise ContractViolation("interval bounds must satisfy lo <= hi")
    A = real_set(A)
    B = real_set(B)
    if not A or not B:
        return ()
    guess_count = max(1, math.ceil(math.log2(len(A) * len(B))))
    results = []
    for k in range(guess_count):
        guess = 2 ** k
        need = math.ceil(len(A) * len(B) / guess)
        root = math.isqrt(need)
        g = max(1, root if root * root >= need else root + 1)
        stream = derive_stream(rng)
        work = 0
        found: set = set()
        ablocks = _rank_blocks(A, g)
        bblocks = _rank_blocks(B, g)
        if debug:
            for blocks in (ablocks, bblocks):
                for x, y in zip(blocks, blocks[1:]):
                    assert x[-1] < y[0]
        for ab in ablocks:
            for bb in bblocks:
                lo_pair = ab[0] + bb[0]
                hi_pair = ab[-1] + bb[-1]
                if hi_pair < lo or lo_pair > hi:
                    continue  # not even partially relevant
                stats = RunStats()
                pair_sum = compute_sumset(ab, bb, stream, params, stats)
                work += len(pair_sum) + 1
                found.update(c for c in pair_sum if lo <= c <= hi)
        results.append((work, tuple(sorted(found))))
    if debug:
        assert len({r for _, r in results}) == 1
    return min(results)[1]


def _brute_clipped(A: Sequence, B: Sequence, u) -> set:
    return {a + b for a in A for b in B if a + b <= u}


def _prefix_guess_machine(A, B, u, s: int, depth_cap: int, rng,
                          params: SumsetParams, debug: bool = False):
    """Generator stepping one staircase node at a time; yields work deltas
    and finally ('done', result_set)."""
    acc: set = set()
    queue = deque([(A, B, 0)])
    while queue:
        Aseg, Bseg, depth = queue.popleft()
        if not Aseg or not Bseg or Aseg[0] + Bseg[0] > u:
            continue
        if depth > depth_cap:
            acc |= _brute_clipped(Aseg, Bseg, u)
            yield len(Aseg) * len(Bseg) + 1
            continue
        verdict = sumset_with_budget(Aseg, Bseg, s, rng, params)
        if isinstance(verdict, ClaimAtLeast):
            half = (len(Aseg) + 1) // 2
            A1, A2 = Aseg[:half], Aseg[half:]
            cut = u - A1[-1]
            split = 0
            while split < len(Bseg) and Bseg[split] <= cut:
                split += 1
            B1, B2 = Bseg[:split], Bseg[split:]
            if debug:
                assert not A2 or A1[-1] < A2[0]
                assert not B1 or not B2 or (B1[-1] <= cut < B2[0])
                assert not B1 or A1[-1] + B1[-1] <= u
            if A1 and B1:
                stats = RunStats()
                full = compute_sumset(A1, B1, rng, params, stats)
                acc.update(full)
                yield len(full) + 1
            queue.append((A1, B2, depth + 1))
            queue.append((A2, B1, depth + 1))
            # (A2, B2) is discarded: those sums exceed u by construction
        else:
            acc.update(c for c in verdict if c <= u)
            yield len(verdict) + 1
    yield ("done", acc)


def prefix_sumset(A, B, u, rng, params: SumsetParams = DEFAULT_PARAMS,
                  debug: bool = False) -> tuple:
    """Exactly (A + B) intersected with (-inf, u], always.

    Both sets are shifted to be nonnegative and clipped at the shifted
    threshold.  Size guesses 2^0, 2^1, ... run as round-robin interleaved
    staircase machines; the first machine to drain its queue wins.
    """
    u = mpq(u)
    A = real_set(A)
    B = real_set(B)
    if not A or not B:
        return ()
    alpha = A[0]
    beta = B[0]
    shift = alpha + beta
    if u < shift:
        return ()
    u2 = u - shift
    A2 = tuple(a - alpha for a in A if a - alpha <= u2)
    B2 = tuple(b - beta for b in B if b - beta <= u2)
    depth_cap = 2 * math.ceil(math.log2(len(B2) + 1)) + DEPTH_CAP_SLACK
    guess_count = max(1, math.ceil(math.log2(len(A2) + len(B2))))
    machines = []
    for k in range(guess_count):
        stream = derive_stream(rng)
        machines.append(
            _prefix_guess_machine(A2, B2, u2, 2 ** k, depth_cap, stream,
                                  params, debug))
    while True:
        for machine in machines:
            step = next(machine)
            if isinstance(step, tuple) and step[0] == "done":
                return tuple(sorted(c + shift for c in step[1]))
