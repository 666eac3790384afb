"""Output-sensitive exact sumsets and convolutions of rational sets.

The engine combines three ingredients: the moment/recurrence machinery that
produces, for subsets A' of A and B' of B, the polynomial with root set
A' + B'; random restrictions that separate every pair of sumset elements
into different polynomials with high probability; and a coprime basis
computation that then splits the polynomials into the linear factors X - c.
A verification step makes the whole loop zero-error: the result is accepted
only when the basis consists of exactly |A + B| distinct linear factors,
otherwise fresh restrictions are drawn.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .algebra import Poly
from .coprime import coprime_basis
from .errors import ContractViolation, RetryCapExceeded
from .prony import (
    SparseFn,
    _integer_scaled,
    _lambda_scaled,
    _sumset_size_scaled,
    convolve_power_sums,
    interpolate_from_power_sums,
)

# proof-verbatim number of random restrictions per (L, log n) unit
DEFAULT_RESTRICTION_CONSTANT = 160
# converts probability-zero nontermination into a loud diagnostic
DEFAULT_RETRY_CAP = 100


def real_set(values: Iterable) -> tuple:
    """Canonical set of rationals: strictly increasing tuple of mpq."""
    return tuple(sorted({mpq(v) for v in values}))


@dataclass(frozen=True)
class SumsetParams:
    """Tuning knobs threaded through every randomized solver.

    The defaults follow the published analysis; restriction_constant is far
    larger than what retry health needs in practice and may be lowered for
    experiments at the cost of a (still verified, so harmless) retry risk.
    """

    restriction_constant: int = DEFAULT_RESTRICTION_CONSTANT
    retry_cap: int = DEFAULT_RETRY_CAP
    threads: int = 1


DEFAULT_PARAMS = SumsetParams()


@dataclass(frozen=True)
class RestrictionFamily:
    """Subset pairs (A_i, B_i) drawn by the separation sampler."""

    pairs: tuple

    @property
    def m(self) -> int:
        return len(self.pairs)


@dataclass
class RunStats:
    """Counters reported by the Las Vegas loop."""

    retries: int = 0
    work_units: int = 0
    restrictions: int = 0


class _BudgetExceeded(Exception):
    """Internal: the work meter tripped; never escapes the public API."""


class WorkMeter:
    """Abstract-cost counter, charged in output-size-proportional units."""

    __slots__ = ("units", "limit")

    def __init__(self, limit: int | None = None):
        self.units = 0
        self.limit = limit

    def charge(self, amount: int) -> None:
        self.units += amount
        if self.limit is not None and self.units > self.limit:
            raise _BudgetExceeded()


def random_restrictions(A: Sequence, B: Sequence, rng,
                        constant: int = DEFAULT_RESTRICTION_CONSTANT) -> RestrictionFamily:
    """Subset pairs separating every two sumset elements with high probability.

    Each pair keeps A at rate 2^-l for l uniform below L = ceil(log2 |A|) + 1
    and keeps B at rate 1/2.  The subsampling coins are exact dyadics
    (getrandbits), so a fixed seed reproduces the family bit for bit.
    """
    if not A or not B:
        raise ContractViolation("random_restrictions needs nonempty sets")
    L = max(0, math.ceil(math.log2(len(A)))) + 1
    n = len(A) + len(B)
    m = math.ceil(constant * L * math.log2(n))
    pairs = []
    for _ in range(m):
        level = rng.randrange(L)
        Ai = tuple(a for a in A if rng.getrandbits(level) == 0) if level else tuple(A)
        Bi = tuple(b for b in B if rng.getrandbits(1) == 0)
        pairs.append((Ai, Bi))
    return RestrictionFamily(tuple(pairs))


def verify_linear_basis(basis, t: int):
    """Accept a basis exactly when it is t distinct monic linear factors.

    Soundness: every member divides some restriction polynomial, whose roots
    all lie in A + B; t distinct roots inside a t-element set must be all of
    it.  Returns the sorted roots, or None to signal a redraw.
    """
    roots = []
    for q in basis:
        if q.degree != 1:
            return None
        roots.append(-q.coeffs[0])
    roots = sorted(set(roots))
    if len(roots) != t:
        return None
    return tuple(roots)


def _compute_sumset(A, B, rng, params: SumsetParams, meter: WorkMeter,
                    stats: RunStats | None = None) -> tuple:
    A = real_set(A)
    B = real_set(B)
    if not A or not B:
        raise ContractViolation("compute_sumset needs nonempty sets")
    As, Bs, q = _integer_scaled(A, B)
    t = _sumset_size_scaled(As, Bs, charge=meter.charge)

    def build(pair) -> Poly:
        Ai, Bi = pair
        return _lambda_scaled(Ai, Bi, t, q)

    for attempt in range(params.retry_cap):
        family = random_restrictions(A, B, rng, params.restriction_constant)
        if stats is not None:
            stats.restrictions += family.m
        scaled_pairs = [
            (tuple(mpz(a * q) for a in Ai), tuple(mpz(b * q) for b in Bi))
            for Ai, Bi in family.pairs
        ]
        meter.charge(t * family.m)
        if params.threads > 1:
            with ThreadPoolExecutor(max_workers=params.threads) as pool:
                lambdas = list(pool.map(build, scaled_pairs))
        else:
            lambdas = [build(pair) for pair in scaled_pairs]
        basis = coprime_basis([lam for lam in lambdas if lam.degree >= 1])
        meter.charge(t)
        roots = verify_linear_basis(basis, t)
        if roots is not None:
            if stats is not None:
                stats.retries = attempt
                stats.work_units = meter.units
            return roots
    raise RetryCapExceeded(
        f"sumset verification failed {params.retry_cap} times "
        f"(|A|={len(A)}, |B|={len(B)}, t={t})")


def compute_sumset(A, B, rng, params: SumsetParams = DEFAULT_PARAMS,
                   stats: RunStats | None = None) -> tuple:
    """Exactly A + B, always; randomness affects only the running time."""
    return _compute_sumset(A, B, rng, params, WorkMeter(), stats)


def convolve(f: SparseFn, g: SparseFn, rng,
             params: SumsetParams = DEFAULT_PARAMS) -> SparseFn:
    """Exact convolution of strictly positive finite-support functions.

    Positivity keeps the support of the result equal to the sumset of the
    supports (no cancelation), which is what the support recovery computes;
    values are then interpolated from the convolved moments.
    """
    for name, fn in (("f", f), ("g", g)):
        for _, v in fn:
            if v <= 0:
                raise ContractViolation(f"convolve requires positive values, {name} has {v}")
    if not len(f) or not len(g):
        return SparseFn()
    support = compute_sumset(f.support(), g.support(), rng, params)
    t = len(support)
    # change of variables x -> q*x keeps values and shifts support
    q = mpz(1)
    for x, _ in f:
        q = gmpy2.lcm(q, x.denominator)
    for x, _ in g:
        q = gmpy2.lcm(q, x.denominator)
    fs = _scaled_moments(f, q, 2 * t)
    gs = _scaled_moments(g, q, 2 * t)
    hs = convolve_power_sums(fs, gs)
    scaled_support = [x * q for x in support]
    result = interpolate_from_power_sums(hs, scaled_support)
    return SparseFn((x / q, v) for x, v in result)


def _scaled_moments(fn: SparseFn, q, k: int) -> tuple:
    sums = [mpq(0)] * k
    for x, v in fn:
        p = v
        xs = mpq(x) * q
        for i in range(k):
            sums[i] += p
            p *= xs
    return tuple(sums)
