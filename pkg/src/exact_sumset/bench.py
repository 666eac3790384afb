"""Timing suites for the CLI `bench` subcommand.

These print wall-clock tables to standard output.  The `sumset` suite pits
the output-sensitive engine against the quadratic reference on
arithmetic-progression inputs (|A + B| = 2n - 1, the regime the engine is
built for).  Exact arithmetic grows numbers as instances grow, so expect
the engine's per-doubling ratio to reflect bit growth on top of the
output-sensitive operation count; the README discusses this at length.
"""

from __future__ import annotations

import random
import time

from .constellation import constellation
from .oracle import brute_constellation, brute_min_poly, brute_sumset
from .prony import SparseFn, minimal_polynomial, power_sums, sumset_size
from .sumset import DEFAULT_PARAMS, RunStats, SumsetParams, compute_sumset


def _time(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def bench_sumset(seed: int, sizes, params: SumsetParams) -> None:
    sizes = sizes or [64, 128, 256]
    rng = random.Random(seed)
    print(f"{'n':>6} {'|A+B|':>7} {'engine[s]':>10} {'brute[s]':>10} "
          f"{'retries':>8}")
    prev_engine = prev_brute = None
    for n in sizes:
        A = tuple(range(n))
        stats = RunStats()
        out, dt_engine = _time(lambda: compute_sumset(A, A, rng, params, stats))
        expect = tuple(range(2 * n - 1))
        assert tuple(int(c) for c in out) == expect
        _, dt_brute = _time(lambda: brute_sumset(A, A))
        line = (f"{n:>6} {len(out):>7} {dt_engine:>10.3f} {dt_brute:>10.3f} "
                f"{stats.retries:>8}")
        if prev_engine:
            line += (f"   ratios: engine x{dt_engine / prev_engine:.2f} "
                     f"brute x{dt_brute / prev_brute:.2f}")
        print(line, flush=True)
        prev_engine, prev_brute = dt_engine, dt_brute


def bench_micro(seed: int, sizes, params: SumsetParams) -> None:
    sizes = sizes or [16, 32, 64]
    rng = random.Random(seed)
    print(f"{'t':>6} {'moments[s]':>11} {'minpoly[s]':>11} {'size[s]':>9}")
    for t in sizes:
        pts = sorted(rng.sample(range(1, 4 * t + 1), t))
        f = SparseFn((p, 1) for p in pts)
        sums, dt_moments = _time(lambda: power_sums(f, 2 * t))
        lam, dt_minpoly = _time(lambda: minimal_polynomial(sums))
        assert lam == brute_min_poly(pts)
        half = pts[: max(1, t // 2)]
        _, dt_size = _time(lambda: sumset_size(half, half))
        print(f"{t:>6} {dt_moments:>11.3f} {dt_minpoly:>11.3f} {dt_size:>9.3f}",
              flush=True)


def bench_constellation(seed: int, sizes, params: SumsetParams) -> None:
    sizes = sizes or [32, 64, 128]
    rng = random.Random(seed)
    print(f"{'n':>6} {'engine[s]':>10} {'brute[s]':>10} {'shifts':>7}")
    for n in sizes:
        universe = range(10 * n)
        B = tuple(sorted(rng.sample(universe, min(n, 10 * n))))
        A = tuple(b - B[0] for b in B[: max(1, n // 4)])
        out, dt_engine = _time(lambda: constellation(A, B, rng))
        want, dt_brute = _time(lambda: brute_constellation(A, B))
        assert out == want
        print(f"{n:>6} {dt_engine:>10.3f} {dt_brute:>10.3f} {len(out):>7}",
              flush=True)


SUITES = {
    "sumset": bench_sumset,
    "micro": bench_micro,
    "constellation": bench_constellation,
}


def run_suite(name: str, seed: int = 0, sizes=None,
              params: SumsetParams = DEFAULT_PARAMS) -> None:
    SUITES[name](seed, sizes, params)
