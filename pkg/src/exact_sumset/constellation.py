"""Geometric pattern matching: all shifts s with A + s contained in B.

The candidate set starts as B - min(A) (any feasible shift must map the
anchor element into B) and is thinned level by level: level l tests the
candidates against a rate-2^-l subsample of A through the derivative trick.
A circuit summing the pair counts z_b over b in B is differentiated with
respect to each candidate's input; the derivative equals |A'| exactly when
A' + s lands inside B.  The last level uses all of A, so the answer is
unconditionally correct; randomness only shapes the running time.
"""

from __future__ import annotations

import math
from typing import Sequence

from gmpy2 import mpq

from .circuit import baur_strassen, build_shift_count_circuit, eval_circuit
from .errors import ContractViolation, RetryCapExceeded
from .sumset import real_set

# abort-and-restart budget: a run may spend this factor times
# (|A| + |B|) * (log2(|A| + |B|) + 2)^3 units of filter work before a
# restart with fresh randomness; calibrated against the benchmark suite so
# that random instances essentially never trip it
WORK_BUDGET_FACTOR = 8
RESTART_CAP = 100


def filter_shifts(A: Sequence, B: Sequence, S: Sequence) -> tuple:
    """{s in S : A + s subset of B}, via one reverse-differentiated circuit.

    An empty S returns empty; an empty A keeps all of S (vacuous
    containment), which is what the level schedule expects.
    """
    A = real_set(A)
    B = real_set(B)
    S = real_set(S)
    if not S:
        return ()
    if not A:
        return S
    circuit = build_shift_count_circuit(A, S, B)
    grad = baur_strassen(circuit, "z")
    assignment = {name: 1 for name in grad.inputs}
    values = eval_circuit(grad, assignment)
    want = len(A)
    return tuple(s for s in S if values[f"d:y:{s}"] == want)


def _filter_work(A: Sequence, S: Sequence, B: Sequence) -> int:
    # |A + S| + |B|: the cost measure of one filtering level
    return len({a + s for a in A for s in S}) + len(B)


def constellation(A: Sequence, B: Sequence, rng,
                  budget_factor: int = WORK_BUDGET_FACTOR,
                  trace: list | None = None) -> tuple:
    """All shifts s with A + s contained in B, exactly.

    Runs the level schedule under a work budget; a run that exceeds it is
    abandoned and restarted with fresh randomness (the result, whenever a
    run completes, is always correct).
    """
    A = real_set(A)
    B = real_set(B)
    if not A or not B:
        raise ContractViolation("constellation needs nonempty sets")
    n = len(A) + len(B)
    levels = math.ceil(math.log2(n))
    anchor = A[0]
    initial = real_set(b - anchor for b in B)
    budget = budget_factor * n * (math.log2(n) + 2) ** 3
    for _ in range(RESTART_CAP):
        S = initial
        if trace is not None:
            trace.clear()
            trace.append(S)
        work = 0
        aborted = False
        for level in range(levels, -1, -1):
            if level:
                Al = tuple(a for a in A if rng.getrandbits(level) == 0)
            else:
                Al = A
            work += _filter_work(Al, S, B) if S else len(B)
            if work > budget:
                aborted = True
                break
            S = filter_shifts(Al, B, S)
            if trace is not None:
                trace.append(S)
        if not aborted:
            return S
    raise RetryCapExceeded(
        f"constellation exceeded its work budget {RESTART_CAP} times "
        f"(|A|={len(A)}, |B|={len(B)})")


def constellation_nd(A: Sequence, B: Sequence, rng) -> tuple:
    """d-dimensional convenience wrapper over the one-dimensional solver.

    Feasible shifts project onto feasible shifts in every coordinate, so the
    product of the per-coordinate shift sets is a complete candidate list;
    each candidate vector is then checked directly.
    """
    A = sorted({tuple(mpq(x) for x in p) for p in A})
    B = sorted({tuple(mpq(x) for x in p) for p in B})
    if not A or not B:
        raise ContractViolation("constellation_nd needs nonempty sets")
    dim = len(A[0])
    if any(len(p) != dim for p in A) or any(len(p) != dim for p in B):
        raise ContractViolation("points must share one dimension")
    if dim == 1:
        return tuple((s,) for s in constellation([p[0] for p in A],
                                                 [p[0] for p in B], rng))
    per_coord = [
        constellation([p[k] for p in A], [p[k] for p in B], rng)
        for k in range(dim)
    ]
    bset = set(B)
    hits = []

    def walk(k: int, prefix: tuple) -> None:
        if k == dim:
            if all(tuple(x + s for x, s in zip(p, prefix)) in bset for p in A):
                hits.append(prefix)
            return
        for s in per_coord[k]:
            walk(k + 1, prefix + (s,))

    walk(0, ())
    return tuple(sorted(hits))
