"""Arithmetic-circuit DAGs, exact evaluation, and reverse differentiation.

Circuits are immutable gate lists in topological order.  Each gate is an
input, a rational constant, or a binary operation on two earlier gates.
The size measure is gate count plus edge count (two edges per op gate).

The reverse transform augments a circuit so that, alongside a designated
output z, it also computes every partial derivative dz/dx by accumulating
one adjoint per gate (sum rule for +/-, product rule for *).  Division
gates are rejected there: every circuit this package builds keeps division
out of the derivative path by folding constants like 1/i! at build time.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq, mpz

from .algebra import ZERO, Poly
from .errors import ContractViolation

# gate tuples: ("in", name) | ("const", mpq) | (op, left_id, right_id)
OPS = ("+", "-", "*", "/")

# asserted bound on size(reverse transform) / size(original)
REVERSE_SIZE_FACTOR = 6


class Circuit:
    """Immutable arithmetic circuit with named inputs and outputs."""

    __slots__ = ("gates", "inputs", "outputs")

    def __init__(self, gates: Sequence[tuple], inputs: dict, outputs: dict):
        object.__setattr__(self, "gates", tuple(gates))
        object.__setattr__(self, "inputs", dict(inputs))
        object.__setattr__(self, "outputs", dict(outputs))
        for gid, gate in enumerate(self.gates):
            if gate[0] in ("in", "const"):
                continue
            if gate[0] not in OPS:
                raise ContractViolation(f"unknown gate kind {gate[0]!r}")
            if not (0 <= gate[1] < gid and 0 <= gate[2] < gid):
                raise ContractViolation(f"gate {gid} references a later gate")

    def __setattr__(self, name, value):
        raise AttributeError("Circuit is immutable")

    @property
    def size(self) -> int:
        gates = len(self.gates)
        edges = 2 * sum(1 for g in self.gates if g[0] in OPS)
        return gates + edges

    def dump(self) -> str:
        """Debug listing, one `gateId: kind(args)` per line (not a stable format)."""
        lines = []
        for gid, gate in enumerate(self.gates):
            if gate[0] == "in":
                lines.append(f"{gid}: input({gate[1]})")
            elif gate[0] == "const":
                lines.append(f"{gid}: const({gate[1]})")
            else:
                lines.append(f"{gid}: {gate[0]}({gate[1]}, {gate[2]})")
        for name, gid in sorted(self.outputs.items()):
            lines.append(f"out {name} = {gid}")
        return "\n".join(lines)


class CircuitBuilder:
    """Accumulates gates during construction; freeze() returns the Circuit."""

    def __init__(self):
        self.gates: list[tuple] = []
        self.inputs: dict = {}
        self.outputs: dict = {}
        self._const_cache: dict = {}

    def add_input(self, name: str) -> int:
        if name in self.inputs:
            return self.inputs[name]
        self.gates.append(("in", name))
        gid = len(self.gates) - 1
        self.inputs[name] = gid
        return gid

    def add_const(self, value) -> int:
        value = mpq(value)
        gid = self._const_cache.get(value)
        if gid is not None:
            return gid
        self.gates.append(("const", value))
        gid = len(self.gates) - 1
        self._const_cache[value] = gid
        return gid

    def add_op(self, kind: str, left: int, right: int) -> int:
        self.gates.append((kind, left, right))
        return len(self.gates) - 1

    def add(self, a: int, b: int) -> int:
        return self.add_op("+", a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add_op("-", a, b)

    def mul(self, a: int, b: int) -> int:
        return self.add_op("*", a, b)

    def set_output(self, name: str, gid: int) -> None:
        self.outputs[name] = gid

    def freeze(self) -> Circuit:
        return Circuit(self.gates, self.inputs, self.outputs)


def eval_circuit(c: Circuit, assignment: dict) -> dict:
    """Exact gate-by-gate evaluation; returns output name -> value."""
    missing = [name for name in c.inputs if name not in assignment]
    if missing:
        raise ContractViolation(f"unassigned inputs: {sorted(missing)}")
    values: list = [None] * len(c.gates)
    for gid, gate in enumerate(c.gates):
        kind = gate[0]
        if kind == "in":
            values[gid] = mpq(assignment[gate[1]])
        elif kind == "const":
            values[gid] = gate[1]
        else:
            a = values[gate[1]]
            b = values[gate[2]]
            if kind == "+":
                values[gid] = a + b
            elif kind == "-":
                values[gid] = a - b
            elif kind == "*":
                values[gid] = a * b
            else:
                if b == 0:
                    raise ContractViolation(f"division by zero at gate {gid}")
                values[gid] = a / b
    return {name: values[gid] for name, gid in c.outputs.items()}


def baur_strassen(c: Circuit, output: str) -> Circuit:
    """Augment c to compute all partials of one output by reverse accumulation.

    The result keeps every original gate and output and adds, for each input
    named x, an output `d:x` holding the derivative of the designated output.
    Size grows by at most REVERSE_SIZE_FACTOR.  Division gates feeding the
    output are unsupported.
    """
    if output not in c.outputs:
        raise ContractViolation(f"unknown output {output!r}")
    root = c.outputs[output]
    n = len(c.gates)
    # restrict the sweep to gates the output actually depends on
    reachable = [False] * n
    reachable[root] = True
    for gid in range(root, -1, -1):
        if not reachable[gid]:
            continue
        gate = c.gates[gid]
        if gate[0] in OPS:
            if gate[0] == "/":
                raise ContractViolation(
                    f"division gate {gid} is not supported on the derivative path")
            reachable[gate[1]] = True
            reachable[gate[2]] = True

    builder = CircuitBuilder()
    builder.gates = list(c.gates)
    builder.inputs = dict(c.inputs)
    builder.outputs = dict(c.outputs)
    builder._const_cache = {
        gate[1]: gid for gid, gate in enumerate(c.gates) if gate[0] == "const"
    }
    one = builder.add_const(1)
    zero = builder.add_const(0)

    # adjoint[g] = gate id computing d(output)/d(gate g)
    adjoint: list = [None] * n
    adjoint[root] = one

    def accumulate(gid: int, contribution: int) -> None:
        if adjoint[gid] is None:
            adjoint[gid] = contribution
        else:
            adjoint[gid] = builder.add(adjoint[gid], contribution)

    for gid in range(root, -1, -1):
        if not reachable[gid] or adjoint[gid] is None:
            continue
        gate = c.gates[gid]
        kind = gate[0]
        if kind in ("in", "const"):
            continue
        left, right = gate[1], gate[2]
        adj = adjoint[gid]
        if kind == "+":
            accumulate(left, adj)
            accumulate(right, adj)
        elif kind == "-":
            accumulate(left, adj)
            accumulate(right, builder.sub(zero, adj))
        else:  # "*"
            accumulate(left, builder.mul(adj, right))
            accumulate(right, builder.mul(adj, left))

    for name, gid in c.inputs.items():
        builder.set_output(f"d:{name}", adjoint[gid] if adjoint[gid] is not None else zero)
    out = builder.freeze()
    if out.size > REVERSE_SIZE_FACTOR * c.size:
        raise AssertionError(
            f"reverse transform size {out.size} exceeds "
            f"{REVERSE_SIZE_FACTOR} * {c.size}")
    return out


def _dense_sumset(A: Sequence, S: Sequence) -> list:
    out = {a + s for a in A for s in S}
    return sorted(out)


def build_shift_count_circuit(A: Sequence, S: Sequence, B: Sequence) -> Circuit:
    """Circuit with inputs x_a, y_s computing pair counts and their B-sum.

    Internally z_b = sum of x_a * y_s over a + s = b for every b in A + S,
    wired as the straight-line composition of three stages: moment evaluation
    of the two weighted indicator functions, moment convolution with constant
    1/i! factors, and interpolation back onto the known support A + S.  The
    single extra output z sums z_b over b in both A + S and B.

    All stage coefficients depend only on the supports, so they are emitted
    as constant gates and the circuit stays division-free.
    """
    if not A or not S:
        raise ContractViolation("build_shift_count_circuit needs nonempty A and S")
    A = [mpq(a) for a in A]
    S = [mpq(s) for s in S]
    Bset = {mpq(b) for b in B}
    support = _dense_sumset(A, S)
    t = len(support)
    builder = CircuitBuilder()
    xs = [builder.add_input(f"x:{a}") for a in A]
    ys = [builder.add_input(f"y:{s}") for s in S]

    def moment_stage(points, in_gates):
        # moments[i] = sum of point^i * input, i < t
        moments = []
        powers = [mpq(1)] * len(points)
        for i in range(t):
            acc = None
            for j, p in enumerate(points):
                if powers[j] == 0:
                    continue
                term = (in_gates[j] if powers[j] == 1
                        else builder.mul(builder.add_const(powers[j]), in_gates[j]))
                acc = term if acc is None else builder.add(acc, term)
            moments.append(acc if acc is not None else builder.add_const(0))
            for j, p in enumerate(points):
                powers[j] *= p
        return moments

    f_moments = moment_stage(A, xs)
    g_moments = moment_stage(S, ys)

    # convolution stage: h_k = k! * sum (f_i/i!) (g_j/j!) over i+j=k
    fact = [mpz(1)] * max(t, 1)
    for i in range(1, t):
        fact[i] = fact[i - 1] * i
    h_moments = []
    for k in range(t):
        acc = None
        for i in range(k + 1):
            coef = mpq(fact[k], fact[i] * fact[k - i])  # binomial(k, i)
            term = builder.mul(f_moments[i], g_moments[k - i])
            if coef != 1:
                term = builder.mul(builder.add_const(coef), term)
            acc = term if acc is None else builder.add(acc, term)
        h_moments.append(acc)

    # interpolation stage: z_b = sum_k w[b][k] * h_k with constant weights
    # from the master polynomial M(X) = prod(X - b'): the row for b is
    # (M / (X - b)) scaled by its value at b
    master = Poly.from_roots(support)
    z_sum = None
    for b in support:
        qc = [ZERO] * t
        carry = master.coeffs[t]
        for j in range(t - 1, -1, -1):
            qc[j] = carry
            carry = master.coeffs[j] + carry * b
        norm = ZERO
        pw = mpq(1)
        for k in range(t):
            norm += qc[k] * pw
            pw *= b
        acc = None
        for k in range(t):
            w = qc[k] / norm
            if w == 0:
                continue
            term = builder.mul(builder.add_const(w), h_moments[k])
            acc = term if acc is None else builder.add(acc, term)
        zb = acc if acc is not None else builder.add_const(0)
        builder.set_output(f"z:{b}", zb)
        if b in Bset:
            z_sum = zb if z_sum is None else builder.add(z_sum, zb)
    builder.set_output("z", z_sum if z_sum is not None else builder.add_const(0))
    return builder.freeze()
