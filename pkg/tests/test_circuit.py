import random
from collections import Counter

import pytest
from gmpy2 import mpq

from exact_sumset import (
    ContractViolation,
    baur_strassen,
    build_shift_count_circuit,
    eval_circuit,
)
from exact_sumset.circuit import REVERSE_SIZE_FACTOR, CircuitBuilder

from _symbolic import circuit_to_mpoly


def random_circuit(rng, max_gates=200, nvars=5, mul_bias=0.3):
    """Random division-free circuit with one output; bounded mul depth keeps
    the symbolic expansion affordable."""
    b = CircuitBuilder()
    names = [f"v{i}" for i in range(nvars)]
    gates = [b.add_input(n) for n in names]
    target = rng.randrange(nvars, max_gates)
    while len(b.gates) < target:
        roll = rng.random()
        if roll < 0.12:
            gates.append(b.add_const(mpq(rng.randrange(-4, 5), rng.choice([1, 2]))))
            continue
        left = rng.choice(gates)
        right = rng.choice(gates)
        if roll < 0.12 + mul_bias:
            gates.append(b.mul(left, right))
        elif roll < 0.56 + mul_bias:
            gates.append(b.add(left, right))
        else:
            gates.append(b.sub(left, right))
    b.set_output("z", gates[-1])
    return b.freeze(), names


class TestEval:
    def test_examples(self):
        b = CircuitBuilder()
        b.set_output("z", b.mul(b.add_input("x"), b.add_input("y")))
        assert eval_circuit(b.freeze(), {"x": 3, "y": 5})["z"] == 15

        b = CircuitBuilder()
        x = b.add_input("x")
        b.set_output("z", b.mul(b.add(x, b.add_input("y")), x))
        assert eval_circuit(b.freeze(), {"x": 2, "y": 1})["z"] == 6

        b = CircuitBuilder()
        b.set_output("z", b.add_const(mpq(3, 4)))
        assert eval_circuit(b.freeze(), {})["z"] == mpq(3, 4)

    def test_missing_input(self):
        b = CircuitBuilder()
        b.set_output("z", b.add_input("x"))
        with pytest.raises(ContractViolation):
            eval_circuit(b.freeze(), {})

    def test_division_gate_evaluates(self):
        b = CircuitBuilder()
        b.set_output("z", b.add_op("/", b.add_input("x"), b.add_input("y")))
        c = b.freeze()
        assert eval_circuit(c, {"x": 1, "y": 3})["z"] == mpq(1, 3)
        with pytest.raises(ContractViolation):
            eval_circuit(c, {"x": 1, "y": 0})


class TestBaurStrassen:
    def test_examples(self):
        b = CircuitBuilder()
        b.set_output("z", b.mul(b.add_input("x"), b.add_input("y")))
        g = baur_strassen(b.freeze(), "z")
        out = eval_circuit(g, {"x": 3, "y": 5})
        assert (out["d:x"], out["d:y"], out["z"]) == (5, 3, 15)

        b = CircuitBuilder()
        x = b.add_input("x")
        b.set_output("z", b.mul(b.add(x, b.add_input("y")), x))
        out = eval_circuit(baur_strassen(b.freeze(), "z"), {"x": 2, "y": 1})
        assert out["d:x"] == 5 and out["d:y"] == 2

        b = CircuitBuilder()
        x = b.add_input("x")
        b.add_input("y")
        b.set_output("z", x)
        out = eval_circuit(baur_strassen(b.freeze(), "z"), {"x": 7, "y": 1})
        assert out["d:x"] == 1 and out["d:y"] == 0

    def test_unknown_output(self):
        b = CircuitBuilder()
        b.set_output("z", b.add_input("x"))
        with pytest.raises(ContractViolation):
            baur_strassen(b.freeze(), "w")

    def test_division_rejected(self):
        b = CircuitBuilder()
        b.set_output("z", b.add_op("/", b.add_input("x"), b.add_input("y")))
        with pytest.raises(ContractViolation):
            baur_strassen(b.freeze(), "z")

    def test_against_symbolic_oracle(self):
        rng = random.Random(21)
        checked = 0
        while checked < 25:
            c, names = random_circuit(rng, max_gates=60, nvars=4)
            polys = circuit_to_mpoly(c, names)
            if len(polys[c.outputs["z"]]) > 4000:
                continue  # regenerate: expansion too large to be a useful oracle
            checked += 1
            z_poly = polys[c.outputs["z"]]
            g = baur_strassen(c, "z")
            assert g.size <= REVERSE_SIZE_FACTOR * c.size
            point = {n: mpq(rng.randrange(-5, 6), rng.choice([1, 2, 3]))
                     for n in names}
            out = eval_circuit(g, point)
            coords = [point[n] for n in names]
            assert out["z"] == z_poly.eval(coords)
            for i, n in enumerate(names):
                assert out[f"d:{n}"] == z_poly.diff(i).eval(coords)


class TestShiftCountCircuit:
    def test_examples(self):
        c = build_shift_count_circuit([0], [0], [0])
        assert eval_circuit(c, {"x:0": 1, "y:0": 1})["z"] == 1
        c = build_shift_count_circuit([0, 1], [0], [0, 1])
        assert eval_circuit(c, {"x:0": 1, "x:1": 1, "y:0": 1})["z"] == 2
        c = build_shift_count_circuit([0, 1], [0], [5])
        assert eval_circuit(c, {"x:0": 1, "x:1": 1, "y:0": 1})["z"] == 0

    def test_empty_inputs_rejected(self):
        with pytest.raises(ContractViolation):
            build_shift_count_circuit([], [0], [0])

    def test_pair_counts_on_indicators(self):
        rng = random.Random(22)
        for _ in range(10):
            A = sorted(rng.sample(range(-10, 11), rng.randrange(1, 6)))
            S = sorted(rng.sample(range(-10, 11), rng.randrange(1, 6)))
            B = sorted(rng.sample(range(-20, 21), rng.randrange(1, 8)))
            c = build_shift_count_circuit(A, S, B)
            assign = {f"x:{mpq(a)}": 1 for a in A}
            assign.update({f"y:{mpq(s)}": 1 for s in S})
            out = eval_circuit(c, assign)
            counts = Counter(a + s for a in A for s in S)
            for b, k in counts.items():
                assert out[f"z:{mpq(b)}"] == k
            assert out["z"] == sum(k for b, k in counts.items() if b in set(B))

    def test_weighted_inputs(self):
        # the z_b outputs are bilinear pair sums, not just counts
        rng = random.Random(23)
        A = [0, 2, 3]
        S = [1, 4]
        c = build_shift_count_circuit(A, S, [3, 4])
        xw = {a: mpq(rng.randrange(1, 7), 2) for a in A}
        yw = {s: mpq(rng.randrange(1, 7), 3) for s in S}
        assign = {f"x:{mpq(a)}": xw[a] for a in A}
        assign.update({f"y:{mpq(s)}": yw[s] for s in S})
        out = eval_circuit(c, assign)
        for b in {a + s for a in A for s in S}:
            want = sum(xw[a] * yw[s] for a in A for s in S if a + s == b)
            assert out[f"z:{mpq(b)}"] == want
