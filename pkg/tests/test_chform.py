"""CH-form versus the dense oracle: exact equivalence, norms, costs."""

import random
import time

import pytest

from stabrank.chform import CHForm, CliffordGate, ch_amplitude, ch_apply, ch_init
from stabrank.exactnum import I_UNIT, INV_SQRT2, ONE, RealQuadratic, ZERO
from stabrank.f2alg import BitVector
from stabrank.tsim import Circuit, Gate, dense_run


def random_clifford_circuit(k, n_gates, rng):
    gates = []
    for _ in range(n_gates):
        if k >= 2 and rng.random() < 0.4:
            a, b = rng.sample(range(k), 2)
            gates.append(Gate(rng.choice(["CZ", "CNOT"]), (a, b)))
        else:
            gates.append(Gate(rng.choice(["H", "S", "X", "Z"]), (rng.randrange(k),)))
    return Circuit(k, tuple(gates))


def evolve(circuit):
    ch = ch_init(BitVector.zero(circuit.qubits))
    for g in circuit.gates:
        ch.apply(g.as_clifford())
    return ch


def test_init_basis_states():
    for s in ("00", "10", "01", "11"):
        ch = ch_init(BitVector.from_string(s))
        vec = ch.dense_vector()
        for i, a in enumerate(vec):
            assert a == (ONE if i == int(s, 2) else ZERO)


def test_hadamard_and_s_basics():
    ch = ch_init(BitVector.from_string("0"))
    ch.apply(CliffordGate("H", (0,)))
    assert ch.dense_vector() == [INV_SQRT2, INV_SQRT2]
    ch.apply(CliffordGate("S", (0,)))
    vec = ch.dense_vector()
    assert vec[0] == INV_SQRT2
    assert vec[1] == INV_SQRT2 * I_UNIT


def test_bell_circuit_amplitudes():
    ch = ch_init(BitVector.from_string("00"))
    ch.apply(CliffordGate("H", (0,)))
    ch.apply(CliffordGate("CNOT", (0, 1)))
    assert ch.amplitude(BitVector.from_string("00")) == INV_SQRT2
    assert ch.amplitude(BitVector.from_string("01")) == ZERO
    assert ch.amplitude(BitVector.from_string("10")) == ZERO
    assert ch.amplitude(BitVector.from_string("11")) == INV_SQRT2


def test_functional_apply_leaves_original():
    ch = ch_init(BitVector.from_string("0"))
    ch2 = ch_apply(ch, CliffordGate("H", (0,)))
    assert ch.dense_vector() == [ONE, ZERO]
    assert ch2.dense_vector() == [INV_SQRT2, INV_SQRT2]
    assert ch_amplitude(ch2, BitVector.from_string("1")) == INV_SQRT2


def test_dense_oracle_equivalence_randomized():
    rng = random.Random(12345)
    for _ in range(200):
        k = rng.randint(1, 6)
        circuit = random_clifford_circuit(k, rng.randint(1, 50), rng)
        assert evolve(circuit).dense_vector() == dense_run(circuit)


def test_norm_preserved():
    rng = random.Random(54321)
    for _ in range(60):
        k = rng.randint(1, 6)
        circuit = random_clifford_circuit(k, rng.randint(1, 40), rng)
        vec = evolve(circuit).dense_vector()
        total = None
        for a in vec:
            m = a.magnitude_sq()
            total = m if total is None else total + m
        assert total == RealQuadratic(1, 0)


def test_gate_validation():
    with pytest.raises(ValueError):
        CliffordGate("T", (0,))
    with pytest.raises(ValueError):
        CliffordGate("CNOT", (1, 1))
    ch = ch_init(BitVector.zero(2))
    with pytest.raises(ValueError):
        ch.apply(CliffordGate("H", (5,)))


def test_hadamard_cost_scaling():
    # Median per-H wall time fits below a power 2.5 in qubit count.
    times = {}
    for k in (4, 8, 16, 32, 64):
        ch = CHForm(k)
        rng = random.Random(k)
        # warm the tableau into a generic configuration
        for _ in range(3 * k):
            ch.apply(CliffordGate("CNOT", tuple(rng.sample(range(k), 2))))
            ch.apply(CliffordGate("S", (rng.randrange(k),)))
        reps = 400
        samples = []
        for _ in range(5):
            t0 = time.perf_counter()
            for i in range(reps):
                ch.apply(CliffordGate("H", (i % k,)))
            samples.append((time.perf_counter() - t0) / reps)
        times[k] = min(samples)
    import math

    ratios = [
        math.log(times[b] / times[a]) / math.log(b / a)
        for a, b in [(4, 16), (8, 32), (16, 64)]
    ]
    fitted = max(ratios)
    assert fitted <= 2.5, f"H-gate cost exponent {fitted:.2f}, times={times}"
