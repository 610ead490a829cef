"""Clifford+T simulation: parser, gadgets, decompositions, amplitudes."""

import random
from fractions import Fraction

import pytest

from stabrank.exactnum import INV_SQRT2, ONE, RealQuadratic, SQRT2, ZERO, ZETA
from stabrank.f2alg import BitVector
from stabrank.tsim import (
    Circuit,
    CircuitSyntaxError,
    Gate,
    amplitude,
    dense_apply,
    dense_initial,
    dense_run,
    gadgetize,
    magic_state_dense,
    outcome_probability,
    parse_circuit,
    simulate_amplitudes,
    t_decomposition,
)


def random_circuit(k, n_gates, t_budget, rng):
    gates = []
    placed = 0
    while len(gates) < n_gates:
        r = rng.random()
        if placed < t_budget and r < 0.2:
            gates.append(Gate("T", (rng.randrange(k),)))
            placed += 1
        elif k >= 2 and r < 0.5:
            a, b = rng.sample(range(k), 2)
            gates.append(Gate(rng.choice(["CZ", "CNOT"]), (a, b)))
        else:
            gates.append(Gate(rng.choice(["H", "S", "X", "Z"]), (rng.randrange(k),)))
    return Circuit(k, tuple(gates))


# -- parser -----------------------------------------------------------------


def test_parse_basic():
    c = parse_circuit("qubits 1\nH 0\nT 0\nH 0\n")
    assert c.qubits == 1 and c.t_count == 1
    assert [g.kind for g in c.gates] == ["H", "T", "H"]


def test_parse_comments_and_blank_lines():
    c = parse_circuit("# intro\n\nqubits 2 # two qubits\nCNOT 0 1\n# done\n")
    assert c.qubits == 2 and len(c.gates) == 1


def test_parse_errors_carry_position():
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit("qubits 2\nFOO 0\n")
    assert err.value.line == 2 and err.value.column == 1
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit("qubits 2\nH 5\n")
    assert err.value.line == 2 and err.value.column == 3
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nCNOT 1 1\n")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("H 0\n")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits x\n")


def test_parse_roundtrip():
    rng = random.Random(6)
    for _ in range(20):
        c = random_circuit(rng.randint(1, 4), rng.randint(1, 12), 3, rng)
        assert parse_circuit(c.to_text()) == c


# -- gadgetization -----------------------------------------------------------


def test_gadgetize_structure():
    c = parse_circuit("qubits 1\nH 0\nT 0\n")
    g = gadgetize(c)
    assert g.circuit.qubits == 2
    assert [x.kind for x in g.circuit.gates] == ["H", "CNOT"]
    assert g.circuit.gates[1].qubits == (0, 1)
    assert g.ancilla_sources == ((1, 0),)
    assert g.t_count == 1


def test_gadgetize_no_t_is_identity():
    c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\n")
    g = gadgetize(c)
    assert g.circuit == c and g.t_count == 0


def test_gadgetize_adds_one_cnot_per_t():
    rng = random.Random(21)
    for _ in range(20):
        c = random_circuit(rng.randint(1, 3), rng.randint(1, 10), 3, rng)
        g = gadgetize(c)
        assert all(x.kind != "T" for x in g.circuit.gates)
        extra = len(g.circuit.gates) - (len(c.gates) - c.t_count)
        assert extra == c.t_count


def test_postselect_identity_exact():
    rng = random.Random(17)
    for _ in range(60):
        k = rng.randint(1, 3)
        c = random_circuit(k, rng.randint(1, 10), 3, rng)
        n = c.t_count
        direct = dense_run(c)
        g = gadgetize(c)
        vec = dense_initial(k)
        magic = magic_state_dense(n)
        big = [a * b for a in vec for b in magic] if n else list(vec)
        for gate in g.circuit.gates:
            big = dense_apply(big, gate, k + n)
        scale = SQRT2**n
        post = [big[x << n] * scale for x in range(1 << k)]
        assert post == direct


# -- magic-state decompositions ----------------------------------------------


def t_tensor(n):
    vec = [ONE]
    for _ in range(n):
        vec = [a * b for a in vec for b in (ONE, ZETA)]
    return vec


def test_t_decomposition_sizes_and_sums():
    assert len(t_decomposition(1)) == 2
    assert len(t_decomposition(2)) == 2
    assert len(t_decomposition(3)) == 3
    assert len(t_decomposition(4)) == 4
    assert len(t_decomposition(5)) <= 8  # 2^ceil(5/2) via block product
    for n in (1, 2, 3, 4, 5):
        assert t_decomposition(n).resum() == t_tensor(n)


def test_t_decomposition_strategies():
    assert len(t_decomposition(3, "product")) == 8
    assert len(t_decomposition(3, "block")) == 4
    for strategy in ("product", "block"):
        assert t_decomposition(3, strategy).resum() == t_tensor(3)
    with pytest.raises(ValueError):
        t_decomposition(0)
    with pytest.raises(ValueError):
        t_decomposition(2, "bogus")


# -- amplitudes ---------------------------------------------------------------


def test_hth_amplitude():
    c = parse_circuit("qubits 1\nH 0\nT 0\nH 0\n")
    expected = (ONE + ZETA).scale(Fraction(1, 2))
    for method in ("dense", "decomposition"):
        assert amplitude(c, BitVector.from_string("0"), method) == expected


def test_clifford_only_single_term():
    c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\n")
    for outcome, expected in (("00", INV_SQRT2), ("01", ZERO), ("11", INV_SQRT2)):
        assert amplitude(c, BitVector.from_string(outcome), "decomposition") == expected


def test_methods_agree_randomized():
    rng = random.Random(2718)
    for _ in range(60):
        k = rng.randint(1, 4)
        c = random_circuit(k, rng.randint(1, 16), 4, rng)
        outcomes = [BitVector(k, i) for i in range(1 << k)]
        dec = simulate_amplitudes(c, outcomes, "decomposition")
        den = simulate_amplitudes(c, outcomes, "dense")
        assert dec == den


def test_probabilities_sum_to_one():
    rng = random.Random(161)
    for _ in range(25):
        k = rng.randint(1, 4)
        c = random_circuit(k, rng.randint(1, 12), 4, rng)
        total = RealQuadratic(0, 0)
        for i in range(1 << k):
            exact, approx = outcome_probability(c, BitVector(k, i))
            assert abs(float(exact) - approx) < 1e-12
            total = total + exact
        assert total == RealQuadratic(1, 0)


def test_bell_probabilities():
    c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\n")
    exact, approx = outcome_probability(c, BitVector.from_string("00"))
    assert exact == RealQuadratic(Fraction(1, 2), 0)
    exact, _ = outcome_probability(c, BitVector.from_string("01"))
    assert exact == RealQuadratic(0, 0)


def test_forced_decomposition_sizes_give_same_amplitudes():
    c = parse_circuit("qubits 2\nH 0\nT 0\nCNOT 0 1\nT 1\nH 1\nT 0\n")
    outcomes = [BitVector(2, i) for i in range(4)]
    reference = simulate_amplitudes(c, outcomes, "dense")
    for strategy in ("auto", "block", "product"):
        d = t_decomposition(c.t_count, strategy)
        got = simulate_amplitudes(c, outcomes, "decomposition", decomposition=d)
        assert got == reference


def test_amplitude_input_validation():
    c = parse_circuit("qubits 2\nH 0\n")
    with pytest.raises(ValueError):
        amplitude(c, BitVector.from_string("0"))
    with pytest.raises(ValueError):
        simulate_amplitudes(c, [BitVector(2, 0)], "bogus")
