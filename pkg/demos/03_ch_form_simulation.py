"""Phase-exact Clifford simulation in CH-form.

The CH-form stores w * U_C * H(h) * e_s and updates gate by gate in
O(k^2); amplitudes come back as exact Q(zeta_8) values including the
global phase, which plain stabilizer tableaus lose.
"""

import random

from stabrank.chform import CliffordGate, ch_init
from stabrank.f2alg import BitVector
from stabrank.tsim import Circuit, Gate, dense_run

# Bell pair: H then CNOT.
ch = ch_init(BitVector.zero(2))
ch.apply(CliffordGate("H", (0,)))
ch.apply(CliffordGate("CNOT", (0, 1)))
for bits in ("00", "01", "10", "11"):
    print(f"<{bits}|Bell> =", ch.amplitude(BitVector.from_string(bits)))

# Random circuit: CH-form equals the dense simulator exactly, not
# approximately -- the equality below is exact field-element equality.
rng = random.Random(0)
k = 5
gates = []
for _ in range(40):
    if rng.random() < 0.4:
        a, b = rng.sample(range(k), 2)
        gates.append(Gate(rng.choice(["CZ", "CNOT"]), (a, b)))
    else:
        gates.append(Gate(rng.choice(["H", "S", "X", "Z"]), (rng.randrange(k),)))
circuit = Circuit(k, tuple(gates))

ch = ch_init(BitVector.zero(k))
for g in circuit.gates:
    ch.apply(g.as_clifford())
print("\n40-gate 5-qubit circuit: CH == dense?", ch.dense_vector() == dense_run(circuit))

norm = None
for a in ch.dense_vector():
    m = a.magnitude_sq()
    norm = m if norm is None else norm + m
print("exact norm after the circuit:", norm)
