"""Strong simulation of a Clifford+T circuit through magic-state gadgets.

Each T gate becomes a CNOT onto an ancilla prepared in the magic state;
a stabilizer decomposition of the n-fold magic state then turns the
amplitude into a short sum of CH-form amplitudes, all exactly.
"""

from stabrank.f2alg import BitVector
from stabrank.tsim import gadgetize, outcome_probability, parse_circuit, simulate_amplitudes, t_decomposition

TEXT = """\
# 2-qubit circuit with three T gates
qubits 2
H 0
T 0
CNOT 0 1
T 1
H 1
T 0
H 0
"""

circuit = parse_circuit(TEXT)
print("parsed:", circuit.qubits, "qubits,", len(circuit.gates), "gates, T-count", circuit.t_count)

gadget = gadgetize(circuit)
print("gadgetized onto", gadget.circuit.qubits, "qubits; ancilla sources", gadget.ancilla_sources)

d = t_decomposition(circuit.t_count)
print("magic-state decomposition:", len(d), "terms")

outcomes = [BitVector(2, i) for i in range(4)]
dec = simulate_amplitudes(circuit, outcomes, "decomposition")
den = simulate_amplitudes(circuit, outcomes, "dense")
print("\noutcome  amplitude (exact)                 matches dense oracle")
total = None
for x, a, b in zip(outcomes, dec, den):
    prob = a.magnitude_sq()
    total = prob if total is None else total + prob
    print(f"  {x}   {str(a):35s} {a == b}")
print("probabilities sum to", total)

exact, approx = outcome_probability(circuit, BitVector.from_string("00"))
print("\nP(00) =", exact, "=", approx)
