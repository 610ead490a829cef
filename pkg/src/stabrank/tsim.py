"""Strong simulation of Clifford+T circuits via gadgetized decompositions.

Each T gate is traded for a CNOT onto a fresh ancilla prepared in the
(normalized) single-qubit magic state (e_0 + zeta e_1)/sqrt(2); keeping
the ancilla outcome 0 gives the exact identity

    V e_0^k = sqrt(2)^n (1 tensor <0|^n) U (e_0^k tensor magic^n)

with U Clifford-only, so circuit amplitudes decompose linearly over any
exact stabilizer decomposition of the n-fold magic state.  Every term
is evaluated in CH-form; a dense-vector simulator over Q(zeta_8) (with
T as multiplication by zeta) serves as the independent oracle.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .chform import CHForm, CliffordGate
from .exactnum import (
    Cyclotomic8,
    INV_SQRT2,
    I_UNIT,
    ONE,
    RealQuadratic,
    SQRT2,
    ZERO,
    ZETA,
)
from .f2alg import BitVector
from .ranksearch import (
    Decomposition,
    stabilizer_rank,
    tensor_decompositions,
    worker_count,
)

GATE_KINDS = ("H", "S", "X", "Z", "T", "CZ", "CNOT")
MAX_DENSE_QUBITS = 10
MAX_DECOMP_QUBITS = 20


@dataclass(frozen=True)
class Gate:
    """One Clifford+T gate; CNOT control first."""

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        arity = 2 if self.kind in ("CZ", "CNOT") else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct")

    def as_clifford(self) -> CliffordGate:
        if self.kind == "T":
            raise ValueError("T is not a Clifford gate")
        return CliffordGate(self.kind, self.qubits)

    def __str__(self):
        return f"{self.kind} " + " ".join(str(q) for q in self.qubits)


@dataclass(frozen=True)
class Circuit:
    qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.qubits < 1:
            raise ValueError("need at least one qubit")
        for g in self.gates:
            if any(q >= self.qubits for q in g.qubits):
                raise ValueError(f"gate {g} out of range for {self.qubits} qubits")

    @property
    def t_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "T")

    def to_text(self) -> str:
        lines = [f"qubits {self.qubits}"]
        lines.extend(str(g) for g in self.gates)
        return "\n".join(lines) + "\n"


class CircuitSyntaxError(ValueError):
    """Parse failure with 1-based line and column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\S+")


def parse_circuit(text: str) -> Circuit:
    """Parse the circuit text format.

    First non-comment line is "qubits K"; then one gate per line from
    {H, S, X, Z, T, CZ, CNOT} with 0-based whitespace-separated qubit
    indices (CNOT control first).  "#" starts a comment.
    """
    qubits: Optional[int] = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        if qubits is None:
            if tokens[0][0] != "qubits":
                raise CircuitSyntaxError(
                    f"expected header 'qubits K', found {tokens[0][0]!r}",
                    lineno,
                    tokens[0][1],
                )
            if len(tokens) != 2 or not tokens[1][0].isdigit():
                col = tokens[1][1] if len(tokens) > 1 else tokens[0][1]
                raise CircuitSyntaxError("malformed header: need one integer", lineno, col)
            qubits = int(tokens[1][0])
            if qubits < 1:
                raise CircuitSyntaxError("qubit count must be positive", lineno, tokens[1][1])
            continue
        name, name_col = tokens[0]
        if name not in GATE_KINDS:
            raise CircuitSyntaxError(f"unknown gate {name!r}", lineno, name_col)
        arity = 2 if name in ("CZ", "CNOT") else 1
        args = tokens[1:]
        if len(args) != arity:
            raise CircuitSyntaxError(
                f"{name} takes {arity} qubit argument(s), got {len(args)}",
                lineno,
                name_col,
            )
        indices = []
        for tok, col in args:
            if not tok.isdigit():
                raise CircuitSyntaxError(f"bad qubit index {tok!r}", lineno, col)
            q = int(tok)
            if q >= qubits:
                raise CircuitSyntaxError(
                    f"qubit {q} out of range (circuit has {qubits})", lineno, col
                )
            indices.append(q)
        if arity == 2 and indices[0] == indices[1]:
            raise CircuitSyntaxError("duplicate qubit in two-qubit gate", lineno, args[1][1])
        gates.append(Gate(name, tuple(indices)))
    if qubits is None:
        raise CircuitSyntaxError("missing 'qubits K' header", 1, 1)
    return Circuit(qubits, tuple(gates))


# ---------------------------------------------------------------------------
# Dense oracle
# ---------------------------------------------------------------------------


def dense_initial(k: int, index: int = 0) -> list[Cyclotomic8]:
    vec = [ZERO] * (1 << k)
    vec[index] = ONE
    return vec


def dense_apply(vec: list[Cyclotomic8], gate, k: int) -> list[Cyclotomic8]:
    """Apply one gate to a dense vector (indices MSB-first per qubit 0)."""
    kind = gate.kind
    q = gate.qubits[0]
    bit = 1 << (k - 1 - q)
    if kind == "H":
        out = list(vec)
        for i in range(1 << k):
            if not i & bit:
                a, b = vec[i], vec[i | bit]
                out[i] = (a + b) * INV_SQRT2
                out[i | bit] = (a - b) * INV_SQRT2
        return out
    if kind == "S":
        return [v * I_UNIT if i & bit else v for i, v in enumerate(vec)]
    if kind == "T":
        return [v * ZETA if i & bit else v for i, v in enumerate(vec)]
    if kind == "Z":
        return [-v if i & bit else v for i, v in enumerate(vec)]
    if kind == "X":
        return [vec[i ^ bit] for i in range(1 << k)]
    bit2 = 1 << (k - 1 - gate.qubits[1])
    if kind == "CZ":
        return [-v if (i & bit) and (i & bit2) else v for i, v in enumerate(vec)]
    if kind == "CNOT":
        return [vec[i ^ bit2] if i & bit else v for i, v in enumerate(vec)]
    raise ValueError(f"unknown gate {kind!r}")


def dense_run(circuit: Circuit, initial: Optional[list[Cyclotomic8]] = None) -> list[Cyclotomic8]:
    """Exact dense simulation from e_0 (or a given initial vector)."""
    if circuit.qubits > MAX_DENSE_QUBITS and initial is None:
        raise ValueError(f"dense oracle limited to {MAX_DENSE_QUBITS} qubits")
    vec = dense_initial(circuit.qubits) if initial is None else list(initial)
    for g in circuit.gates:
        vec = dense_apply(vec, g, circuit.qubits)
    return vec


# ---------------------------------------------------------------------------
# Gadgetization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetizedCircuit:
    """Clifford-only replacement with one ancilla per T gate.

    ancilla_sources[j] = (position of the replaced T gate in the
    original gate list, its target qubit); the ancilla occupies qubit
    original_qubits + j.
    """

    circuit: Circuit
    original_qubits: int
    ancilla_sources: tuple[tuple[int, int], ...]

    @property
    def t_count(self) -> int:
        return len(self.ancilla_sources)


def gadgetize(circuit: Circuit) -> GadgetizedCircuit:
    """Replace each T on qubit q by CNOT(q, next fresh ancilla).

    Under postselection of outcome 0 on every ancilla fed the magic
    state, the classically controlled S correction never fires, so the
    replacement is exact for strong simulation.
    """
    k = circuit.qubits
    n = circuit.t_count
    gates: list[Gate] = []
    sources: list[tuple[int, int]] = []
    for pos, g in enumerate(circuit.gates):
        if g.kind == "T":
            ancilla = k + len(sources)
            gates.append(Gate("CNOT", (g.qubits[0], ancilla)))
            sources.append((pos, g.qubits[0]))
        else:
            gates.append(g)
    return GadgetizedCircuit(Circuit(k + n, tuple(gates)) if n else Circuit(k, tuple(gates)),
                             k, tuple(sources))


def magic_state_dense(n: int) -> list[Cyclotomic8]:
    """Normalized magic state tensor power ((e_0 + zeta e_1)/sqrt 2)^n."""
    vec = [ONE]
    for _ in range(n):
        vec = [a * b for a in vec for b in (INV_SQRT2, ZETA * INV_SQRT2)]
    return vec


# ---------------------------------------------------------------------------
# Magic-state decompositions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _optimal_t_decomposition(n: int) -> Decomposition:
    """Exhaustively minimal decomposition of (e_0 + zeta e_1)^n, n <= 3."""
    psi = [ONE]
    for _ in range(n):
        psi = [a * b for a in psi for b in (ONE, ZETA)]
    result = stabilizer_rank(psi)
    assert result.witness is not None
    return result.witness


def t_decomposition(n: int, strategy: str = "auto") -> Decomposition:
    """Exact stabilizer decomposition of the unnormalized n-fold T-state.

    strategy "auto": exhaustively optimal for n <= 3, otherwise a block
    product of optimal 2-qubit pieces (one 1-qubit piece if n is odd),
    giving at most 2^ceil(n/2) terms.  "block" forces the block
    product; "product" expands every factor separately (2^n terms,
    useful for cost-scaling measurements).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if strategy not in ("auto", "block", "product"):
        raise ValueError("strategy must be auto, block or product")
    if strategy == "auto" and n <= 3:
        return _optimal_t_decomposition(n)
    if strategy == "product":
        piece = _optimal_t_decomposition(1)
        out = piece
        for _ in range(n - 1):
            out = tensor_decompositions(out, piece)
        return out
    two = _optimal_t_decomposition(2)
    if n == 1:
        return _optimal_t_decomposition(1)
    out = two if n % 2 == 0 else _optimal_t_decomposition(1)
    for _ in range((n - out.n) // 2):
        out = tensor_decompositions(out, two)
    return out


# ---------------------------------------------------------------------------
# Amplitudes and probabilities
# ---------------------------------------------------------------------------


def _evolved_terms(circuit: Circuit, decomposition: Optional[Decomposition] = None):
    """CH-forms of U (e_0^k tensor sigma_i), evolved once per term.

    Returns (gadgetized, [(coeff_i, CHForm_i)]) where the coefficients
    already carry the magic-state normalization, so the amplitude at
    outcome x is sqrt(2)^n * sum_i coeff_i * <x,0^n| CH_i>.
    """
    from .chform import ch_from_stabilizer

    gadget = gadgetize(circuit)
    k = gadget.original_qubits
    n = gadget.t_count
    total = gadget.circuit.qubits
    if total > MAX_DECOMP_QUBITS:
        raise ValueError(f"decomposition method limited to {MAX_DECOMP_QUBITS} qubits")
    clifford_gates = [g.as_clifford() for g in gadget.circuit.gates]
    if n == 0:
        ch = CHForm(total)
        ch.apply_all(clifford_gates)
        return gadget, [(ONE, ch)]
    if decomposition is None:
        decomposition = t_decomposition(n)
    if decomposition.n != n:
        raise ValueError("decomposition size does not match the T-count")
    norm = INV_SQRT2**n

    def build(term):
        coeff, state = term
        ch, scale = ch_from_stabilizer(state, total_qubits=total, qubit_offset=k)
        ch.w = ch.w * scale
        ch.apply_all(clifford_gates)
        return coeff * norm, ch

    workers = worker_count()
    if workers > 1 and len(decomposition.terms) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            evolved = list(pool.map(build, decomposition.terms))
    else:
        evolved = [build(t) for t in decomposition.terms]
    return gadget, evolved


def simulate_amplitudes(
    circuit: Circuit,
    outcomes: Sequence[BitVector],
    method: str = "decomposition",
    decomposition: Optional[Decomposition] = None,
) -> list[Cyclotomic8]:
    """Exact amplitudes <e_x, V e_0^k> for a batch of outcomes."""
    k = circuit.qubits
    for x in outcomes:
        if x.n != k:
            raise ValueError("outcome length must equal the qubit count")
    if method == "dense":
        vec = dense_run(circuit)
        return [vec[x.index] for x in outcomes]
    if method != "decomposition":
        raise ValueError("method must be 'decomposition' or 'dense'")
    gadget, evolved = _evolved_terms(circuit, decomposition)
    n = gadget.t_count
    scale = SQRT2**n
    out = []
    for x in outcomes:
        ext = BitVector(k + n, x.bits << n) if n else x
        total = ZERO
        for coeff, ch in evolved:
            total = total + coeff * ch.amplitude(ext)
        out.append(total * scale)
    return out


def amplitude(
    circuit: Circuit,
    outcome: BitVector,
    method: str = "decomposition",
    decomposition: Optional[Decomposition] = None,
) -> Cyclotomic8:
    """Exact amplitude of one computational-basis outcome."""
    return simulate_amplitudes(circuit, [outcome], method, decomposition)[0]


def outcome_probability(
    circuit: Circuit, outcome: BitVector, method: str = "decomposition"
) -> tuple[RealQuadratic, float]:
    """|amplitude|^2 exactly in Q(sqrt 2), plus its float rendering."""
    amp = amplitude(circuit, outcome, method)
    exact = amp.magnitude_sq()
    return exact, float(exact)
