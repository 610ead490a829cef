"""Phase-exact CH-form simulation of stabilizer states.

A state is stored as w * U_C * H(h) * e_s where w is an exact
Q(zeta_8) scalar, U_C is a unitary generated by {CNOT, CZ, S} acting
as a permutation-with-phases on basis states, H(h) applies a Hadamard
to every qubit flagged in h, and e_s is a basis vector.  Gate updates
cost O(k) row operations for S/Z/X/CZ/CNOT and O(k^2) for H; amplitude
queries cost O(k^2) bit operations.

U_C is tracked through three k x k bit matrices G, F, M (rows packed
into ints, bit q = qubit q) and a phase vector gamma (mod 4) via the
conjugation identities

    U_C^dag Z_p U_C = Z_{G[p]}
    U_C^dag X_p U_C = i^gamma[p] * X_{F[p]} * Z_{M[p]}

The update rules below are derived from these identities; the test
suite checks every one against a dense-vector simulator with zero
tolerance, which is the correctness contract for this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import (
    Cyclotomic8,
    INV_SQRT2,
    I_POWERS,
    ONE,
    SQRT2,
    ZERO,
)
from .f2alg import BitVector

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Z": 1, "CZ": 2, "CNOT": 2}


@dataclass(frozen=True)
class CliffordGate:
    """A gate from {H, S, X, Z, CZ, CNOT} acting on 0-based qubits.

    For CNOT the first qubit is the control.
    """

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown Clifford gate {self.kind!r}")
        if len(self.qubits) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise ValueError("qubit indices must be non-negative")

    def __str__(self):
        return f"{self.kind} " + " ".join(str(q) for q in self.qubits)


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _to_internal(x: BitVector) -> int:
    """Map a BitVector to the internal mask with bit q = qubit q."""
    out = 0
    for i in range(x.n):
        if x.bit(i):
            out |= 1 << i
    return out


class CHForm:
    """Mutable CH-form value; use copy() before sharing."""

    __slots__ = ("k", "G", "F", "M", "gamma", "v", "s", "w")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("need at least one qubit")
        self.k = k
        self.G = [1 << q for q in range(k)]
        self.F = [1 << q for q in range(k)]
        self.M = [0] * k
        self.gamma = [0] * k
        self.v = 0
        self.s = 0
        self.w: Cyclotomic8 = ONE

    def copy(self) -> "CHForm":
        out = CHForm.__new__(CHForm)
        out.k = self.k
        out.G = list(self.G)
        out.F = list(self.F)
        out.M = list(self.M)
        out.gamma = list(self.gamma)
        out.v = self.v
        out.s = self.s
        out.w = self.w
        return out

    # -- left multiplication by gates --------------------------------------

    def apply(self, gate: CliffordGate) -> "CHForm":
        if any(q >= self.k for q in gate.qubits):
            raise ValueError(f"gate {gate} out of range for {self.k} qubits")
        kind = gate.kind
        if kind == "H":
            self._apply_h(gate.qubits[0])
        elif kind == "S":
            self._apply_s(gate.qubits[0])
        elif kind == "Z":
            self._apply_s(gate.qubits[0])
            self._apply_s(gate.qubits[0])
        elif kind == "X":
            self._apply_x(gate.qubits[0])
        elif kind == "CZ":
            self._apply_cz(*gate.qubits)
        else:
            self._apply_cnot(*gate.qubits)
        return self

    def apply_all(self, gates) -> "CHForm":
        for g in gates:
            self.apply(g)
        return self

    def _apply_s(self, p: int) -> None:
        self.M[p] ^= self.G[p]
        self.gamma[p] = (self.gamma[p] - 1) % 4

    def _apply_cz(self, q: int, r: int) -> None:
        self.M[q] ^= self.G[r]
        self.M[r] ^= self.G[q]

    def _apply_cnot(self, c: int, t: int) -> None:
        self.gamma[c] = (
            self.gamma[c] + self.gamma[t] + 2 * _parity(self.M[c] & self.F[t])
        ) % 4
        self.G[t] ^= self.G[c]
        self.F[c] ^= self.F[t]
        self.M[c] ^= self.M[t]

    def _apply_x(self, p: int) -> None:
        # X_p U_C = U_C i^gamma[p] X_{F[p]} Z_{M[p]}; pushing the Pauli
        # through H(v) flips s and leaves a sign.
        u = self.s ^ (self.F[p] & ~self.v) ^ (self.M[p] & self.v)
        beta = (
            _parity(self.M[p] & ~self.v & self.s)
            ^ _parity(self.F[p] & self.v & self.M[p])
            ^ _parity(self.F[p] & self.v & self.s)
        )
        phase = I_POWERS[self.gamma[p] % 4]
        if beta:
            phase = -phase
        self.w = self.w * phase
        self.s = u

    def _apply_h(self, p: int) -> None:
        t = self.s ^ (self.G[p] & self.v)
        u = self.s ^ (self.F[p] & ~self.v) ^ (self.M[p] & self.v)
        alpha = _parity(self.G[p] & ~self.v & self.s)
        beta = (
            _parity(self.M[p] & ~self.v & self.s)
            ^ _parity(self.F[p] & self.v & self.M[p])
            ^ _parity(self.F[p] & self.v & self.s)
        )
        delta = (self.gamma[p] + 2 * (alpha + beta)) % 4
        self._update_sum(t, u, delta, alpha)

    # -- right multiplication (column updates absorbed into U_C) -----------

    def _s_right(self, q: int) -> None:
        bit = 1 << q
        for p in range(self.k):
            if self.F[p] & bit:
                self.M[p] ^= bit
                self.gamma[p] = (self.gamma[p] - 1) % 4

    def _cz_right(self, q: int, r: int) -> None:
        bq, br = 1 << q, 1 << r
        for p in range(self.k):
            fq = self.F[p] & bq
            fr = self.F[p] & br
            if fr:
                self.M[p] ^= bq
            if fq:
                self.M[p] ^= br
            if fq and fr:
                self.gamma[p] = (self.gamma[p] + 2) % 4

    def _cnot_right(self, q: int, r: int) -> None:
        bq, br = 1 << q, 1 << r
        for p in range(self.k):
            if self.G[p] & br:
                self.G[p] ^= bq
            if self.F[p] & bq:
                self.F[p] ^= br
            if self.M[p] & br:
                self.M[p] ^= bq

    # -- superposition collapse --------------------------------------------

    def _update_sum(self, t: int, u: int, delta: int, alpha: int) -> None:
        """Rewrite w(-1)^alpha/sqrt2 * U_C H(v)(e_t + i^delta e_u) in CH-form."""
        sign = -ONE if alpha else ONE
        if t == u:
            factor = (ONE + I_POWERS[delta]) * INV_SQRT2
            self.w = self.w * sign * factor
            self.s = t
            return

        diff = t ^ u
        set0 = diff & ~self.v
        set1 = diff & self.v
        if set0:
            q = (set0 & -set0).bit_length() - 1
            rest = set0 & ~(1 << q)
            while rest:
                i = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                self._cnot_right(q, i)
            ones = set1
            while ones:
                i = (ones & -ones).bit_length() - 1
                ones &= ones - 1
                self._cz_right(q, i)
        else:
            q = (set1 & -set1).bit_length() - 1
            rest = set1 & ~(1 << q)
            while rest:
                i = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                self._cnot_right(i, q)

        e = 1 << q
        if t & e:
            y, z = u ^ e, u
        else:
            y, z = t, t ^ e
        omega, a, b, c = _h_decompose(
            bool(self.v & e), bool(y & e), bool(z & e), delta
        )
        self.w = self.w * sign * omega
        self.s = (y & ~e) | (e if c else 0)
        if a:
            self._s_right(q)
        self.v = (self.v & ~e) | (e if b else 0)

    # -- queries ------------------------------------------------------------

    def _amplitude_internal(self, x: int) -> Cyclotomic8:
        mu = 0
        u = 0
        rest = x
        while rest:
            p = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            mu += self.gamma[p]
            u ^= self.F[p]
            mu += 2 * _parity(self.M[p] & u)
        if (u ^ self.s) & ~self.v:
            return ZERO
        amp = self.w * I_POWERS[mu % 4]
        if _parity(self.v & u & self.s):
            amp = -amp
        return amp * INV_SQRT2 ** self.v.bit_count()

    def amplitude(self, x: BitVector) -> Cyclotomic8:
        """Exact <e_x, state>, global phase included."""
        if x.n != self.k:
            raise ValueError("outcome length must match qubit count")
        return self._amplitude_internal(_to_internal(x))

    def amplitude_index(self, index: int) -> Cyclotomic8:
        """Amplitude at a dense basis index (qubit 0 = most significant
        bit, matching BitVector.index); works for any qubit count."""
        if not 0 <= index < (1 << self.k):
            raise ValueError("index out of range")
        internal = 0
        for q in range(self.k):
            if (index >> (self.k - 1 - q)) & 1:
                internal |= 1 << q
        return self._amplitude_internal(internal)

    def dense_vector(self) -> list[Cyclotomic8]:
        """Dense amplitudes indexed like BitVector.index (k <= 12)."""
        if self.k > 12:
            raise ValueError("dense expansion limited to k <= 12")
        return [
            self._amplitude_internal(_to_internal(BitVector(self.k, idx)))
            for idx in range(1 << self.k)
        ]

    def __repr__(self):
        return f"CHForm(k={self.k}, w={self.w!r})"


def _h_decompose(v: bool, y: bool, z: bool, delta: int):
    """Exact (omega, a, b, c) with
    (1/sqrt2) H^v (e_y + i^delta e_z) = omega S^a H^b e_c for y != z."""
    assert y != z
    if not v:
        omega = I_POWERS[(delta * y) % 4]
        delta2 = (-delta if y else delta) % 4
        return omega, bool(delta2 & 1), True, bool(delta2 >> 1)
    if delta % 2 == 0:
        c = bool(delta >> 1)
        omega = -ONE if (c and y) else ONE
        return omega, False, False, c
    omega = (ONE + I_POWERS[delta]) * INV_SQRT2
    return omega, True, True, not ((delta >> 1) ^ y)


def ch_init(s: BitVector) -> CHForm:
    """CH-form of the basis vector e_s (w = 1, no Hadamard layer)."""
    ch = CHForm(s.n)
    ch.s = _to_internal(s)
    return ch


def ch_apply(ch: CHForm, gate: CliffordGate) -> CHForm:
    """Functional gate application: returns an updated copy."""
    return ch.copy().apply(gate)


def ch_amplitude(ch: CHForm, x: BitVector) -> Cyclotomic8:
    return ch.amplitude(x)


def ch_from_stabilizer(
    state, *, total_qubits: int | None = None, qubit_offset: int = 0
) -> tuple[CHForm, Cyclotomic8]:
    """CH-form preparation of a normal-form stabilizer state.

    Replays the state's preparation circuit (optionally embedded at
    ``qubit_offset`` inside a larger register of ``total_qubits``,
    with all other qubits left in e_0).  Returns (ch, scale) where
    scale * dense(ch) equals the state's exact amplitude vector
    tensored with e_0 on the extra qubits; scale is sqrt(2)^dim.
    """
    from .stabset import preparation_circuit

    k = total_qubits if total_qubits is not None else state.n
    if qubit_offset + state.n > k:
        raise ValueError("embedded state does not fit the register")
    ch = CHForm(k)
    for gate in preparation_circuit(state):
        shifted = CliffordGate(gate.kind, tuple(q + qubit_offset for q in gate.qubits))
        ch.apply(shifted)
    return ch, SQRT2 ** state.subspace.dim
