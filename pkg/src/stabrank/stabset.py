"""Stabilizer states in normal form and exhaustive dictionaries.

A state is a triple (A, l, q): an affine subspace A of F_2^n carrying
amplitude i^l(x) * (-1)^q(x) at each member point and 0 elsewhere.  The
forms l and q act on A's internal coordinates, so each distinct triple
is a distinct projective state and the dictionary sizes reproduce the
counting formulas

    |complex dictionary| = 2^n * prod_{k=1..n}   (2^k + 1)
    |real dictionary|    = 2^n * prod_{k=0..n-1} (2^k + 1)

exactly (dimension-zero subspaces, i.e. computational basis states,
are included).  Real states are exactly the triples with l = 0; the
real count is cross-checked against direct orbit generation under
{H, CNOT} in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .chform import CliffordGate
from .exactnum import Cyclotomic8, I_POWERS, ZERO
from .f2alg import (
    AffineSubspace,
    BitVector,
    LinearFormF2,
    QuadraticFormF2,
    enumerate_affine_subspaces,
    enumerate_linear_forms,
    enumerate_quadratic_forms,
    gaussian_binomial,
)

MAX_DENSE_N = 12
MAX_COMPLEX_ENUM_N = 4
MAX_REAL_ENUM_N = 5


@dataclass(frozen=True)
class StabilizerState:
    """Normal-form stabilizer state on subspace.n qubits.

    The amplitude at the offset point is exactly 1 (both forms vanish
    at coordinate 0), which pins one canonical representative per
    projective state.
    """

    subspace: AffineSubspace
    linear: LinearFormF2
    quadratic: QuadraticFormF2

    def __post_init__(self):
        k = self.subspace.dim
        if self.linear.k != k or self.quadratic.k != k:
            raise ValueError("form sizes must match the subspace dimension")

    @property
    def n(self) -> int:
        return self.subspace.n

    @property
    def k(self) -> int:
        return self.subspace.dim

    def is_real(self) -> bool:
        return self.linear.coeffs == 0

    def phase_exponent(self, coords: int) -> int:
        """Exponent e with amplitude i^e at the point with these coords."""
        return (self.linear.evaluate(coords) + 2 * self.quadratic.evaluate(coords)) % 4

    def amplitude_at(self, x: BitVector) -> Cyclotomic8:
        coords = self.subspace.membership(x)
        if coords is None:
            return ZERO
        return I_POWERS[self.phase_exponent(coords)]

    def support_and_exponents(self) -> tuple[list[int], list[int]]:
        """Dense indices of the support and the i-exponent at each."""
        indices = []
        exponents = []
        for coords in range(1 << self.k):
            bits = self.subspace.offset.bits
            for i in range(self.k):
                if (coords >> (self.k - 1 - i)) & 1:
                    bits ^= self.subspace.basis[i].bits
            indices.append(bits)
            exponents.append(self.phase_exponent(coords))
        return indices, exponents

    def sort_key(self):
        return (
            self.subspace.sort_key(),
            self.linear.coeffs,
            self.quadratic.rows,
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "offset": self.subspace.offset.to_string(),
            "basis": [b.to_string() for b in self.subspace.basis],
            "linear": self.linear.to_string(),
            "quadratic": self.quadratic.to_strings(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilizerState":
        n = data["n"]
        basis = tuple(BitVector.from_string(s) for s in data["basis"])
        offset = BitVector.from_string(data["offset"])
        k = len(basis)
        subspace = AffineSubspace(n, basis, offset)
        linear = LinearFormF2(k, int(data["linear"], 2) if data["linear"] else 0)
        quadratic = QuadraticFormF2(
            k, tuple(int(s, 2) if s else 0 for s in data["quadratic"])
        )
        return cls(subspace, linear, quadratic)


def amplitudes(state: StabilizerState) -> list[Cyclotomic8]:
    """Dense amplitude vector of length 2^n (exact entries in {0,+-1,+-i})."""
    if state.n > MAX_DENSE_N:
        raise ValueError(f"dense expansion limited to n <= {MAX_DENSE_N}")
    vec = [ZERO] * (1 << state.n)
    indices, exponents = state.support_and_exponents()
    for idx, e in zip(indices, exponents):
        vec[idx] = I_POWERS[e]
    return vec


def basis_state(n: int, x: BitVector) -> StabilizerState:
    """The computational basis state e_x as a dictionary entry."""
    return StabilizerState(
        AffineSubspace.single_point(x), LinearFormF2.zero(0), QuadraticFormF2.zero(0)
    )


def count_stabilizers(n: int, real_only: bool = False) -> int:
    """Exact count by formula (dimension sums taken from k = 0).

    Complex: 2^n * prod_{k=1..n} (2^k + 1), which equals
    sum_k gaussian_binomial(n,k) * 2^(n-k) * 2^(k(k+1)/2) * 2^k
    (subspaces times quadratic times linear forms).  Real states drop
    the linear-form factor, giving 2^n * prod_{k=0..n-1} (2^k + 1);
    both product forms follow from the Gaussian binomial theorem, and
    both match exhaustive enumeration and (for the real case, n <= 3)
    direct orbit generation under {H, CNOT}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 1 << n
    if real_only:
        for k in range(n):
            total *= (1 << k) + 1
    else:
        for k in range(1, n + 1):
            total *= (1 << k) + 1
    return total


class StabDictionary:
    """All n-qubit stabilizer states, canonically ordered and indexed.

    Searches reference states by their index in this order, which is
    the sort by (subspace, linear form, quadratic form) encodings and
    is identical across runs.
    """

    def __init__(self, n: int, real_only: bool = False):
        limit = MAX_REAL_ENUM_N if real_only else MAX_COMPLEX_ENUM_N
        if not 1 <= n <= limit:
            kind = "real" if real_only else "complex"
            raise ValueError(f"{kind} enumeration supports 1 <= n <= {limit}")
        self.n = n
        self.real_only = real_only
        states: list[StabilizerState] = []
        for subspace in enumerate_affine_subspaces(n):
            k = subspace.dim
            linear_forms = (
                [LinearFormF2.zero(k)] if real_only else enumerate_linear_forms(k)
            )
            quadratic_forms = enumerate_quadratic_forms(k)
            for lin in linear_forms:
                for quad in quadratic_forms:
                    states.append(StabilizerState(subspace, lin, quad))
        states.sort(key=StabilizerState.sort_key)
        self.states: tuple[StabilizerState, ...] = tuple(states)
        self._index = {s: i for i, s in enumerate(states)}

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, i: int) -> StabilizerState:
        return self.states[i]

    def __iter__(self):
        return iter(self.states)

    def index_of(self, state: StabilizerState) -> int:
        return self._index[state]


@lru_cache(maxsize=None)
def enumerate_stabilizers(n: int, real_only: bool = False) -> StabDictionary:
    """Cached dictionary of all n-qubit stabilizer states."""
    return StabDictionary(n, real_only)


def is_stabilizer(psi: Sequence[Cyclotomic8]) -> Optional[StabilizerState]:
    """The dictionary state proportional to psi, if any.

    Uses full enumeration, so psi must have at most 2^3 entries.
    """
    size = len(psi)
    n = size.bit_length() - 1
    if size != 1 << n or n < 1:
        raise ValueError("psi must have length 2^n, n >= 1")
    if n > 3:
        raise ValueError("dictionary lookup limited to n <= 3")
    first = next((i for i, a in enumerate(psi) if not a.is_zero()), None)
    if first is None:
        raise ValueError("zero vector has no stabilizer form")
    support = frozenset(i for i, a in enumerate(psi) if not a.is_zero())
    for state in enumerate_stabilizers(n):
        indices, exponents = state.support_and_exponents()
        if frozenset(indices) != support:
            continue
        ratio = psi[first] * I_POWERS[(-dict(zip(indices, exponents))[first]) % 4]
        if all(
            psi[idx] == ratio * I_POWERS[e] for idx, e in zip(indices, exponents)
        ):
            return state
    return None


def realize_on_support(
    values: dict[int, Cyclotomic8], subspace: AffineSubspace
) -> Optional[tuple[StabilizerState, Cyclotomic8]]:
    """Recover (state, coeff) with coeff * amplitudes(state) matching values.

    ``values`` maps dense indices to exact amplitudes and must cover
    exactly the subspace's point set.  Returns None unless every value
    is nonzero, ratios to the offset value are powers of i, the parity
    of the exponent function is linear in the subspace coordinates and
    its halved even part has algebraic degree at most 2 (the normal
    form's reach).
    """
    from .f2alg import anf_coefficients, anf_degree

    k = subspace.dim
    base = values.get(subspace.offset.bits)
    if base is None or base.is_zero():
        return None
    base_inv = base.inverse()
    exponents = [0] * (1 << k)
    for coords in range(1 << k):
        bits = subspace.offset.bits
        for i in range(k):
            if (coords >> (k - 1 - i)) & 1:
                bits ^= subspace.basis[i].bits
        val = values.get(bits)
        if val is None or val.is_zero():
            return None
        ratio = val * base_inv
        for e in range(4):
            if ratio == I_POWERS[e]:
                exponents[coords] = e
                break
        else:
            return None
    parity = [e & 1 for e in exponents]
    if anf_degree(parity, k) > 1:
        return None
    lin_coeffs = 0
    for i in range(k):
        if parity[1 << (k - 1 - i)]:
            lin_coeffs |= 1 << (k - 1 - i)
    linear = LinearFormF2(k, lin_coeffs)
    qtable = [
        ((exponents[c] - linear.evaluate(c)) % 4) >> 1 for c in range(1 << k)
    ]
    if anf_degree(qtable, k) > 2:
        return None
    anf = anf_coefficients(qtable, k)
    rows = [0] * k
    for mask, coeff in enumerate(anf):
        if not coeff:
            continue
        positions = [i for i in range(k) if (mask >> (k - 1 - i)) & 1]
        rows[positions[0]] |= 1 << (k - 1 - positions[-1])
    state = StabilizerState(subspace, linear, QuadraticFormF2(k, tuple(rows)))
    return state, base


def preparation_circuit(state: StabilizerState) -> list[CliffordGate]:
    """A Clifford circuit preparing the state from e_0 tensor n.

    Applied to the all-zeros basis state the circuit yields exactly
    (1/sqrt 2)^k times the dense amplitude vector: X gates set the
    offset, H gates open the pivot qubits, CNOTs fan each basis vector
    out from its pivot, then S / Z / CZ imprint the linear and
    quadratic phases.  The gate count is O(n^2).
    """
    gates: list[CliffordGate] = []
    n = state.n
    offset = state.subspace.offset
    for i in range(n):
        if offset.bit(i):
            gates.append(CliffordGate("X", (i,)))
    pivots = state.subspace.pivots()
    for p in pivots:
        gates.append(CliffordGate("H", (p,)))
    for i, b in enumerate(state.subspace.basis):
        for j in range(n):
            if j != pivots[i] and b.bit(j):
                gates.append(CliffordGate("CNOT", (pivots[i], j)))
    linear_pivots = [
        p
        for i, p in enumerate(pivots)
        if (state.linear.coeffs >> (state.k - 1 - i)) & 1
    ]
    for p in linear_pivots:
        gates.append(CliffordGate("S", (p,)))
    # S on several qubits yields i to the integer sum of their bits;
    # the normal form wants i to the XOR, so cancel the pairwise
    # (-1)^(x_i x_j) surplus with a CZ per pivot pair.
    for a, b in itertools.combinations(linear_pivots, 2):
        gates.append(CliffordGate("CZ", (a, b)))
    for i, p in enumerate(pivots):
        row = state.quadratic.rows[i]
        if (row >> (state.k - 1 - i)) & 1:
            gates.append(CliffordGate("Z", (p,)))
        for j in range(i + 1, state.k):
            if (row >> (state.k - 1 - j)) & 1:
                gates.append(CliffordGate("CZ", (p, pivots[j])))
    return gates
