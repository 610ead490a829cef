"""Reductions for the worst-case rank of n-fold powers of qubit states:
realification, spanning-set combination, and sub-generic counting.

The key identity: for a normal-form state sigma with real/imaginary
split sigma = re + i*im, the companion real vector rho = re - im is
(like re itself) supported on the same subspace with +-1 entries, and
for all real a, b

    Re((a + ib) sigma) = (a - b) re + b rho.

Applying this term by term converts any decomposition of a real target
into one over real stabilizer states at most twice as long.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactnum import Cyclotomic8, ZERO
from .ranksearch import Decomposition
from .stabset import (
    StabilizerState,
    count_stabilizers,
    enumerate_stabilizers,
)


@dataclass(frozen=True)
class SymmetricBasis:
    """The n+1 Hamming-weight indicator vectors, stored sparsely."""

    n: int
    vectors: tuple[tuple[int, ...], ...]  # vectors[k] = indices of weight k

    @classmethod
    def build(cls, n: int) -> "SymmetricBasis":
        if n < 1:
            raise ValueError("n must be >= 1")
        vecs = [[] for _ in range(n + 1)]
        for idx in range(1 << n):
            vecs[idx.bit_count()].append(idx)
        return cls(n, tuple(tuple(v) for v in vecs))

    def dense(self, k: int) -> list[int]:
        out = [0] * (1 << self.n)
        for idx in self.vectors[k]:
            out[idx] = 1
        return out

    def gram_matrix(self) -> list[list[int]]:
        return [
            [
                len(set(self.vectors[i]) & set(self.vectors[j]))
                for j in range(self.n + 1)
            ]
            for i in range(self.n + 1)
        ]


def realify(state: StabilizerState) -> tuple[list[int], list[int]]:
    """(re_part, rho) as dense integer vectors.

    re_part is the entrywise real part of the state's amplitudes; rho
    carries (-1)^(q+l) on the support.  Both are zero or proportional
    to real stabilizer states, and rho = re_part - imag_part entrywise.
    """
    size = 1 << state.n
    re_part = [0] * size
    rho = [0] * size
    indices, exponents = state.support_and_exponents()
    for idx, e in zip(indices, exponents):
        # amplitude i^e: real part for even e, imaginary for odd e;
        # rho = re - im flips the sign pattern on the odd-exponent points.
        re_part[idx] = (1 if e == 0 else -1) if e % 2 == 0 else 0
        rho[idx] = 1 if e in (0, 3) else -1
    return re_part, rho


def _embed_real(rq) -> Cyclotomic8:
    """u + v*sqrt(2) as a Q(zeta_8) element."""
    return Cyclotomic8(rq.u, rq.v, 0, -rq.v)


def _real_coeff_pair(c: Cyclotomic8) -> tuple[Cyclotomic8, Cyclotomic8]:
    """Split c = a + i b into exact real field elements (a, b) embedded
    back into Q(zeta_8)."""
    return _embed_real(c.real_part()), _embed_real(c.imag_part())


def realify_decomposition(d: Decomposition) -> Decomposition:
    """Convert a decomposition of a real target into one over real
    stabilizer states with at most twice as many terms.

    Each term (a + ib) sigma is replaced by (a - b) re(sigma) + b rho(sigma);
    zero coefficients and zero vectors are dropped, re-summation is
    exact, and duplicate real states are merged.
    """
    target = d.resum()
    if any(not a.imag_part().is_zero() for a in target):
        raise ValueError("target vector is not real")
    real_dict = enumerate_stabilizers(d.n, real_only=True)
    lookup: dict[tuple, tuple[int, StabilizerState]] = {}
    for state in real_dict:
        vec = [0] * (1 << d.n)
        indices, exponents = state.support_and_exponents()
        for idx, e in zip(indices, exponents):
            vec[idx] = 1 if e == 0 else -1
        lookup[tuple(vec)] = (1, state)
        lookup[tuple(-x for x in vec)] = (-1, state)

    accum: dict[StabilizerState, Cyclotomic8] = {}

    def add_term(coeff: Cyclotomic8, vec: list[int]):
        if coeff.is_zero() or all(x == 0 for x in vec):
            return
        sign, state = lookup[tuple(vec)]
        c = coeff if sign == 1 else -coeff
        accum[state] = accum.get(state, ZERO) + c

    for coeff, state in d.terms:
        a, b = _real_coeff_pair(coeff)
        re_part, rho = realify(state)
        add_term(a - b, re_part)
        add_term(b, rho)

    parts = [(c, s) for s, c in accum.items() if not c.is_zero()]
    out = Decomposition.from_parts(d.n, parts)
    assert out.resum() == target
    return out


def subgeneric_count_bound(n: int, chi_n: int, real_only: bool = False) -> int:
    """n * C(|dictionary|, chi_n - 1): an upper bound on how many qubit
    states have an n-fold power of less-than-worst-case rank."""
    if chi_n < 2:
        raise ValueError("chi_n must be >= 2")
    total = count_stabilizers(n, real_only)
    return n * math.comb(total, chi_n - 1)


def combine_upper_bound(r: int, n: int) -> int:
    """If n+1 distinct qubit states have n-fold powers of rank <= r,
    the worst case over all qubit states is at most r*(n+1)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return r * (n + 1)
