"""Realification, doubling bounds, counting bounds, symmetric basis."""

import math
import random
from fractions import Fraction

import pytest

from stabrank.exactnum import Cyclotomic8, I_UNIT, ONE, ZERO
from stabrank.genericrank import (
    SymmetricBasis,
    combine_upper_bound,
    realify,
    realify_decomposition,
    subgeneric_count_bound,
)
from stabrank.ranksearch import (
    Decomposition,
    min_spanning_symmetric,
    stabilizer_rank,
)
from stabrank.stabset import amplitudes, enumerate_stabilizers


def test_realify_on_real_state():
    d2 = enumerate_stabilizers(2)
    state = next(s for s in d2 if s.is_real() and s.k == 2)
    re_part, rho = realify(state)
    vec = amplitudes(state)
    assert re_part == [int(a.c0) for a in vec]
    assert rho == re_part


def test_realify_single_qubit_example():
    # e_0 + i e_1: real part e_0, companion e_0 - e_1
    d1 = enumerate_stabilizers(1)
    state = next(s for s in d1 if amplitudes(s) == [ONE, I_UNIT])
    re_part, rho = realify(state)
    assert re_part == [1, 0]
    assert rho == [1, -1]


def test_realification_identity_exhaustive():
    # Re((a+ib) sigma) = (a-b) re + b rho, entrywise, all dictionary
    # states for n <= 3 and all (a, b) in {-2..2}^2.
    for n in (1, 2, 3):
        for state in enumerate_stabilizers(n):
            vec = amplitudes(state)
            re_part, rho = realify(state)
            for a in range(-2, 3):
                for b in range(-2, 3):
                    coeff = Cyclotomic8.from_gaussian(Fraction(a), Fraction(b))
                    lhs = [(coeff * v).real_part() for v in vec]
                    rhs = [
                        Fraction(a - b) * r + Fraction(b) * p
                        for r, p in zip(re_part, rho)
                    ]
                    assert all(
                        l.u == rv and l.v == 0 for l, rv in zip(lhs, rhs)
                    ), (state, a, b)


def test_realify_decomposition_roundtrip():
    # A genuinely complex-coefficient decomposition of a real target:
    # (1+i)(e_0 + i e_1) + (1-i)(e_0 - i e_1) = 2 e_0 - 2 e_1.
    d1 = enumerate_stabilizers(1)
    plus_i = next(s for s in d1 if amplitudes(s) == [ONE, I_UNIT])
    minus_i = next(s for s in d1 if amplitudes(s) == [ONE, -I_UNIT])
    d = Decomposition.from_parts(
        1,
        [
            (Cyclotomic8.from_gaussian(Fraction(1), Fraction(1)), plus_i),
            (Cyclotomic8.from_gaussian(Fraction(1), Fraction(-1)), minus_i),
        ],
    )
    target = d.resum()
    assert all(a.imag_part().is_zero() for a in target)
    real = realify_decomposition(d)
    assert real.resum() == target
    assert len(real) <= 2 * len(d)
    assert all(s.is_real() for _, s in real.terms)


def test_realify_decomposition_real_input_unchanged_length():
    d2 = enumerate_stabilizers(2)
    plus = next(
        s for s in d2 if s.k == 2 and s.is_real() and amplitudes(s) == [ONE] * 4
    )
    e00 = next(s for s in d2 if s.k == 0 and amplitudes(s)[0] == ONE)
    d = Decomposition.from_parts(
        2, [(Cyclotomic8.from_int(3), plus), (Cyclotomic8.from_int(-1), e00)]
    )
    real = realify_decomposition(d)
    assert real.resum() == d.resum()
    assert len(real) == len(d)


def test_realify_decomposition_rejects_complex_target():
    d1 = enumerate_stabilizers(1)
    e1 = next(s for s in d1 if amplitudes(s) == [ZERO, ONE])
    d = Decomposition.from_parts(1, [(I_UNIT, e1)])
    with pytest.raises(ValueError):
        realify_decomposition(d)


def test_doubling_bounds_dictionary_states():
    # chi <= chi_real <= 2 chi on all 60 two-qubit dictionary states.
    d2 = enumerate_stabilizers(2)
    for state in d2:
        vec = amplitudes(state)
        chi = stabilizer_rank(vec).rank
        assert chi == 1
        chi_real = stabilizer_rank(vec, real_only=True).rank
        assert chi <= chi_real <= 2 * chi


def test_doubling_bounds_random_real_states():
    rng = random.Random(55)
    done = 0
    while done < 50:
        psi = [Cyclotomic8.from_int(rng.randint(-3, 3)) for _ in range(4)]
        if all(a.is_zero() for a in psi):
            continue
        done += 1
        chi = stabilizer_rank(psi).rank
        chi_real = stabilizer_rank(psi, real_only=True).rank
        assert chi <= chi_real <= 2 * chi, [str(a) for a in psi]


def test_chi_n_lower_bound_consistency():
    for n in (1, 2, 3):
        value, _, _ = min_spanning_symmetric(n)
        assert value >= n + 1


def test_subgeneric_count_bound():
    assert subgeneric_count_bound(2, 3) == 2 * math.comb(60, 2)
    assert subgeneric_count_bound(1, 2) == 6
    assert subgeneric_count_bound(3, 4) == 3 * math.comb(1080, 3)
    assert subgeneric_count_bound(3, 4) == 628_107_480
    # real variant uses the real dictionary size
    assert subgeneric_count_bound(2, 3, real_only=True) == 2 * math.comb(24, 2)
    with pytest.raises(ValueError):
        subgeneric_count_bound(2, 1)


def test_combine_upper_bound():
    assert combine_upper_bound(1, 1) == 2
    assert combine_upper_bound(2, 2) == 6
    assert combine_upper_bound(3, 3) == 12
    # consistent with the exact chi_2 = 3 <= 6
    assert min_spanning_symmetric(2)[0] <= combine_upper_bound(2, 2)
    with pytest.raises(ValueError):
        combine_upper_bound(0, 1)


def test_symmetric_basis():
    basis = SymmetricBasis.build(4)
    for k in range(5):
        assert len(basis.vectors[k]) == math.comb(4, k)
    gram = basis.gram_matrix()
    for i in range(5):
        for j in range(5):
            expected = math.comb(4, i) if i == j else 0
            assert gram[i][j] == expected
