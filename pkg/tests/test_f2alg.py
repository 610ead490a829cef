"""F_2 linear algebra: subspaces, forms, counting identities."""

import itertools

import pytest

from stabrank.f2alg import (
    AffineSubspace,
    BitVector,
    LinearFormF2,
    QuadraticFormF2,
    anf_degree,
    count_affine_subspaces,
    enumerate_affine_subspaces,
    enumerate_linear_forms,
    enumerate_quadratic_forms,
    gaussian_binomial,
)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(2, 1) == 3
    for n in range(8):
        assert gaussian_binomial(n, 0) == 1
        assert gaussian_binomial(n, n) == 1


def test_gaussian_binomial_errors():
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3)


def test_gaussian_binomial_theorem_identity():
    # sum_k [n,k]_2 2^(k(k+1)/2) = prod_{k=1..n} (2^k + 1)
    for n in range(21):
        lhs = sum(
            gaussian_binomial(n, k) * (1 << (k * (k + 1) // 2)) for k in range(n + 1)
        )
        rhs = 1
        for k in range(1, n + 1):
            rhs *= (1 << k) + 1
        assert lhs == rhs


def test_enumeration_counts():
    assert len(enumerate_affine_subspaces(1)) == 3
    assert len(enumerate_affine_subspaces(2)) == 11
    assert count_affine_subspaces(4) == 307
    for n in range(1, 7):
        assert len(enumerate_affine_subspaces(n)) == count_affine_subspaces(n)


def test_enumeration_range_check():
    with pytest.raises(ValueError):
        enumerate_affine_subspaces(7)
    with pytest.raises(ValueError):
        enumerate_affine_subspaces(0)


def test_n2_brute_force_cross_check():
    # An affine subset of F_2^2 is a nonempty set closed under x+y+z.
    points = list(range(4))
    affine_sets = []
    for r in range(1, 5):
        for subset in itertools.combinations(points, r):
            s = set(subset)
            if all(a ^ b ^ c in s for a in s for b in s for c in s):
                affine_sets.append(frozenset(s))
    assert len(affine_sets) == 11
    enumerated = {
        frozenset(p.index for p in sub.points()) for sub in enumerate_affine_subspaces(2)
    }
    assert enumerated == set(affine_sets)


def test_canonical_uniqueness_exhaustive():
    # Equal point sets iff equal records, for every subspace up to n=3.
    for n in (1, 2, 3):
        seen = {}
        for sub in enumerate_affine_subspaces(n):
            key = frozenset(p.index for p in sub.points())
            assert key not in seen, f"duplicate canonical form for {key}"
            seen[key] = sub
        # Rebuilding from raw points reproduces the canonical record.
        for key, sub in seen.items():
            rebuilt = AffineSubspace.from_points([BitVector(n, i) for i in sorted(key)])
            assert rebuilt == sub


def test_membership():
    sub = AffineSubspace.from_points([BitVector.from_string("01"), BitVector.from_string("10")])
    assert sub.membership(sub.offset) == 0
    assert sub.membership(BitVector.from_string("11")) is None
    assert sub.membership(BitVector.from_string("10")) == 1
    full = AffineSubspace.full_space(3)
    for i in range(8):
        assert BitVector(3, i) in full


def test_membership_coordinates_roundtrip():
    for n in (2, 3):
        for sub in enumerate_affine_subspaces(n):
            for coords in range(1 << sub.dim):
                bits = sub.offset.bits
                for i in range(sub.dim):
                    if (coords >> (sub.dim - 1 - i)) & 1:
                        bits ^= sub.basis[i].bits
                assert sub.membership(BitVector(n, bits)) == coords


def test_bitvector_string_roundtrip():
    v = BitVector.from_string("0101")
    assert v.to_string() == "0101"
    assert v.bit(0) == 0 and v.bit(1) == 1
    assert v.index == 5
    assert (v ^ BitVector.from_string("1100")).to_string() == "1001"


def test_forms_count_and_evaluation():
    assert len(enumerate_linear_forms(3)) == 8
    assert len(enumerate_quadratic_forms(3)) == 2 ** 6
    q = QuadraticFormF2(2, (0b11, 0b01))  # x0^2 + x0 x1 + x1^2
    # coords packed MSB-first: x = (x0, x1)
    assert q.evaluate(0b00) == 0
    assert q.evaluate(0b10) == 1
    assert q.evaluate(0b01) == 1
    assert q.evaluate(0b11) == 1  # 1 + 1 + 1
    ell = LinearFormF2(2, 0b10)
    assert ell.evaluate(0b10) == 1 and ell.evaluate(0b01) == 0


def test_quadratic_form_rejects_lower_triangle():
    with pytest.raises(ValueError):
        QuadraticFormF2(2, (0b01, 0b10))


def test_anf_degree():
    # x0*x1 on 2 bits: truth table indexed MSB-first
    table = [0, 0, 0, 1]
    assert anf_degree(table, 2) == 2
    assert anf_degree([0, 1, 1, 0], 2) == 1  # x0 + x1
    assert anf_degree([0, 0, 0, 0], 2) == 0
