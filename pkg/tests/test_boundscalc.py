"""Doubling chains, subset sums, hard states, truncation distances."""

import math
import random
from fractions import Fraction

import pytest

from stabrank.boundscalc import (
    ApproxBoundParams,
    approx_lower_bound_value,
    approx_rank_upper,
    doubling_targets,
    hard_state,
    hard_state_coordinates,
    longest_exp_subsequence,
    longest_exp_subsequence_dp,
    min_subset_sum_length,
    qubit_power_lower_bound,
    rank_lower_bound,
    t_power_lower_bound,
    truncation_distance,
    truncation_distance_direct,
    truncation_state,
    verify_subset_sum,
)
from stabrank.exactnum import Cyclotomic8, I_UNIT, ONE, SQRT2, ZETA, ZERO


def _ints(values):
    return [Cyclotomic8.from_int(v) for v in values]


def test_chain_on_powers_of_two():
    cert = longest_exp_subsequence(_ints([1, 2, 4, 8]))
    assert cert.p == 4
    assert cert.verify(_ints([1, 2, 4, 8]))


def test_chain_ignores_zeros_and_duplicates():
    coords = _ints([0, 3, 3, 6, 0, 12])
    cert = longest_exp_subsequence(coords)
    assert cert.p == 3
    assert cert.verify(coords)


def test_chain_with_sqrt2_magnitudes():
    # coordinates of (e_0 + (sqrt2+1) e_1)^(x3): values (sqrt2+1)^j
    base = SQRT2 + ONE
    coords = [ONE]
    for _ in range(3):
        coords = [a * b for a in coords for b in (ONE, base)]
    cert = longest_exp_subsequence(coords)
    assert cert.p == 4  # |sqrt2+1| > 2, so every class chains


def test_chain_length_n_plus_one_up_to_twenty():
    # (e_0 + (sqrt2+1) e_1)^(tensor n): distinct coordinate values are
    # the powers (sqrt2+1)^j, j = 0..n; the chain takes every one since
    # sqrt2+1 > 2.  Multiplicities are irrelevant to the chain length,
    # so a two-per-class multiset exercises the dedup path.
    base = SQRT2 + ONE
    for n in range(1, 21):
        coords = []
        power = ONE
        for j in range(n + 1):
            coords.extend([power, power])
            power = power * base
        assert longest_exp_subsequence(coords).p == n + 1


def test_greedy_matches_dp_oracle():
    rng = random.Random(404)
    for _ in range(300):
        length = rng.randint(1, 50)
        coords = []
        for _ in range(length):
            coords.append(
                Cyclotomic8.from_gaussian(
                    Fraction(rng.randint(-64, 64), rng.randint(1, 9)),
                    Fraction(rng.randint(-64, 64), rng.randint(1, 9)),
                )
            )
        if all(a.is_zero() for a in coords):
            continue
        assert longest_exp_subsequence(coords).p == longest_exp_subsequence_dp(coords)


def test_rank_lower_bound_examples():
    assert rank_lower_bound(hard_state(5)) == 2  # ceil(32 / 20)
    assert rank_lower_bound([ONE, ZERO]) == 1
    tt = [a * b for a in (ONE, ZETA) for b in (ONE, ZETA)]
    assert rank_lower_bound(tt) == 1


def test_t_power_lower_bound_values():
    value, ceiling = t_power_lower_bound(3)
    assert value == 0.5 and ceiling == 1
    value, ceiling = t_power_lower_bound(15)
    assert value == 1.0 and ceiling == 1
    value, ceiling = t_power_lower_bound(255)
    assert value == 8.0 and ceiling == 8


def test_qubit_power_lower_bound_t_state():
    res = qubit_power_lower_bound((ONE, ZETA), 7)
    assert res.applied == "XH"
    assert res.k == 1
    # alpha = i/(sqrt2 - 1) = i(sqrt2 + 1)
    alpha = res.tau[1]
    assert alpha == I_UNIT * (SQRT2 + ONE)
    assert res.ceiling == math.ceil(8 / (4 * 3))


def test_qubit_power_lower_bound_plain_cases():
    res = qubit_power_lower_bound((ONE, Cyclotomic8.from_int(3)), 4)
    assert res.applied == "identity" and res.k == 1
    res = qubit_power_lower_bound(
        (ONE, Cyclotomic8.from_rational(Fraction(6, 5))), 8
    )
    assert res.k == 4  # (6/5)^4 = 2.0736 >= 2
    with pytest.raises(ValueError):
        qubit_power_lower_bound((ONE, I_UNIT), 3)


def test_verify_subset_sum_examples():
    alpha = _ints([1, 2, 3])
    beta = _ints([1, 2])
    witness = verify_subset_sum(alpha, beta)
    assert witness is not None
    assert witness.subsets[2] == frozenset({0, 1})
    assert witness.verify(alpha, beta)
    assert verify_subset_sum(_ints([1, 2, 4]), beta) is None


def test_subset_sum_respects_length_cap():
    with pytest.raises(ValueError):
        verify_subset_sum(_ints([1]), _ints(list(range(1, 26))))


def test_moulton_property_randomized():
    rng = random.Random(99)
    for p in (4, 8, 16):
        alpha = doubling_targets(p)
        max_len = math.ceil(min_subset_sum_length(p)) - 1
        for _ in range(300):
            length = rng.randint(1, max(1, max_len))
            beta = []
            for _ in range(length):
                if rng.random() < 0.5:
                    beta.append(Cyclotomic8.from_int(1 << rng.randrange(p)))
                else:
                    beta.append(
                        Cyclotomic8.from_gaussian(
                            Fraction(rng.randint(-(1 << p), 1 << p), rng.randint(1, 8)),
                            Fraction(rng.randint(-3, 3)),
                        )
                    )
            assert verify_subset_sum(alpha, beta) is None


def test_hard_state_coordinates():
    assert [a.c0 for a in hard_state(1)] == [1, 2]
    coords = {a.c0 for a in hard_state(3)}
    assert coords == {Fraction(1 << j) for j in range(8)}
    assert rank_lower_bound(hard_state(3)) == 1  # ceil(8/12)
    assert rank_lower_bound(list(hard_state_coordinates(7))) == 5  # ceil(128/28)


def test_hard_state_certificate_is_full_length():
    for n in (1, 2, 3, 6):
        assert longest_exp_subsequence(list(hard_state_coordinates(n))).p == 1 << n


def test_truncation_distance_examples():
    assert truncation_distance(4, 16) == 0.0
    d1 = truncation_distance(4, 1)
    assert math.isclose(d1, 0.5176, abs_tol=2e-4)
    d2 = truncation_distance(4, 2)
    assert math.isclose(d2, 0.2520, abs_tol=2e-4)


def test_truncation_formula_vs_direct_norm():
    for n in (1, 2, 3, 4, 5):
        for k in range(1, (1 << n) + 1):
            assert math.isclose(
                truncation_distance(n, k),
                truncation_distance_direct(n, k),
                abs_tol=1e-12,
            )


def test_truncation_state_keeps_largest():
    kept = truncation_state(3, 2)
    assert sorted(kept.values()) == [64, 128]


def test_truncation_large_n_limit():
    # k = 1 distance approaches sqrt(1/4 + (sqrt(3)/2 - 1)^2)
    limit = math.sqrt(0.25 + (math.sqrt(3) / 2 - 1) ** 2)
    assert math.isclose(truncation_distance(10, 1), limit, abs_tol=1e-6)


def test_approx_rank_upper():
    assert approx_rank_upper(4, 0.6) == 1
    assert approx_rank_upper(4, 0.3) == 2
    for n in (2, 5):
        assert approx_rank_upper(n, math.sqrt(2)) == 1
    with pytest.raises(ValueError):
        approx_rank_upper(3, 0.0)


def test_approx_lower_bound_value():
    assert approx_lower_bound_value(4) == 0.5
    assert approx_lower_bound_value(16) == 0.5
    assert math.isclose(approx_lower_bound_value(1024), 1.6)
    with pytest.raises(ValueError):
        approx_lower_bound_value(1)


def test_approx_bound_params():
    params = ApproxBoundParams.from_alpha(SQRT2 + ONE)
    assert params.k == 1
    assert 0 < params.lam < 1
    assert math.isclose(params.beta**2 + abs(params.gamma) ** 2, 1, abs_tol=1e-12)
    with pytest.raises(ValueError):
        ApproxBoundParams.from_alpha(ONE)


def test_bound_never_exceeds_exact_rank():
    from stabrank.ranksearch import stabilizer_rank

    rng = random.Random(2)
    for _ in range(15):
        psi = [
            Cyclotomic8.from_gaussian(
                Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
            )
            for _ in range(4)
        ]
        if all(a.is_zero() for a in psi):
            continue
        lower = rank_lower_bound(psi)
        exact = stabilizer_rank(psi).rank
        assert lower <= exact
