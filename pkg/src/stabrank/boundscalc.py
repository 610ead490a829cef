"""Rank lower bounds from exponentially increasing coordinate chains,
subset-sum verification, explicit hard product states, and truncation
distances.

The central certificate is an index chain i_1, ..., i_p into a
coordinate tuple with |a_{i_{j+1}}| >= 2 |a_{i_j}| for consecutive
entries (checked exactly in squared form).  A coordinate tuple with a
chain of length p admits no subset-sum representation shorter than
p / log2(p), and any state whose coordinates carry such a chain has
stabilizer rank at least p / (4 log2 p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exactnum import Cyclotomic8, RealQuadratic, rq_compare

_FOUR = RealQuadratic(4, 0)


@dataclass(frozen=True)
class ExpSubseqCertificate:
    """Indices of a doubling chain, plus the verified length."""

    indices: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.indices)

    def verify(self, coords: Sequence[Cyclotomic8]) -> bool:
        """Independent exact re-check of the chain conditions."""
        mags = [coords[i].magnitude_sq() for i in self.indices]
        if any(m.is_zero() for m in mags):
            return False
        return all(
            rq_compare(mags[j + 1], mags[j] * _FOUR) >= 0 for j in range(len(mags) - 1)
        )


def _distinct_sorted_magnitudes(coords: Sequence[Cyclotomic8]):
    """(magnitude, first index) pairs, deduplicated and exactly sorted.

    Equal-magnitude coordinates can never both sit on a doubling chain,
    so deduplication loses nothing and keeps the sort small even for
    million-entry product-state coordinate lists.
    """
    from functools import cmp_to_key

    first_index: dict = {}
    for i, a in enumerate(coords):
        if a.is_zero():
            continue
        mag = a.magnitude_sq()
        if mag not in first_index:
            first_index[mag] = i
    if not first_index:
        raise ValueError("all coordinates are zero")
    entries = list(first_index.items())
    entries.sort(key=cmp_to_key(lambda x, y: rq_compare(x[0], y[0])))
    return entries


def longest_exp_subsequence(coords: Sequence[Cyclotomic8]) -> ExpSubseqCertificate:
    """Maximum-length doubling chain through the nonzero coordinates.

    Greedy over exact magnitudes sorted ascending: start at the
    smallest element, then repeatedly take the smallest element at
    least twice as large.  The tuple is treated as a multiset; indices
    in the certificate need not be positionally increasing.
    """
    if not coords:
        raise ValueError("coordinate list is empty")
    entries = _distinct_sorted_magnitudes(coords)
    chain = [entries[0]]
    for mag, idx in entries[1:]:
        if rq_compare(mag, chain[-1][0] * _FOUR) >= 0:
            chain.append((mag, idx))
    return ExpSubseqCertificate(tuple(i for _, i in chain))


def longest_exp_subsequence_dp(coords: Sequence[Cyclotomic8]) -> int:
    """Quadratic dynamic-programming oracle for the chain length."""
    mags = [m for m, _ in _distinct_sorted_magnitudes(coords)]
    best = [1] * len(mags)
    for i in range(len(mags)):
        for j in range(i):
            if rq_compare(mags[i], mags[j] * _FOUR) >= 0:
                best[i] = max(best[i], best[j] + 1)
    return max(best)


def _ceil_over_4log2(p: int) -> int:
    """ceil(p / (4 log2 p)) for p >= 2, exact at powers of two."""
    if (p & (p - 1)) == 0:
        frac = Fraction(p, 4 * (p.bit_length() - 1))
        return -((-frac.numerator) // frac.denominator)
    # log2 p is irrational here, so the quotient is never an integer and
    # the float ceiling is safe.
    return math.ceil(p / (4 * math.log2(p)))


def rank_lower_bound(psi: Sequence[Cyclotomic8]) -> int:
    """Stabilizer-rank lower bound ceil(p / (4 log2 p)) from the
    longest doubling chain (1 when the chain is trivial)."""
    cert = longest_exp_subsequence(psi)
    if cert.p < 2:
        return 1
    return max(1, _ceil_over_4log2(cert.p))


def t_power_lower_bound(n: int) -> tuple[float, int]:
    """(n+1) / (4 log2 (n+1)) for the n-fold T-state, value and ceiling."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = n + 1
    if (p & (p - 1)) == 0:
        value = Fraction(p, 4 * (p.bit_length() - 1))
        return float(value), _ceil_over_4log2(p)
    return p / (4 * math.log2(p)), _ceil_over_4log2(p)


# ---------------------------------------------------------------------------
# Qubit-state normalization and its bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QubitPowerBound:
    tau: tuple[Cyclotomic8, Cyclotomic8]  # e_0 + alpha e_1, |alpha| > 1
    applied: str  # which normalization produced tau
    k: int  # minimal k with |alpha|^k >= 2
    n: int
    value: float
    ceiling: int


def _try_form(a0: Cyclotomic8, a1: Cyclotomic8) -> Optional[Cyclotomic8]:
    """alpha with [a0 e_0 + a1 e_1] = [e_0 + alpha e_1] and |alpha| > 1."""
    if a0.is_zero():
        return None
    alpha = a1 * a0.inverse()
    if rq_compare(alpha.magnitude_sq(), RealQuadratic(1, 0)) > 0:
        return alpha
    return None


def qubit_power_lower_bound(
    psi: tuple[Cyclotomic8, Cyclotomic8], n: int
) -> QubitPowerBound:
    """Lower bound on the rank of the n-fold power of a qubit state.

    Normalizes psi by the first of {identity, X, H, XH} that reaches
    e_0 + alpha e_1 with |alpha| > 1 exactly, takes the smallest k with
    |alpha|^k >= 2, and evaluates
    (floor(n/k)+1) / (4 log2 (floor(n/k)+1)).
    """
    from .stabset import is_stabilizer

    a0, a1 = psi
    if is_stabilizer([a0, a1]) is not None:
        raise ValueError("state is a stabilizer state; no bound applies")
    candidates = [
        ("identity", a0, a1),
        ("X", a1, a0),
        ("H", a0 + a1, a0 - a1),
        ("XH", a0 - a1, a0 + a1),
    ]
    for name, b0, b1 in candidates:
        alpha = _try_form(b0, b1)
        if alpha is not None:
            break
    else:  # unreachable for non-stabilizer states
        raise ValueError("normalization cascade failed")
    mag = alpha.magnitude_sq()
    k = 1
    acc = mag
    while rq_compare(acc, _FOUR) < 0:
        acc = acc * mag
        k += 1
    p = n // k + 1
    if p < 2:
        return QubitPowerBound((Cyclotomic8.from_int(1), alpha), name, k, n, 1.0, 1)
    value = p / (4 * math.log2(p))
    return QubitPowerBound(
        (Cyclotomic8.from_int(1), alpha), name, k, n, value, _ceil_over_4log2(p)
    )


# ---------------------------------------------------------------------------
# Subset-sum representations
# ---------------------------------------------------------------------------

MAX_SUBSET_LEN = 24


@dataclass(frozen=True)
class SubsetSumWitness:
    """For each target index i, the subset R_i of beta summing to alpha_i."""

    q: int
    r: int
    subsets: tuple[frozenset[int], ...]

    def verify(self, alpha, beta) -> bool:
        for i, subset in enumerate(self.subsets):
            total = Cyclotomic8.from_int(0)
            for j in subset:
                total = total + beta[j]
            if total != alpha[i]:
                return False
        return True


def verify_subset_sum(
    alpha: Sequence[Cyclotomic8], beta: Sequence[Cyclotomic8]
) -> Optional[SubsetSumWitness]:
    """Witness that beta subset-sum represents alpha, or None.

    Meet-in-the-middle over the two halves of beta; exact sums only.
    Caps |beta| at 24 (this is a test oracle, not a production solver).
    """
    r = len(beta)
    if r > MAX_SUBSET_LEN:
        raise ValueError(f"beta longer than {MAX_SUBSET_LEN}")
    half = r // 2
    lo, hi = beta[:half], beta[half:]
    lo_sums: dict[Cyclotomic8, int] = {}
    for mask in range(1 << len(lo)):
        total = Cyclotomic8.from_int(0)
        for j in range(len(lo)):
            if (mask >> j) & 1:
                total = total + lo[j]
        lo_sums.setdefault(total, mask)
    subsets = []
    for a in alpha:
        found = None
        for mask in range(1 << len(hi)):
            total = Cyclotomic8.from_int(0)
            for j in range(len(hi)):
                if (mask >> j) & 1:
                    total = total + hi[j]
            lo_mask = lo_sums.get(a - total)
            if lo_mask is not None:
                found = frozenset(
                    [j for j in range(len(lo)) if (lo_mask >> j) & 1]
                    + [half + j for j in range(len(hi)) if (mask >> j) & 1]
                )
                break
        if found is None:
            return None
        subsets.append(found)
    return SubsetSumWitness(len(alpha), r, tuple(subsets))


def doubling_targets(p: int) -> list[Cyclotomic8]:
    """The canonical doubling tuple (1, 2, 4, ..., 2^(p-1))."""
    return [Cyclotomic8.from_int(1 << j) for j in range(p)]


def min_subset_sum_length(p: int) -> float:
    """No representation of a length-p doubling chain is shorter than this."""
    return p / math.log2(p)


# ---------------------------------------------------------------------------
# Explicit hard product states
# ---------------------------------------------------------------------------


def hard_state_coordinates(n: int):
    """Iterator over the coordinates of the n-qubit doubling product state.

    The state is the tensor product over i = 1..n of
    e_0 + 2^(2^(i-1)) e_1, so the coordinate at x is 2 to the power
    sum_i x_i 2^(i-1); the multiset of coordinates is exactly
    {2^j : 0 <= j < 2^n}, each once.
    """
    if not 1 <= n <= 20:
        raise ValueError("supported range is 1 <= n <= 20")
    for idx in range(1 << n):
        exponent = 0
        for i in range(n):
            if (idx >> (n - 1 - i)) & 1:
                exponent |= 1 << i
        yield Cyclotomic8.from_int(1 << exponent)


def hard_state(n: int) -> list[Cyclotomic8]:
    """Dense coordinate vector of the doubling product state (n <= 12)."""
    if n > 12:
        raise ValueError("dense form limited to n <= 12; use hard_state_coordinates")
    return list(hard_state_coordinates(n))


@lru_cache(maxsize=None)
def _sqrt_fraction(x: Fraction, digits: int = 40) -> Fraction:
    """Rational approximation of sqrt(x) to ~digits decimal digits."""
    if x < 0:
        raise ValueError("negative argument")
    scale = 10**digits
    return Fraction(math.isqrt(x.numerator * scale * scale // x.denominator), scale)


def _partial_sum_ratio(n: int, k: int) -> Fraction:
    """c_{2^n - k - 1} / c_{2^n - 1} with c_i = (4^(i+1) - 1) / 3.

    This is the tail weight kept by truncating to the k largest
    coordinates; the final simplified line printed for the distance
    chain does not match this value (its leading term reads 4^(1-k)
    where direct evaluation gives 4^(-k)), so the partial-sum form is
    the one computed here and checked against the direct-norm oracle.
    """
    size = 1 << n
    if not 1 <= k <= size:
        raise ValueError("need 1 <= k <= 2^n")
    top = (4**size - 1) // 3
    if k == size:
        return Fraction(0)
    tail = (4 ** (size - k) - 1) // 3
    return Fraction(tail, top)


def truncation_distance(n: int, k: int) -> float:
    """Distance between the normalized doubling state and its k-largest
    truncation: sqrt(rho + (sqrt(1 - rho) - 1)^2) with rho the tail
    weight, evaluated in high-precision rationals."""
    rho = _partial_sum_ratio(n, k)
    root = _sqrt_fraction(1 - rho)
    dist_sq = rho + (root - 1) ** 2
    return float(_sqrt_fraction(dist_sq))


def truncation_distance_direct(n: int, k: int) -> float:
    """Direct-norm oracle: build both normalized vectors coordinate by
    coordinate (as exact rationals over high-precision square roots)
    and accumulate the squared distance."""
    size = 1 << n
    if not 1 <= k <= size:
        raise ValueError("need 1 <= k <= 2^n")
    c_top = Fraction((4**size - 1) // 3)
    c_kept = c_top - _partial_sum_ratio(n, k) * c_top
    norm_full = _sqrt_fraction(c_top)
    norm_trunc = _sqrt_fraction(c_kept)
    total = Fraction(0)
    for j in range(size):
        coord = Fraction(1 << j)
        a = coord / norm_full
        b = coord / norm_trunc if j >= size - k else Fraction(0)
        total += (a - b) ** 2
    return float(_sqrt_fraction(total))


def truncation_state(n: int, k: int) -> dict[int, int]:
    """Sparse {index: coordinate} keeping only the k largest coordinates."""
    size = 1 << n
    if not 1 <= k <= size:
        raise ValueError("need 1 <= k <= 2^n")
    kept = {}
    for idx, coord in enumerate(hard_state_coordinates(n)):
        j = coord.c0.numerator.bit_length() - 1
        if j >= size - k:
            kept[idx] = 1 << j
    return kept


def approx_rank_upper(n: int, delta: float) -> int:
    """Minimal k with truncation_distance(n, k) < delta; the k-term
    truncation is a sum of k basis states, so it upper-bounds the
    delta-approximate rank."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    for k in range(1, (1 << n) + 1):
        if truncation_distance(n, k) < delta:
            return k
    raise AssertionError("unreachable: distance at k = 2^n is 0")


def approx_lower_bound_value(n: int) -> float:
    """sqrt(n) / (2 log2 n), the approximate-rank lower-bound formula.

    Documentation-level evaluator: the certifying distance delta comes
    from a concentration argument whose constant is not computed here.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.sqrt(n) / (2 * math.log2(n))


@dataclass(frozen=True)
class ApproxBoundParams:
    """Parameters entering the approximate-rank lower bound for the
    n-fold power of e_0 + alpha e_1 with |alpha| > 1."""

    alpha: Cyclotomic8
    k: int  # minimal k with |alpha|^k > 2 (strict)
    lam: float  # 2 / |alpha|^k, in (0, 1)
    beta: float  # 1 / sqrt(1 + |alpha|^2)
    gamma: complex  # alpha / sqrt(1 + |alpha|^2)

    @classmethod
    def from_alpha(cls, alpha: Cyclotomic8) -> "ApproxBoundParams":
        mag = alpha.magnitude_sq()
        if rq_compare(mag, RealQuadratic(1, 0)) <= 0:
            raise ValueError("need |alpha| > 1")
        k = 1
        acc = mag
        while rq_compare(acc, _FOUR) <= 0:
            acc = acc * mag
            k += 1
        alpha_f = alpha.to_complex()
        denom = math.sqrt(1 + abs(alpha_f) ** 2)
        lam = 2 / abs(alpha_f) ** k
        params = cls(alpha, k, lam, 1 / denom, alpha_f / denom)
        assert 0 < lam < 1
        assert abs(params.beta**2 + abs(params.gamma) ** 2 - 1) < 1e-12
        return params
