"""Linear algebra over F_2: bit vectors, affine subspaces, forms, counting.

Vectors live in F_2^n for n <= 20 and are packed into Python ints.  The
string form of a vector is most-significant-bit first, so coordinate 0
(qubit 1) is the leftmost character, and the packed int equals the
index of the corresponding computational basis vector in a dense
amplitude array.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

MAX_N = 20
MAX_ENUM_N = 6


@dataclass(frozen=True)
class BitVector:
    """A vector in F_2^n, packed MSB-first into ``bits``.

    ``bits`` equals the dense basis index of e_x, i.e. coordinate i
    contributes 2^(n-1-i).
    """

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"bit vector length must be in [1, {MAX_N}]")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("bits out of range for length")

    @classmethod
    def zero(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, values) -> "BitVector":
        values = list(values)
        bits = 0
        for b in values:
            bits = (bits << 1) | (b & 1)
        return cls(len(values), bits)

    def bit(self, i: int) -> int:
        """Coordinate i (0-based, leftmost in the string form)."""
        return (self.bits >> (self.n - 1 - i)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_string(self) -> str:
        return format(self.bits, f"0{self.n}b")

    @property
    def index(self) -> int:
        """Dense basis index of e_x (just the packed bits)."""
        return self.bits

    def __str__(self):
        return self.to_string()


def _leading_pos(bits: int, n: int) -> int:
    """Position (0-based, from the left) of the leading 1 bit."""
    return n - bits.bit_length()


def _rref(rows: list[int], n: int) -> list[int]:
    """Reduced row echelon form of int-packed rows; returns pivot rows
    sorted by increasing pivot position, zero rows dropped."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            if row & (1 << (b.bit_length() - 1)):
                row ^= b
        if row:
            lead = 1 << (row.bit_length() - 1)
            basis = [b ^ row if b & lead else b for b in basis]
            basis.append(row)
            basis.sort(reverse=True)
    return basis


@dataclass(frozen=True)
class AffineSubspace:
    """An affine subspace offset + span(basis) of F_2^n in canonical form.

    The basis rows are in reduced row echelon form with strictly
    increasing pivot positions, and the offset has zero bits in every
    pivot position, so equal point sets compare equal as records.
    """

    n: int
    basis: tuple[BitVector, ...]
    offset: BitVector

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_generators(cls, n: int, generators, offset: BitVector) -> "AffineSubspace":
        """Canonicalize an arbitrary generating set plus offset point."""
        rows = _rref([g.bits for g in generators], n)
        off = offset.bits
        for r in rows:
            lead = 1 << (r.bit_length() - 1)
            if off & lead:
                off ^= r
        return cls(n, tuple(BitVector(n, r) for r in rows), BitVector(n, off))

    @classmethod
    def from_points(cls, points: list[BitVector]) -> "AffineSubspace":
        """Canonical form of the affine hull of the given points."""
        if not points:
            raise ValueError("need at least one point")
        n = points[0].n
        p0 = points[0]
        return cls.from_generators(n, [p ^ p0 for p in points[1:]], p0)

    @classmethod
    def single_point(cls, p: BitVector) -> "AffineSubspace":
        return cls(p.n, (), p)

    @classmethod
    def full_space(cls, n: int) -> "AffineSubspace":
        basis = tuple(BitVector(n, 1 << (n - 1 - i)) for i in range(n))
        return cls(n, basis, BitVector.zero(n))

    def pivots(self) -> tuple[int, ...]:
        return tuple(_leading_pos(b.bits, self.n) for b in self.basis)

    def points(self) -> Iterator[BitVector]:
        """All 2^dim points, in coordinate order (coords as MSB-first ints)."""
        for coords in range(1 << self.dim):
            bits = self.offset.bits
            for i in range(self.dim):
                if (coords >> (self.dim - 1 - i)) & 1:
                    bits ^= self.basis[i].bits
            yield BitVector(self.n, bits)

    def point_mask(self) -> int:
        """Bitmask over dense indices with a 1 at every member point."""
        mask = 0
        for p in self.points():
            mask |= 1 << p.index
        return mask

    def membership(self, x: BitVector) -> Optional[int]:
        """Coordinates of x w.r.t. the canonical basis, or None if x not in A.

        Coordinates are returned packed MSB-first over dim bits (0 for
        a zero-dimensional subspace), matching the form evaluators.
        """
        if x.n != self.n:
            raise ValueError("length mismatch")
        rem = x.bits ^ self.offset.bits
        coords = 0
        for i, b in enumerate(self.basis):
            lead = 1 << (b.bits.bit_length() - 1)
            if rem & lead:
                rem ^= b.bits
                coords |= 1 << (self.dim - 1 - i)
        if rem:
            return None
        return coords

    def __contains__(self, x: BitVector) -> bool:
        return self.membership(x) is not None

    def sort_key(self):
        return (self.dim, tuple(b.bits for b in self.basis), self.offset.bits)

    def __str__(self):
        rows = ",".join(b.to_string() for b in self.basis)
        return f"{self.offset.to_string()}+<{rows}>"


def membership(subspace: AffineSubspace, x: BitVector):
    """(is member, coordinates or None) for x against a subspace."""
    coords = subspace.membership(x)
    return coords is not None, coords


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional linear subspaces of F_2^n, exactly."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    assert num % den == 0
    return num // den


def count_affine_subspaces(n: int) -> int:
    """Total number of affine subspaces of F_2^n of every dimension."""
    return sum(gaussian_binomial(n, k) << (n - k) for k in range(n + 1))


def _rref_bases(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All RREF bases of k-dimensional linear subspaces of F_2^n.

    Pivot positions are chosen left to right; the free entries of each
    row are the non-pivot columns to the right of its own pivot.
    """
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_cols = [
            [c for c in range(p + 1, n) if c not in pivot_set] for p in pivots
        ]
        free_total = sum(len(cols) for cols in free_cols)
        for assignment in range(1 << free_total):
            rows = []
            pos = 0
            for i, p in enumerate(pivots):
                row = 1 << (n - 1 - p)
                for c in free_cols[i]:
                    if (assignment >> pos) & 1:
                        row |= 1 << (n - 1 - c)
                    pos += 1
                rows.append(row)
            yield tuple(rows)


def enumerate_affine_subspaces(n: int) -> list[AffineSubspace]:
    """Every affine subspace of F_2^n exactly once, in canonical order."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUM_N}")
    out: list[AffineSubspace] = []
    for k in range(n + 1):
        for rows in _rref_bases(n, k):
            pivot_mask = 0
            for r in rows:
                pivot_mask |= 1 << (r.bit_length() - 1)
            basis = tuple(BitVector(n, r) for r in rows)
            # Canonical coset representatives: all vectors with zero
            # bits in every pivot position.
            free_positions = [i for i in range(n) if not (pivot_mask >> (n - 1 - i)) & 1]
            for choice in range(1 << len(free_positions)):
                off = 0
                for j, pos in enumerate(free_positions):
                    if (choice >> j) & 1:
                        off |= 1 << (n - 1 - pos)
                out.append(AffineSubspace(n, basis, BitVector(n, off)))
    out.sort(key=AffineSubspace.sort_key)
    return out


@dataclass(frozen=True)
class LinearFormF2:
    """l(x) = sum_i l_i x_i mod 2 on F_2^k coordinates."""

    k: int
    coeffs: int  # packed MSB-first like BitVector over k coords

    def __post_init__(self):
        if self.k and not 0 <= self.coeffs < (1 << self.k):
            raise ValueError("coefficients out of range")

    @classmethod
    def zero(cls, k: int) -> "LinearFormF2":
        return cls(k, 0)

    def evaluate(self, coords: int) -> int:
        return (self.coeffs & coords).bit_count() & 1

    def to_string(self) -> str:
        return format(self.coeffs, f"0{self.k}b") if self.k else ""


@dataclass(frozen=True)
class QuadraticFormF2:
    """q(x) = sum_{i<=j} Q_ij x_i x_j mod 2 with upper-triangular Q.

    Row i is packed MSB-first over the k coordinates; bits strictly
    below the diagonal are zero, so q(0) = 0 by construction.
    """

    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.k:
            raise ValueError("need exactly k rows")
        for i, row in enumerate(self.rows):
            if self.k and not 0 <= row < (1 << self.k):
                raise ValueError("row out of range")
            if row & ~_upper_mask(self.k, i):
                raise ValueError(f"row {i} has entries below the diagonal")

    @classmethod
    def zero(cls, k: int) -> "QuadraticFormF2":
        return cls(k, (0,) * k)

    def evaluate(self, coords: int) -> int:
        total = 0
        for i, row in enumerate(self.rows):
            if (coords >> (self.k - 1 - i)) & 1:
                total ^= (row & coords).bit_count() & 1
        return total

    def to_strings(self) -> list[str]:
        return [format(r, f"0{self.k}b") for r in self.rows]


def _upper_mask(k: int, i: int) -> int:
    """Mask of columns j >= i in MSB-first packing."""
    return (1 << (k - i)) - 1


def enumerate_linear_forms(k: int) -> list[LinearFormF2]:
    return [LinearFormF2(k, c) for c in range(1 << k)]


def enumerate_quadratic_forms(k: int) -> list[QuadraticFormF2]:
    """All 2^(k(k+1)/2) upper-triangular quadratic forms, in packed order."""
    widths = [k - i for i in range(k)]
    total_bits = sum(widths)
    out = []
    for code in range(1 << total_bits):
        rows = []
        pos = 0
        for i, w in enumerate(widths):
            rows.append((code >> pos) & ((1 << w) - 1))
            pos += w
        out.append(QuadraticFormF2(k, tuple(rows)))
    out.sort(key=lambda q: q.rows)
    return out


def anf_coefficients(table: list[int], k: int) -> list[int]:
    """Moebius transform of a truth table over F_2^k (coords MSB-first).

    Returns the algebraic normal form coefficient for each monomial,
    indexed by the monomial's variable mask.
    """
    if len(table) != 1 << k:
        raise ValueError("table length must be 2^k")
    coeffs = [t & 1 for t in table]
    for i in range(k):
        step = 1 << (k - 1 - i)
        for x in range(1 << k):
            if x & step:
                coeffs[x] ^= coeffs[x ^ step]
    return coeffs


def anf_degree(table: list[int], k: int) -> int:
    """Algebraic degree of a boolean function given as a truth table."""
    coeffs = anf_coefficients(table, k)
    deg = 0
    for mask, c in enumerate(coeffs):
        if c:
            deg = max(deg, mask.bit_count())
    return deg
