"""Exact arithmetic over the cyclotomic field Q(zeta_8) and the real field Q(sqrt 2).

All amplitudes in this package are elements of Q(zeta_8) where
zeta_8 = exp(i*pi/4).  The field contains i = zeta^2 and
sqrt(2) = zeta - zeta^3, so it covers every scalar the toolkit needs:
the values {0, +-1, +-i} of stabilizer-state entries, the phase of the
T gate, and the 1/sqrt(2) factors introduced by Hadamard gates.

Rational coefficients are ``fractions.Fraction`` values (arbitrary
precision, always reduced, positive denominator), aliased here as
``BigRational``.
"""

from __future__ import annotations

import math
from fractions import Fraction

BigRational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def format_rational(x: Fraction) -> str:
    """Render a rational as "p/q" in lowest terms (q always explicit)."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a bare integer string into a Fraction."""
    return Fraction(text.strip())


class Cyclotomic8:
    """An element c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 of Q(zeta_8).

    The basis {1, zeta, zeta^2, zeta^3} is a Q-basis, so the
    representation is unique; products are reduced via zeta^4 = -1.
    Values are immutable and hashable.
    """

    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "c0", _as_fraction(c0))
        object.__setattr__(self, "c1", _as_fraction(c1))
        object.__setattr__(self, "c2", _as_fraction(c2))
        object.__setattr__(self, "c3", _as_fraction(c3))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic8 values are immutable")

    @classmethod
    def from_int(cls, n: int) -> "Cyclotomic8":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_rational(cls, x: Fraction) -> "Cyclotomic8":
        return cls(x, 0, 0, 0)

    @classmethod
    def from_gaussian(cls, re: Fraction, im: Fraction) -> "Cyclotomic8":
        """Build re + im*i (i = zeta^2)."""
        return cls(re, 0, im, 0)

    @classmethod
    def zeta_power(cls, k: int) -> "Cyclotomic8":
        """zeta^k for any integer k, reduced via zeta^8 = 1, zeta^4 = -1."""
        k %= 8
        sign = 1 if k < 4 else -1
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = sign
        return cls(*coeffs)

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Cyclotomic8") -> "Cyclotomic8":
        return Cyclotomic8(
            self.c0 + other.c0,
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.c3 + other.c3,
        )

    def __sub__(self, other: "Cyclotomic8") -> "Cyclotomic8":
        return Cyclotomic8(
            self.c0 - other.c0,
            self.c1 - other.c1,
            self.c2 - other.c2,
            self.c3 - other.c3,
        )

    def __neg__(self) -> "Cyclotomic8":
        return Cyclotomic8(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, other: "Cyclotomic8") -> "Cyclotomic8":
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = other.c0, other.c1, other.c2, other.c3
        # Convolution with zeta^4 = -1 wrap-around.
        return Cyclotomic8(
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )

    def scale(self, x: Fraction) -> "Cyclotomic8":
        x = _as_fraction(x)
        return Cyclotomic8(self.c0 * x, self.c1 * x, self.c2 * x, self.c3 * x)

    def conjugate(self) -> "Cyclotomic8":
        """Complex conjugation, the field map zeta -> -zeta^3."""
        return Cyclotomic8(self.c0, -self.c3, -self.c2, -self.c1)

    def galois(self, k: int) -> "Cyclotomic8":
        """The automorphism zeta -> zeta^k for odd k in {1, 3, 5, 7}."""
        if k % 2 == 0:
            raise ValueError("Galois automorphisms of Q(zeta_8) need odd k")
        out = [Fraction(0)] * 4
        for j, c in enumerate((self.c0, self.c1, self.c2, self.c3)):
            if c:
                e = (j * k) % 8
                if e < 4:
                    out[e] += c
                else:
                    out[e - 4] -= c
        return Cyclotomic8(*out)

    def inverse(self) -> "Cyclotomic8":
        """Multiplicative inverse via the product of Galois conjugates.

        a^-1 = sigma_3(a) sigma_5(a) sigma_7(a) / N(a) where the norm
        N(a) = a * sigma_3(a) * sigma_5(a) * sigma_7(a) is rational.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        cofactor = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * cofactor
        assert norm.c1 == 0 and norm.c2 == 0 and norm.c3 == 0
        return cofactor.scale(1 / norm.c0)

    def __truediv__(self, other: "Cyclotomic8") -> "Cyclotomic8":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Cyclotomic8":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def real_part(self) -> "RealQuadratic":
        """Real part as an element of Q(sqrt 2)."""
        return RealQuadratic(self.c0, (self.c1 - self.c3) / 2)

    def imag_part(self) -> "RealQuadratic":
        return RealQuadratic(self.c2, (self.c1 + self.c3) / 2)

    def magnitude_sq(self) -> "RealQuadratic":
        """|a|^2 = a * conj(a), exactly, as an element of Q(sqrt 2)."""
        p = self * self.conjugate()
        # A product of the form a*conj(a) is real: Q(zeta_8) ^ R = Q(sqrt 2).
        assert p.c2 == 0 and p.c1 == -p.c3
        return RealQuadratic(p.c0, p.c1)

    def to_complex(self) -> complex:
        """Floating-point evaluation with zeta = (1 + i)/sqrt(2)."""
        h = math.sqrt(0.5)
        re = float(self.c0) + h * (float(self.c1) - float(self.c3))
        im = float(self.c2) + h * (float(self.c1) + float(self.c3))
        return complex(re, im)

    # -- misc -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic8):
            return NotImplemented
        return (
            self.c0 == other.c0
            and self.c1 == other.c1
            and self.c2 == other.c2
            and self.c3 == other.c3
        )

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2, self.c3))

    def __repr__(self):
        return f"Cyclotomic8({self.c0}, {self.c1}, {self.c2}, {self.c3})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for c, name in zip((self.c0, self.c1, self.c2, self.c3), ("", "z", "z^2", "z^3")):
            if c:
                parts.append(f"{c}{'*' if name else ''}{name}")
        return " + ".join(parts)

    def to_json(self) -> list[str]:
        """JSON encoding: four "p/q" strings for the basis coefficients."""
        return [format_rational(c) for c in (self.c0, self.c1, self.c2, self.c3)]

    @classmethod
    def from_json(cls, data) -> "Cyclotomic8":
        if len(data) != 4:
            raise ValueError("Cyclotomic8 JSON must have exactly 4 entries")
        return cls(*(parse_rational(s) for s in data))


def cyc_mul(a: Cyclotomic8, b: Cyclotomic8) -> Cyclotomic8:
    """Product in Q(zeta_8), reduced via zeta^4 = -1."""
    return a * b


def magnitude_sq(a: Cyclotomic8) -> "RealQuadratic":
    """Squared magnitude a * conj(a) as an exact element of Q(sqrt 2)."""
    return a.magnitude_sq()


class RealQuadratic:
    """A real number u + v*sqrt(2) with rational u, v.

    Sign, comparison and equality are decided exactly by rational
    arithmetic alone (no floating point).
    """

    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        object.__setattr__(self, "u", _as_fraction(u))
        object.__setattr__(self, "v", _as_fraction(v))

    def __setattr__(self, name, value):
        raise AttributeError("RealQuadratic values are immutable")

    def __add__(self, other: "RealQuadratic") -> "RealQuadratic":
        return RealQuadratic(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "RealQuadratic") -> "RealQuadratic":
        return RealQuadratic(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "RealQuadratic":
        return RealQuadratic(-self.u, -self.v)

    def __mul__(self, other: "RealQuadratic") -> "RealQuadratic":
        return RealQuadratic(
            self.u * other.u + 2 * self.v * other.v,
            self.u * other.v + self.v * other.u,
        )

    def scale(self, x: Fraction) -> "RealQuadratic":
        x = _as_fraction(x)
        return RealQuadratic(self.u * x, self.v * x)

    def __pow__(self, n: int) -> "RealQuadratic":
        if n < 0:
            raise ValueError("negative powers not supported")
        result = RealQuadratic(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def sign(self) -> int:
        """Exact sign of u + v*sqrt(2): -1, 0 or +1."""
        u, v = self.u, self.v
        if v == 0:
            return -1 if u < 0 else (1 if u > 0 else 0)
        if u == 0:
            return -1 if v < 0 else 1
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # Opposite signs: compare u^2 against 2 v^2; the larger square wins.
        if u * u > 2 * v * v:
            return 1 if u > 0 else -1
        if u * u < 2 * v * v:
            return 1 if v > 0 else -1
        return 0  # unreachable: sqrt(2) is irrational, kept for clarity

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RealQuadratic(other, 0)
        if not isinstance(other, RealQuadratic):
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __lt__(self, other: "RealQuadratic") -> bool:
        return (self - _coerce_rq(other)).sign() < 0

    def __le__(self, other: "RealQuadratic") -> bool:
        return (self - _coerce_rq(other)).sign() <= 0

    def __gt__(self, other: "RealQuadratic") -> bool:
        return (self - _coerce_rq(other)).sign() > 0

    def __ge__(self, other: "RealQuadratic") -> bool:
        return (self - _coerce_rq(other)).sign() >= 0

    def __hash__(self):
        return hash((self.u, self.v))

    def __float__(self):
        return float(self.u) + math.sqrt(2.0) * float(self.v)

    def __repr__(self):
        return f"RealQuadratic({self.u}, {self.v})"

    def __str__(self):
        return f"{self.u} + {self.v}*sqrt(2)"


def _coerce_rq(x) -> RealQuadratic:
    if isinstance(x, RealQuadratic):
        return x
    if isinstance(x, (int, Fraction)):
        return RealQuadratic(x, 0)
    raise TypeError(f"cannot compare RealQuadratic with {type(x).__name__}")


def rq_compare(a: RealQuadratic, b: RealQuadratic) -> int:
    """Exact ordering of two Q(sqrt 2) reals: -1 (a<b), 0 (a=b), +1 (a>b)."""
    return (a - b).sign()


# Shared constants.
ZERO = Cyclotomic8(0)
ONE = Cyclotomic8(1)
MINUS_ONE = Cyclotomic8(-1)
I_UNIT = Cyclotomic8(0, 0, 1, 0)
ZETA = Cyclotomic8(0, 1, 0, 0)
SQRT2 = Cyclotomic8(0, 1, 0, -1)
INV_SQRT2 = Cyclotomic8(0, Fraction(1, 2), 0, Fraction(-1, 2))

# i^k lookup used by amplitude formulas everywhere.
I_POWERS = (ONE, I_UNIT, MINUS_ONE, Cyclotomic8(0, 0, -1, 0))

RQ_ZERO = RealQuadratic(0, 0)
RQ_ONE = RealQuadratic(1, 0)
RQ_TWO = RealQuadratic(2, 0)
