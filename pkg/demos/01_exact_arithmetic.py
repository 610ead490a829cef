"""Tour of the exact scalar field.

Every amplitude in this package lives in Q(zeta_8) with zeta = e^{i pi/4}:
the field contains i = zeta^2 and sqrt(2) = zeta - zeta^3, so stabilizer
entries, T-gate phases and Hadamard normalizations all stay exact.
"""

from stabrank.exactnum import (
    Cyclotomic8,
    INV_SQRT2,
    ONE,
    RealQuadratic,
    SQRT2,
    ZETA,
    rq_compare,
)

print("zeta^4 =", ZETA * ZETA * ZETA * ZETA)
print("sqrt(2)^2 =", SQRT2 * SQRT2)
print("1/sqrt(2) * sqrt(2) =", INV_SQRT2 * SQRT2)

a = ONE + ZETA
print("\n|1 + zeta|^2 =", a.magnitude_sq(), "=", float(a.magnitude_sq()))
print("(1 + zeta)^-1 =", a.inverse())
print("check:", a * a.inverse())

# Exact ordering in Q(sqrt 2): 2 + sqrt(2) vs 3, decided rationally.
lhs = RealQuadratic(2, 1)
rhs = RealQuadratic(3, 0)
print("\ncompare 2 + sqrt2 vs 3:", rq_compare(lhs, rhs), "(positive: left is larger)")

# JSON wire format: four "p/q" strings.
print("\nJSON of zeta:", ZETA.to_json())
print("round-trip:", Cyclotomic8.from_json(ZETA.to_json()) == ZETA)
