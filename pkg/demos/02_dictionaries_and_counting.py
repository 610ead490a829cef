"""Enumerate stabilizer-state dictionaries and check the counting formulas.

A stabilizer state in normal form is (A, l, q): amplitudes
i^l(x) (-1)^q(x) on an affine subspace A of F_2^n.  Enumerating affine
subspaces times phase forms gives every state exactly once.
"""

from stabrank.f2alg import count_affine_subspaces, gaussian_binomial
from stabrank.stabset import amplitudes, count_stabilizers, enumerate_stabilizers

print("affine subspaces of F_2^n:")
for n in range(1, 5):
    print(f"  n={n}: {count_affine_subspaces(n)}")

print("\nGaussian binomials: [4 choose 2]_2 =", gaussian_binomial(4, 2))

print("\nstabilizer dictionary sizes (complex / real):")
for n in range(1, 5):
    real = count_stabilizers(n, real_only=True)
    print(f"  n={n}: {count_stabilizers(n)} / {real}")

d1 = enumerate_stabilizers(1)
print("\nall six single-qubit states (dense amplitudes):")
for state in d1:
    print("  ", [str(a) for a in amplitudes(state)])

# Dictionary order is canonical: index a state and get it back.
d2 = enumerate_stabilizers(2)
state = d2[17]
print("\nstate #17 of the 2-qubit dictionary:", state.to_json())
print("its index:", d2.index_of(state))
