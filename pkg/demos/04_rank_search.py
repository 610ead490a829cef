"""Exact stabilizer ranks of small states, with certified witnesses.

The T state e_0 + zeta e_1 has rank 2; so does its tensor square, and
the cube has rank 3 -- each computed by exhaustive search over the
full dictionary with exact confirmation of every candidate.
"""

from stabrank.exactnum import ONE, ZETA
from stabrank.ranksearch import min_spanning_symmetric, stabilizer_rank
from stabrank.stabset import enumerate_stabilizers

T = [ONE, ZETA]

result = stabilizer_rank(T)
print("chi(T) =", result.rank)
for coeff, state in result.witness.terms:
    print("  ", str(coeff), "x", state.to_json())

tt = [a * b for a in T for b in T]
print("\nchi(T x T) =", stabilizer_rank(tt).rank)

print("\ncomputing chi(T x T x T) exhaustively over 1080 states...")
ttt = [a * b for a in tt for b in T]
result = stabilizer_rank(ttt)
print("chi(T x T x T) =", result.rank)
print("witness re-sums exactly:", result.witness.resum() == ttt)

# Smallest dictionary subsets spanning the symmetric subspace: these
# bound the worst-case rank of any n-fold power of a qubit state.
for n in (1, 2, 3):
    value, witness, exact = min_spanning_symmetric(n)
    print(f"\nchi_{n} = {value} (exact={exact}), witness indices {witness}")
    if n == 3:
        d3 = enumerate_stabilizers(3)
        for j in witness:
            print("   ", d3[j].to_json())
