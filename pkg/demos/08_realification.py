"""Working over the reals: the realification trick.

For any normal-form state sigma = re + i*im, the companion rho = re - im
is supported on the same subspace with +-1 entries, and
Re((a+ib) sigma) = (a-b) re + b rho for all real a, b.  Term by term
this converts any decomposition of a real target into one over real
stabilizer states at most twice as long.
"""

from fractions import Fraction

from stabrank.exactnum import Cyclotomic8, ONE, I_UNIT
from stabrank.genericrank import combine_upper_bound, realify, realify_decomposition, subgeneric_count_bound
from stabrank.ranksearch import Decomposition
from stabrank.stabset import amplitudes, enumerate_stabilizers

d1 = enumerate_stabilizers(1)
state = next(s for s in d1 if amplitudes(s) == [ONE, I_UNIT])
re_part, rho = realify(state)
print("sigma = e_0 + i e_1:  re =", re_part, " rho =", rho)

# A complex-coefficient decomposition of a real vector...
plus_i = state
minus_i = next(s for s in d1 if amplitudes(s) == [ONE, -I_UNIT])
d = Decomposition.from_parts(
    1,
    [
        (Cyclotomic8.from_gaussian(Fraction(1), Fraction(1)), plus_i),
        (Cyclotomic8.from_gaussian(Fraction(1), Fraction(-1)), minus_i),
    ],
)
print("\ncomplex decomposition of", [str(a) for a in d.resum()])
real = realify_decomposition(d)
print("real version has", len(real), "terms and re-sums to", [str(a) for a in real.resum()])

print("\ncounting consequences:")
print("  states of sub-worst-case doubled rank, n=2:", subgeneric_count_bound(2, 3))
print("  spanning-combination bound r(n+1), r=2, n=2:", combine_upper_bound(2, 2))
