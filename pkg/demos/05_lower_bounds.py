"""Rank lower bounds from exponentially increasing coordinates.

A length-p doubling chain in the coordinates forces rank at least
p / (4 log2 p); the explicit product state with coordinates
{1, 2, 4, ..., 2^(2^n - 1)} pushes this to 2^n / (4n) while staying
within constant distance of a k-term truncation.
"""

from stabrank.boundscalc import (
    approx_rank_upper,
    hard_state_coordinates,
    longest_exp_subsequence,
    qubit_power_lower_bound,
    rank_lower_bound,
    t_power_lower_bound,
    truncation_distance,
)
from stabrank.exactnum import ONE, ZETA

print("T-power lower bound (n+1)/(4 log2(n+1)):")
for n in (3, 15, 255, 1023):
    value, ceiling = t_power_lower_bound(n)
    print(f"  n={n}: {value:.3f} (ceil {ceiling})")

print("\nnormalizing a qubit state and bounding its power:")
res = qubit_power_lower_bound((ONE, ZETA), 255)
print(f"  T state: apply {res.applied}, k={res.k}, bound ceil={res.ceiling}")

print("\nexplicit hard states:")
for n in (3, 7, 10):
    coords = list(hard_state_coordinates(n))
    cert = longest_exp_subsequence(coords)
    print(f"  n={n}: chain length {cert.p} = 2^{n}, rank >= {rank_lower_bound(coords)}")

print("\n...yet constant-size truncations stay close:")
for delta in (0.6, 0.3, 0.1):
    k = approx_rank_upper(10, delta)
    print(f"  delta={delta}: k={k} terms suffice, distance {truncation_distance(10, k):.4f}")
