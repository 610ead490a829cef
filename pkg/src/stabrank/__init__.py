"""stabrank: exact stabilizer-rank computation and Clifford+T simulation.

Subpackages by capability:

* ``exactnum``    exact arithmetic in Q(zeta_8) and Q(sqrt 2)
* ``f2alg``       bit vectors, affine subspaces and forms over F_2
* ``stabset``     stabilizer-state normal form, dictionaries, counting
* ``chform``      phase-exact CH-form simulation of Clifford circuits
* ``ranksearch``  exact rank search, spanning sets, multiplicativity
* ``boundscalc``  doubling-chain certificates and rank lower bounds
* ``genericrank`` realification and worst-case-power reductions
* ``tsim``        Clifford+T strong simulation and the circuit format
* ``cli``         command-line front end (``stabrank`` entry point)
"""

from .exactnum import (
    BigRational,
    Cyclotomic8,
    RealQuadratic,
    cyc_mul,
    magnitude_sq,
    rq_compare,
)
from .f2alg import (
    AffineSubspace,
    BitVector,
    LinearFormF2,
    QuadraticFormF2,
    enumerate_affine_subspaces,
    gaussian_binomial,
)
from .stabset import (
    StabDictionary,
    StabilizerState,
    amplitudes,
    count_stabilizers,
    enumerate_stabilizers,
    is_stabilizer,
    preparation_circuit,
)
from .chform import CHForm, CliffordGate, ch_amplitude, ch_apply, ch_from_stabilizer, ch_init
from .ranksearch import (
    Decomposition,
    RankResult,
    in_span,
    min_spanning_symmetric,
    multiplicativity_check,
    stabilizer_rank,
)
from .boundscalc import (
    approx_lower_bound_value,
    approx_rank_upper,
    hard_state,
    longest_exp_subsequence,
    qubit_power_lower_bound,
    rank_lower_bound,
    t_power_lower_bound,
    truncation_distance,
    verify_subset_sum,
)
from .genericrank import (
    SymmetricBasis,
    combine_upper_bound,
    realify,
    realify_decomposition,
    subgeneric_count_bound,
)
from .tsim import Circuit, amplitude, gadgetize, outcome_probability, parse_circuit, t_decomposition

__version__ = "0.1.0"
