"""Finite atomic lattices, their minimal monomial ideals and resolutions."""

from .census import enumerate_atomic_lattices, sample_atomic_lattices
from .checks import bound_checks, embedding_checks
from .construct import (
    boolean_lattice,
    depolarize_by_chains,
    essential_pairs_and_filters,
    face_lattice,
    find_isomorphism,
    is_minimal_ideal,
    lattice_from_supports,
    lcm_lattice,
    minimal_embedding,
    minimal_ideal,
    nonminimal_ideal,
    same_lattice,
    specialize_n,
)
from .distributive import covering_primes, fiber_extrema, filter_lattice_j, phi_xc_embedding, series_parallel_check
from .errors import LatticeError, ResourceLimit
from .fields import GF2, QQ, FieldSpec
from .monomial import Monomial, MonomialIdeal, depolarization_map, polarize, substitute_variables
from .poset import FiniteLattice, FinitePoset, build_from_covers, chain_stats, lattice_structure, meet_irreducibles
from .resolutions import (
    BettiTable,
    betti_gpw,
    betti_hochster_oracle,
    has_linear_resolution,
    lattice_linear_characterization,
    linear_quotients,
    scarf_supports,
    taylor_scarf,
)
from .simplicial import (
    SimplicialComplex,
    alexander_dual,
    alexander_dual_ideal,
    delta_one,
    is_cohen_macaulay,
    reduced_homology,
    sr_complex,
    sr_ideal,
)

__version__ = "0.1.0"
