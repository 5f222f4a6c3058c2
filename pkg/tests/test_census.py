from itertools import combinations

import networkx as nx
import pytest

from lcmlattice.census import (
    atomic_families,
    canonical_family,
    enumerate_atomic_lattices,
    intersection_closure,
    sample_atomic_lattices,
    sample_families,
)
from lcmlattice.construct import is_minimal_ideal, lattice_from_supports, minimal_ideal, same_lattice
from lcmlattice.errors import ResourceLimit


def hasse_digraph(lat):
    g = nx.DiGraph()
    g.add_nodes_from(range(lat.n))
    g.add_edges_from(lat.poset.covers)
    return g


def atomic(lat):
    """Every element other than the bottom is the join of the atoms below it."""
    return all(lat.join_all([a for a in lat.atoms if lat.leq(a, b)]) == b
               for b in range(lat.n) if b != lat.bottom)


def census_by_graph_isomorphism(r):
    """Independent count: closed families deduplicated by Hasse-diagram isomorphism."""
    base = {0, (1 << r) - 1} | {1 << i for i in range(r)}
    optional = [m for m in range(1 << r) if 2 <= bin(m).count("1") <= r - 1]
    reps = []
    for k in range(len(optional) + 1):
        for chosen in combinations(optional, k):
            fam = base | set(chosen)
            if any(a & b not in fam for a in fam for b in fam):
                continue
            g = hasse_digraph(lattice_from_supports(sorted(fam), r))
            if not any(nx.is_isomorphic(g, h) for h in reps):
                reps.append(g)
    return len(reps)


@pytest.mark.parametrize("r,count", [(1, 1), (2, 1), (3, 4), (4, 50)])
def test_census_counts(r, count):
    assert len(atomic_families(r)) == count


@pytest.mark.parametrize("r", [2, 3, 4])
def test_census_matches_graph_isomorphism(r):
    assert census_by_graph_isomorphism(r) == len(atomic_families(r))


def test_census_members_are_atomic_and_distinct():
    lats = list(enumerate_atomic_lattices(4))
    assert all(atomic(lat) for lat in lats)
    graphs = [hasse_digraph(lat) for lat in lats]
    for a, b in combinations(range(len(graphs)), 2):
        assert not nx.is_isomorphic(graphs[a], graphs[b])


def test_census_refuses_five_atoms():
    with pytest.raises(ResourceLimit):
        atomic_families(5)


def test_canonical_family_is_relabeling_invariant():
    fam = [0, 1, 2, 4, 3, 7]
    other = [0, 1, 2, 4, 6, 7]
    assert canonical_family(fam, 3) == canonical_family(other, 3)


def test_intersection_closure():
    assert intersection_closure({0b110, 0b011}) == {0b110, 0b011, 0b010}


def test_samples_on_five_atoms_are_atomic():
    fams = sample_families(5, 15, seed=3)
    assert len(set(fams)) == len(fams)
    for lat in sample_atomic_lattices(5, 15, seed=3):
        assert atomic(lat)
        assert len(lat.atoms) == 5


def test_sampling_is_seeded():
    assert sample_families(5, 5, seed=1) == sample_families(5, 5, seed=1)


def test_minimal_ideal_roundtrip_three_atoms():
    from lcmlattice.construct import lcm_lattice

    for lat in enumerate_atomic_lattices(3):
        M = minimal_ideal(lat)
        assert is_minimal_ideal(M).is_minimal
        assert same_lattice(lcm_lattice(M).lattice, lat)
