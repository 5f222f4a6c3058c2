import random

import pytest
from hypothesis import given, settings, strategies as st

from lcmlattice.census import enumerate_atomic_lattices
from lcmlattice.construct import boolean_lattice, lcm_lattice, minimal_ideal
from lcmlattice.distributive import (
    covering_primes,
    fiber_extrema,
    filter_lattice_j,
    find_n,
    order_filters,
    phi_xc_embedding,
    realize_as_mi,
    series_parallel_check,
)
from lcmlattice.errors import NotAtomic, NotSquarefree
from lcmlattice.monomial import MonomialIdeal, squarefree_monomials
from lcmlattice.poset import build_from_covers, lattice_structure, meet_irreducibles
from lcmlattice.verify import random_squarefree_ideal

from conftest import ideal

FIG4 = "bde,cde,ace,acd"


def antichain(n):
    return build_from_covers([f"p{i}" for i in range(n)], [])


def chain(n):
    ids = [f"c{i}" for i in range(n)]
    return build_from_covers(ids, list(zip(ids, ids[1:])))


N_POSET = build_from_covers(list("abcd"), [("a", "c"), ("b", "c"), ("b", "d")])


def brute_filters(p):
    out = []
    for m in range(1 << p.n):
        if all(p.up(i) & m == p.up(i) for i in range(p.n) if m >> i & 1):
            out.append(m)
    return sorted(out)


def test_filter_counts():
    assert len(order_filters(antichain(2))) == 4
    assert len(order_filters(chain(2))) == 3
    mi = meet_irreducibles(lcm_lattice(ideal("bd,cd,ac")).lattice)
    assert len(order_filters(mi)) == 9


@st.composite
def posets(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=10)) if pairs else []
    ids = [f"p{i}" for i in range(n)]
    return build_from_covers(ids, [(ids[i], ids[j]) for i, j in rel])


@given(posets())
@settings(max_examples=100, deadline=None)
def test_birkhoff(p):
    assert sorted(order_filters(p)) == brute_filters(p)
    J = filter_lattice_j(p)
    assert J.distributive
    lat = J.lattice
    # elements of J with exactly one upper cover are exactly the principal filters
    # (the bottom counts too when P has a minimum)
    one_cover = {J.filters[k] for k in range(lat.n) if bin(lat.poset.upper_covers(k)).count("1") == 1}
    assert one_cover == {p.up(i) for i in range(p.n)}


def test_xc_embedding_examples():
    emb = phi_xc_embedding(boolean_lattice(3))
    # every filter of the 3-antichain except the full one, which would be the bottom
    J = filter_lattice_j(emb.mi_poset)
    assert emb.check and emb.image == frozenset(J.filters) - {0b111}
    X = lcm_lattice(ideal("bd,cd,ac"))
    emb = phi_xc_embedding(X.lattice)
    assert emb.check and len(emb.image) == 6
    assert filter_lattice_j(emb.mi_poset).lattice.n == 9


def test_xc_embedding_chain():
    lat = lattice_structure(chain(3))
    with pytest.raises(NotAtomic):
        phi_xc_embedding(lat)
    emb = phi_xc_embedding(lat, require_atomic=False)
    assert len(emb.image) == 2


@pytest.mark.parametrize("r", [2, 3, 4])
def test_phi_order_reversing(r):
    for lat in enumerate_atomic_lattices(r):
        emb = phi_xc_embedding(lat)
        m = emb.mi_poset.n
        for S in range(1 << m):
            for T in range(1 << m):
                if S & T == S:
                    # larger sets generate larger filters, i.e. smaller elements of J
                    assert emb.phi(S) & emb.phi(T) == emb.phi(S)


# associated primes


def test_primes_golden():
    data = covering_primes(ideal(FIG4))
    assert {frozenset(p) for p in data.associated} == {frozenset(s) for s in ("bc", "ad", "ae", "de", "cd", "ce")}
    assert all(data.checks.values())
    assert data.format(compact=True) == "(bde,cde,ace,acd) = (a,d) ∩ (a,e) ∩ (b,c) ∩ (c,d) ∩ (c,e) ∩ (d,e)"


def test_primes_small():
    assert covering_primes(ideal("x,y")).associated == (("x", "y"),)
    assert {frozenset(p) for p in covering_primes(ideal("ab,cd")).associated} == \
        {frozenset(s) for s in ("ac", "ad", "bc", "bd")}
    with pytest.raises(NotSquarefree):
        covering_primes(MonomialIdeal.parse("x^2"))


def test_primary_decomposition_membership():
    rng = random.Random(3)
    for _ in range(60):
        I = random_squarefree_ideal(rng, max_vars=8, max_gens=6)
        primes = covering_primes(I).associated
        for m in squarefree_monomials(I.variables):
            in_all = all(any(v in m.support for v in p) for p in primes)
            assert I.contains(m) == in_all


def test_fiber_examples():
    assert fiber_extrema(boolean_lattice(3)).ok
    assert all(len(v) == 1 for v in fiber_extrema(boolean_lattice(3)).fibers.values())
    rep = fiber_extrema(lcm_lattice(ideal("bd,cd,ac")).lattice)
    assert rep.ok and len(rep.fibers) == 9
    assert sum(len(v) for v in rep.fibers.values()) == 16
    L4 = lcm_lattice(ideal(FIG4)).lattice
    rep = fiber_extrema(L4)
    assert rep.ok and sum(len(v) for v in rep.fibers.values()) == 2 ** len(L4.meet_irreducible_indices)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_prime_minima_agree_with_fibers(r):
    for lat in enumerate_atomic_lattices(r):
        rep = fiber_extrema(lat)
        assert rep.ok
        names = [f"m{i}" for i in range(len(lat.meet_irreducible_indices))]
        M = minimal_ideal(lat, names=dict(zip(lat.meet_irreducible_indices, names)))
        primes = covering_primes(M).associated
        masks = {sum(1 << names.index(v) for v in p) for p in primes}
        emb = phi_xc_embedding(lat)
        assert all(rep.minima[emb.phi(S)] == S for S in masks)


# N-free posets and realizability


def test_n_poset():
    res = series_parallel_check(N_POSET)
    assert not res.n_free and set(res.witness) == set("abcd")
    assert res.realizable is False


def test_chain_is_n_free():
    res = series_parallel_check(chain(4), realize=False)
    assert res.n_free and res.witness is None


def test_mi_contains_n():
    L = lcm_lattice(MonomialIdeal.parse("b^2*c*d, a*b*d, a*b*c, a^2*c*d")).lattice
    P = meet_irreducibles(L)
    assert find_n(P) is not None
    ok, lat = realize_as_mi(P)
    assert ok is True and find_n(meet_irreducibles(lat)) is not None


def test_poset_with_minimum_not_realizable():
    # a realization would put the minimum of mi L above every atom
    assert realize_as_mi(chain(3)) == (False, None)


def test_realizable_antichain():
    ok, lat = realize_as_mi(antichain(3))
    mi = meet_irreducibles(lat)
    assert ok is True and mi.n == 3 and mi.is_antichain(range(3))


def test_realization_search_bounded():
    # a tiny node budget leaves the answer unknown rather than guessed
    P = meet_irreducibles(lcm_lattice(ideal(FIG4)).lattice)
    assert realize_as_mi(P, max_nodes=1)[0] in (None, True)
