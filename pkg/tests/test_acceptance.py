"""The twelve acceptance criteria, each with its runtime budget.

Run under pytest (one test per criterion) or directly with
``python tests/test_acceptance.py``; either way one PASS/FAIL line is
printed per criterion.
"""

import io as stdio
import json
import random
import sys
import time
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lcmlattice import config
from lcmlattice.checks import PASS, bound_checks
from lcmlattice.cli import run_command
from lcmlattice.census import enumerate_atomic_lattices
from lcmlattice.construct import (
    boolean_lattice,
    face_lattice,
    is_minimal_ideal,
    lcm_lattice,
    minimal_ideal,
    nonminimal_ideal,
    same_lattice,
)
from lcmlattice.fields import GF2, QQ
from lcmlattice.monomial import MonomialIdeal, depolarization_map, polarize, substitute_variables
from lcmlattice.resolutions import (
    betti_gpw,
    betti_hochster_oracle,
    has_linear_resolution,
    lattice_linear_characterization,
    scarf_supports,
    taylor_scarf,
)
from lcmlattice.simplicial import SimplicialComplex, delta_one, is_cohen_macaulay, reduced_homology
from lcmlattice.verify import all_complexes, is_simplex_boundary, random_complex, random_squarefree_ideal

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_SIZE = 1000
CORPUS_SEED = 2024


def ideal(text):
    return MonomialIdeal.parse(text, compact=True)


def cli(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_command(list(argv), out, err)
    assert code == 0, err.getvalue()
    return out.getvalue()


def equal_up_to_renaming(I, J):
    """Brute force over all variable bijections (only for a handful of variables)."""
    vi, vj = sorted(I.used_variables), sorted(J.used_variables)
    if len(vi) != len(vj) or len(I) != len(J):
        return False
    target = set(J.generators)
    for perm in permutations(vj):
        sigma = dict(zip(vi, perm))
        if {g.substitute(sigma) for g in I.generators} == target:
            return True
    return False


@lru_cache(maxsize=None)
def corpus():
    rng = random.Random(CORPUS_SEED)
    return tuple(random_squarefree_ideal(rng, 5, 5) for _ in range(CORPUS_SIZE))


@lru_cache(maxsize=None)
def census():
    with config.limits(max_elements=64):
        return tuple(lat for r in range(1, 5) for lat in enumerate_atomic_lattices(r))


def hasse(lat):
    g = nx.DiGraph()
    g.add_nodes_from(range(lat.n))
    g.add_edges_from(lat.poset.covers)
    return g


# the criteria; each returns a short detail string and asserts what it checks


def c1_primes_golden():
    out = json.loads(cli("primes", "--ideal", "bde,cde,ace,acd", "--compact", "--json"))
    got = {frozenset(p) for p in out["associated"]}
    want = {frozenset(s) for s in ("bc", "ad", "ae", "de", "cd", "ce")}
    assert got == want, got
    return "6 primes, set equality"


def c2_minimal_golden():
    out = json.loads(cli("minimal", "--lattice", str(FIXTURES / "lattice_five_atoms.json"),
                         "--id-names", "--json"))
    got = MonomialIdeal.parse(", ".join(out["generators"]))
    want = MonomialIdeal.parse("b*e*f*g, d*f*g, c*e*g, a*c*d, b*d*e*f")
    assert set(got.generators) == set(want.generators), got
    lat = json.loads(cli("lcm", "--ideal", "bd,cd,ac", "--compact", "--json"))
    X = lcm_lattice(ideal("bd,cd,ac")).lattice
    assert len(lat["elements"]) == 7 and len(X.meet_irreducible_indices) == 4
    return "five-generator ideal reproduced; lcm lattice 7 elements, 4 meet-irreducible"


def c3_polarization_golden():
    I = MonomialIdeal.parse("c*d*e^2, b*d*e^2, a*e^2, a^2*b*c*e, a^2*b*c*d")
    pol, var_map = polarize(I, names={"e'": "f", "a'": "g"})
    assert set(pol.generators) == set(ideal("cdef,bdef,aef,abceg,abcdg").generators), pol
    back = substitute_variables(pol, depolarization_map(var_map))
    assert set(back.generators) == set(I.generators)
    return "polarization and inverse substitution"


def c4_nonminimal_golden():
    N = nonminimal_ideal(boolean_lattice(3))
    assert equal_up_to_renaming(N, ideal("bcf,ace,abd")), N
    return f"N = {N}"


def c5_roundtrip():
    lats = census()
    for lat in lats:
        if len(lat.atoms) < 2:
            continue
        back = lcm_lattice(minimal_ideal(lat)).lattice
        assert same_lattice(back, lat), lat.ids
        assert nx.is_isomorphic(hasse(back), hasse(lat))
    return f"{len(lats)} lattices (1 on one atom, where the construction gives the unit ideal)"


def c6_oracles():
    n = 0
    for I in corpus():
        for field in (QQ, GF2):
            assert betti_gpw(I, field) == betti_hochster_oracle(I, field), (str(I), field)
        n += 1
    return f"{n} ideals over Q and GF(2)"


INEQUALITIES = ("pd_bound_width_height", "terai_duality", "reg_dual_bound", "sr_homology_vanishing",
                "codim_le_minimal", "unmixed_inherited", "reg_minimal_le_reg")


def c7_inequalities():
    counts = {c: 0 for c in INEQUALITIES}
    tight = 0
    for I in corpus():
        rep = bound_checks(I)
        assert not rep.violations, rep.format()
        for c in INEQUALITIES:
            if rep[c].status == PASS:
                counts[c] += 1
        tight += len(rep.tight)
    rep = bound_checks(ideal("x,y,z"))
    c = rep["pd_bound_width_height"]
    assert c.tight and (c.lhs, c.rhs) == (3, 3)
    assert all(v > 0 for v in counts.values()), counts
    return f"{tight} tight clauses; (x,y,z): pd 3 = bound 3"


def c8_linear_biconditional():
    n = 0
    for lat in census():
        if len(lat.atoms) < 2:
            continue
        verdict = lattice_linear_characterization(lat).verdict
        assert verdict == has_linear_resolution(minimal_ideal(lat)), lat.ids
        n += 1
    return f"{n} lattices, zero discrepancies"


def c9_linear_structure():
    plain = shifted = 0
    for I in corpus():
        if len(I) < 2 or not has_linear_resolution(I):
            continue
        I = MonomialIdeal(I.generators, I.used_variables)
        g = I.gcd()
        q = I if g.is_one() else I.divide_by(g)
        q = MonomialIdeal(q.generators, q.used_variables)
        res = is_minimal_ideal(q)
        assert res.is_minimal, (str(I), res.reason)
        assert res.bijection and len(res.bijection) == len(q.used_variables)
        renamed = {m.substitute(res.bijection) for m in res.minimal.generators}
        assert renamed == set(q.generators), str(I)
        if g.is_one():
            plain += 1
        else:
            shifted += 1
    assert plain and shifted
    return f"{plain} with gcd 1, {shifted} after dividing by the gcd"


def c10_scarf():
    checked = acyclic = 0
    for n in range(2, 6):
        for K in all_complexes(n):
            if is_simplex_boundary(K):
                continue
            L = face_lattice(K)
            M = minimal_ideal(L)
            ts = taylor_scarf(M)
            order = [int(L.ids[a].strip("{}")) for a in L.atoms]
            faces = {frozenset(order[i] for i in range(len(order)) if m >> i & 1) for m in ts.scarf_masks}
            assert faces == set(K.faces()), K.facets
            if reduced_homology(K, QQ).is_acyclic():
                assert scarf_supports(M).supports, K.facets
                acyclic += 1
            checked += 1
    return f"{checked} complexes, {acyclic} acyclic"


def random_shelling(rng, n, d):
    """Pure d-dimensional complex built facet by facet along a shelling."""
    facets = [frozenset(rng.sample(range(1, n + 1), d + 1))]
    for _ in range(rng.randint(0, 6)):
        cand = []
        for F in combinations(range(1, n + 1), d + 1):
            F = frozenset(F)
            if F in facets:
                continue
            # the new facet must meet the old ones in a nonempty union of its ridges
            inter = {F & G for G in facets}
            ridges = {r for r in inter if len(r) == d}
            if ridges and all(any(r >= s for r in ridges) for s in inter):
                cand.append(F)
        if not cand:
            break
        facets.append(rng.choice(cand))
    used = sorted(set().union(*facets))
    return SimplicialComplex(used, [sorted(f) for f in facets])


def c11_delta_one():
    rng = random.Random(7)
    sample = []
    for n in range(2, 6):
        sample.extend(all_complexes(n))
    for _ in range(300):
        sample.append(random_complex(rng, 6))
    for _ in range(150):
        sample.append(random_shelling(rng, 6, rng.randint(1, 3)))
    cm = six = 0
    for K in sample:
        if K.is_simplex() or not is_cohen_macaulay(K, QQ):
            continue
        D1 = delta_one(K)
        assert not D1.is_void and is_cohen_macaulay(D1, QQ), K.facets
        assert D1.dim == K.dim - 1, K.facets
        cm += 1
        six += len(K.vertices) == 6
    assert six > 0
    return f"{cm} Cohen-Macaulay complexes ({six} on six vertices)"


def _faces_by_brute_force(K):
    out = set()
    for F in K.facets:
        F = sorted(F)
        for k in range(len(F) + 1):
            out.update(frozenset(c) for c in combinations(F, k))
    return out


def c12_homology():
    tri = SimplicialComplex([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    assert reduced_homology(tri, QQ).nonzero() == {1: 1}
    sphere = SimplicialComplex([1, 2, 3, 4], [list(c) for c in combinations([1, 2, 3, 4], 3)])
    assert reduced_homology(sphere, QQ).nonzero() == {2: 1}
    disk = SimplicialComplex([1, 2, 3], [[1, 2, 3]])
    assert reduced_homology(disk, QQ).nonzero() == {}
    point = SimplicialComplex([1], [[1]])
    assert reduced_homology(point, QQ).nonzero() == {}
    empty = SimplicialComplex([1, 2], [], empty_face=True)
    assert reduced_homology(empty, QQ).nonzero() == {-1: 1}
    void = SimplicialComplex.void([1, 2])
    assert reduced_homology(void, QQ).nonzero() == {}
    rng = random.Random(11)
    for _ in range(1000):
        K = random_complex(rng, rng.randint(1, 6))
        chi = sum((-1) ** (len(F) - 1) for F in _faces_by_brute_force(K))
        h = reduced_homology(K, QQ)
        assert sum((-1) ** d * v for d, v in h.dims.items()) == chi, K.facets
    return "unit profiles; Euler check on 1000 random complexes"


CRITERIA = [
    (1, "primes golden example", c1_primes_golden, 1.0),
    (2, "minimal ideal golden example", c2_minimal_golden, 1.0),
    (3, "polarization golden example", c3_polarization_golden, 1.0),
    (4, "nonminimal ideal golden example", c4_nonminimal_golden, 1.0),
    (5, "census roundtrip", c5_roundtrip, 60.0),
    (6, "Betti oracle equivalence", c6_oracles, 120.0),
    (7, "inequality suite", c7_inequalities, None),
    (8, "linear-resolution biconditional", c8_linear_biconditional, None),
    (9, "linear structure", c9_linear_structure, None),
    (10, "Scarf complexes of face lattices", c10_scarf, 60.0),
    (11, "codimension-one subcomplex", c11_delta_one, None),
    (12, "homology engine", c12_homology, None),
]


def run_criterion(fn, budget):
    t = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - t
    if ok and budget is not None and elapsed >= budget:
        ok, detail = False, f"{detail}; took {elapsed:.2f}s, budget {budget:.0f}s"
    return ok, elapsed, detail


def line(num, title, ok, elapsed, detail, budget):
    limit = f" < {budget:g}s" if budget is not None else ""
    return f"criterion {num:2} {'PASS' if ok else 'FAIL'}  {title} [{elapsed:.2f}s{limit}]  {detail}"


@pytest.mark.parametrize("num,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    corpus()   # the shared random corpus is built once, outside the timed region
    ok, elapsed, detail = run_criterion(fn, budget)
    with capsys.disabled():
        print("\n" + line(num, title, ok, elapsed, detail, budget))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, fn, budget in CRITERIA:
        ok, elapsed, detail = run_criterion(fn, budget)
        failed += not ok
        print(line(num, title, ok, elapsed, detail, budget), flush=True)
    sys.exit(1 if failed else 0)
