"""Run every structural check over generated corpora and a few golden cases.

Three corpora: atomic lattices (exhaustive for few atoms, sampled beyond),
random monomial ideals, and simplicial complexes on few vertices. Each
check is aggregated into one :class:`CheckResult`; a failure keeps the
first offending instance serialised so it can be replayed.
"""

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import io
from ._bits import bits, popcount
from .census import enumerate_atomic_lattices, sample_atomic_lattices
from .checks import FAIL, PASS, SKIP, bound_checks, embedding_checks
from .construct import (
    depolarize_by_chains,
    face_lattice,
    lcm_lattice,
    labelled_minimal_lattice,
    minimal_ideal,
    minimal_labels,
    nonminimal_ideal,
    same_lattice,
    specialize_n,
)
from .distributive import covering_primes, fiber_extrema, phi_xc_embedding
from .errors import LabelMismatch, LatticeError, ResourceLimit
from .fields import GF2, QQ
from .monomial import Monomial, MonomialIdeal, depolarization_map, polarize, substitute_variables
from .poset import chain_stats, meet_irreducibles
from .resolutions import (
    betti_gpw,
    betti_hochster_oracle,
    has_linear_resolution,
    lattice_linear_characterization,
    scarf_supports,
    taylor_scarf,
)
from .simplicial import (
    SimplicialComplex,
    alexander_dual,
    delta_one,
    is_cohen_macaulay,
    reduced_homology,
    sr_complex,
    sr_ideal,
    vertex_variables,
)


@dataclass
class CorpusSpec:
    max_atoms: int = 4            # exhaustive lattice census up to this many atoms
    sampled_atoms: tuple = (5,)   # atom counts for sampled lattices
    samples_per_size: int = 20
    random_ideals: int = 200
    max_vars: int = 5
    max_gens: int = 5
    nonsquarefree: int = 50       # random ideals with exponents up to 2
    complex_vertices: int = 4     # complexes on up to this many vertices (all of them)
    seed: int = 0


@dataclass
class CheckResult:
    check_id: str
    tag: str
    status: str = PASS
    instances: int = 0
    skipped: int = 0
    detail: str = ""
    reproducer: object = None
    seconds: float = 0.0

    def to_json(self):
        return {k: getattr(self, k) for k in
                ("check_id", "tag", "status", "instances", "skipped", "detail", "reproducer", "seconds")}


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)  # check_id -> CheckResult, insertion ordered

    def result(self, check_id, tag):
        if check_id not in self.checks:
            self.checks[check_id] = CheckResult(check_id, tag)
        return self.checks[check_id]

    def record(self, check_id, tag, ok, instance=None, detail=""):
        r = self.result(check_id, tag)
        if ok is None:
            r.skipped += 1
            return
        r.instances += 1
        if not ok and r.status != FAIL:
            r.status = FAIL
            r.reproducer = instance
            r.detail = detail

    @property
    def failures(self):
        return [c for c in self.checks.values() if c.status == FAIL]

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks.values()]}

    def format(self):
        lines = []
        for c in self.checks.values():
            status = c.status if c.instances else SKIP
            line = f"{status:7} {c.check_id:34} {c.instances:6} instances"
            if c.skipped:
                line += f", {c.skipped} skipped"
            if c.status == FAIL:
                line += f"  {c.detail}  reproducer: {json.dumps(c.reproducer)}"
            lines.append(line)
        lines.append("all checks passed" if self.ok else f"{len(self.failures)} checks FAILED")
        return "\n".join(lines)


# corpora


def random_squarefree_ideal(rng, max_vars=5, max_gens=5):
    """Random generators on up to ``max_vars`` variables.

    Distinct supports of size ``s`` or ``s + 1`` for a per-ideal ``s``;
    independent uniform supports mostly collapse to one or two minimal
    generators.
    """
    n = rng.randint(1, max_vars)
    vs = [chr(ord("a") + i) for i in range(n)]
    s = rng.randint(1, max(1, n - 1))
    sizes = (s, s + 1) if rng.random() < 0.5 else (s,)
    pool = [c for k in sizes if k <= n for c in combinations(vs, k)]
    k = min(len(pool), rng.randint(1, max_gens))
    gens = [Monomial.from_support(c) for c in rng.sample(pool, k)]
    return MonomialIdeal(gens, vs)


def random_ideal(rng, max_vars=4, max_gens=4, max_exp=2):
    while True:
        n = rng.randint(1, max_vars)
        vs = [chr(ord("a") + i) for i in range(n)]
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            e = {v: rng.randint(1, max_exp) for v in vs if rng.random() < 0.5}
            if e:
                gens.append(Monomial(e))
        if gens:
            return MonomialIdeal(gens, vs)


def all_complexes(n):
    """Every complex (nonvoid, all vertices used) on ``1..n``, up to relabeling."""
    from itertools import permutations

    verts = list(range(1, n + 1))
    full = (1 << n) - 1
    nonempty = [m for m in range(1, full + 1)]
    seen = set()
    out = []
    # complexes correspond to antichains of faces; grow antichains recursively
    def rec(start, chosen):
        if chosen:
            cover = 0
            for m in chosen:
                cover |= m
            if cover == full:
                key = min(tuple(sorted(_perm(m, p) for m in chosen)) for p in permutations(range(n)))
                if key not in seen:
                    seen.add(key)
                    out.append(SimplicialComplex.from_masks(verts, list(key)))
        for j in range(start, len(nonempty)):
            m = nonempty[j]
            if any(m & c == m or m & c == c for c in chosen):
                continue
            rec(j + 1, chosen + [m])

    rec(0, [])
    return out


def _perm(mask, p):
    out = 0
    for i in bits(mask):
        out |= 1 << p[i]
    return out


def is_simplex_boundary(K):
    n = len(K.vertices)
    full = (1 << n) - 1
    facets = K.facet_masks
    return n >= 2 and len(facets) == n and all(f == full & ~(1 << i) for i, f in zip(range(n), sorted(facets, reverse=True)))


def random_complex(rng, n, p=0.4):
    verts = list(range(1, n + 1))
    sets = [m for m in range(1, 1 << n) if rng.random() < p / (1 + popcount(m) // 2)]
    if not sets:
        sets = [1 << rng.randrange(n)]
    return SimplicialComplex.from_masks(verts, sets)


# lattice checks


def lattice_checks(rep, lat, field=QQ):
    r = len(lat.atoms)
    repro = io.lattice_to_json(lat)
    if r < 2:
        for cid in ("minimal_roundtrip", "separation_labels", "nonminimal_roundtrip"):
            rep.record(cid, "construction", None)
        return
    M = minimal_ideal(lat)
    rep.record("minimal_roundtrip", "construction", same_lattice(lcm_lattice(M).lattice, lat), repro)
    try:
        labelled_minimal_lattice(lat)
        ok = True
    except LabelMismatch:
        ok = False
    rep.record("separation_labels", "construction", ok, repro)
    rep.record("nonminimal_roundtrip", "construction",
               same_lattice(lcm_lattice(nonminimal_ideal(lat)).lattice, lat), repro)
    if r <= 5:
        rep.record("specialization_identity", "specialization", specialize_n(lat).identity_check, repro)
    else:
        rep.record("specialization_identity", "specialization", None)

    emb = phi_xc_embedding(lat)
    rep.record("distributive_embedding", "distributive", emb.check, repro,
               ",".join(k for k, v in emb.checks.items() if not v))
    try:
        fr = fiber_extrema(lat)
        rep.record("fiber_extrema", "distributive", fr.ok, repro,
                   ",".join(k for k, v in fr.checks.items() if not v))
    except ResourceLimit:
        rep.record("fiber_extrema", "distributive", None)

    # depolarization along a minimum chain partition
    P = meet_irreducibles(lat)
    stats = chain_stats(P)
    D = depolarize_by_chains(lat, [list(c) for c in stats.chains])
    ok = len(D) == r and same_lattice(lcm_lattice(D).lattice, lat)
    ok = ok and len(D.used_variables) == stats.width
    rep.record("chain_depolarization", "depolarization", ok, repro)

    # identifying two mi variables keeps the lattice iff they are comparable
    labels, names = minimal_labels(lat)
    mis = lat.meet_irreducible_indices
    name = dict(zip(mis, names))
    ok = True
    for k1, k2 in combinations(mis, 2):
        Mbar = substitute_variables(M, {name[k2]: name[k1]})
        keeps = len(Mbar) == r and same_lattice(lcm_lattice(Mbar).lattice, lat)
        if keeps != lat.poset.comparable(k1, k2):
            ok = False
            break
    rep.record("identification_iff_comparable", "depolarization", ok, repro)

    if P.is_antichain(range(P.n)):
        rep.record("coatomic_variable_count", "depolarization", stats.width == len(mis), repro)

    char = lattice_linear_characterization(lat, field)
    rep.record("linear_iff_lattice_criterion", "linearity",
               char.verdict == has_linear_resolution(M, field), repro)


# ideal checks


def ideal_checks(rep, ideal, fields=(QQ, GF2)):
    repro = str(ideal)
    if ideal.is_squarefree():
        for fld in fields:
            a = betti_gpw(ideal, fld)
            b = betti_hochster_oracle(ideal, fld)
            rep.record(f"betti_oracle_{fld}", "betti", a == b, repro)
        K = sr_complex(ideal)
        rep.record("sr_roundtrip", "stanley-reisner", sr_ideal(K) == ideal, repro)
        pr = covering_primes(ideal)
        rep.record("prime_filters", "primes", all(pr.checks.values()), repro,
                   ",".join(k for k, v in pr.checks.items() if not v))
    else:
        pol, vm = polarize(ideal)
        same = same_lattice(lcm_lattice(pol).lattice, lcm_lattice(ideal).lattice)
        rep.record("polarization_lattice", "polarization", same, repro)
        back = betti_gpw(pol).map_degrees(depolarization_map(vm))
        rep.record("polarization_betti", "polarization", back == betti_gpw(ideal), repro)
        rep.record("polarization_inverse", "polarization",
                   substitute_variables(pol, depolarization_map(vm)) == ideal, repro)

    for clause in bound_checks(ideal).clauses:
        ok = None if clause.status == SKIP else clause.status == PASS
        rep.record(clause.id, "bounds", ok, repro, f"lhs={clause.lhs} rhs={clause.rhs} {clause.detail}")
    for clause in embedding_checks(ideal).clauses:
        ok = None if clause.status == SKIP else clause.status == PASS
        rep.record(clause.id, "embedding", ok, repro, clause.detail)


# complex checks


def complex_checks(rep, K, field=QQ):
    repro = io.complex_to_json(K)
    h = reduced_homology(K, field)
    rep.record("euler_characteristic", "homology", h.euler() == K.reduced_euler_characteristic(), repro)
    h2 = reduced_homology(K, GF2)
    rep.record("homology_fields_agree", "homology", h.dims == h2.dims, repro)
    n = len(K.vertices)
    full = (1 << n) - 1
    if not K.contains_mask(full):
        rep.record("alexander_involution", "duality", alexander_dual(alexander_dual(K)) == K, repro)

    # every complex is the Scarf complex of the minimal ideal of its face lattice
    if n >= 2 and not is_simplex_boundary(K):
        L = face_lattice(K)
        M = minimal_ideal(L)
        ts = taylor_scarf(M)
        # generators follow the atoms, which are the vertices in ground-set order
        order = [int(L.ids[a].strip("{}")) for a in L.atoms]
        faces = {frozenset(order[i] for i in bits(m)) for m in ts.scarf_masks}
        rep.record("scarf_of_face_lattice", "scarf", faces == set(K.faces()), repro)
        if h.is_acyclic():
            rep.record("acyclic_scarf_supports", "scarf", bool(scarf_supports(M, field)), repro)

    cm = is_cohen_macaulay(K, field)
    pure = K.is_pure()
    if cm:
        rep.record("cm_implies_pure", "cohen-macaulay", pure, repro)
    if cm and not K.is_simplex():
        D1 = delta_one(K)
        ok = (not D1.is_void) and bool(is_cohen_macaulay(D1, field)) and D1.dim == K.dim - 1
        rep.record("delta_one_cm_codim1", "cohen-macaulay", ok, repro)
        # the dual ideal of K has a linear resolution; its first syzygies give delta_one
        if not K.contains_mask(full):
            I = sr_ideal(alexander_dual(K))
            from .resolutions import first_syzygy_ideal

            I1 = first_syzygy_ideal(I, field)
            if I1 is not None:
                D1b = alexander_dual(sr_complex(I1).on_ground_set(vertex_variables(K)))
                back = dict(zip(vertex_variables(K), K.vertices))
                got = {frozenset(back[v] for v in f) for f in D1b.facets}
                rep.record("delta_one_from_syzygies", "cohen-macaulay", got == set(D1.facets), repro)


# driver


GOLDEN = {}


def golden(fn):
    GOLDEN[fn.__name__] = fn
    return fn


@golden
def G1_primary_decomposition():
    I = MonomialIdeal.parse("bde,cde,ace,acd", compact=True)
    got = {frozenset(p) for p in covering_primes(I).associated}
    want = {frozenset(s) for s in ("bc", "ad", "ae", "de", "cd", "ce")}
    return got == want


@golden
def G2_polarization():
    I = MonomialIdeal.parse("c*d*e^2, b*d*e^2, a*e^2, a^2*b*c*e, a^2*b*c*d")
    pol, vm = polarize(I, names={"e'": "f", "a'": "g"})
    want = MonomialIdeal.parse("cdef,bdef,aef,abceg,abcdg", compact=True)
    return pol == want and substitute_variables(pol, depolarization_map(vm)) == I


@golden
def G3_lcm_lattice_of_three_generators():
    X = lcm_lattice(MonomialIdeal.parse("bd,cd,ac", compact=True))
    return X.lattice.n == 7 and len(X.lattice.meet_irreducible_indices) == 4


@golden
def G4_nonminimal_boolean():
    from .construct import boolean_lattice, find_isomorphism

    N = nonminimal_ideal(boolean_lattice(3))
    return find_isomorphism(N, MonomialIdeal.parse("bcf,ace,abd", compact=True)) is not None


@golden
def G5_minimal_ideal_recovers_generators():
    from .construct import find_isomorphism

    J = MonomialIdeal.parse("befg,dfg,ceg,acd,bdef", compact=True)
    L = lcm_lattice(J).lattice
    bare = L.with_labels(None)
    return find_isomorphism(minimal_ideal(bare), J) is not None


@golden
def G6_n_poset_not_realizable():
    from .distributive import series_parallel_check
    from .poset import build_from_covers

    N = build_from_covers(list("abcd"), [("a", "c"), ("b", "c"), ("b", "d")])
    res = series_parallel_check(N)
    return (not res.n_free) and res.realizable is False


@golden
def G7_mi_contains_n():
    from .distributive import find_n

    L = lcm_lattice(MonomialIdeal.parse("b^2*c*d, a*b*d, a*b*c, a^2*c*d")).lattice
    return find_n(meet_irreducibles(L)) is not None


def verify_suite(spec=None, field=QQ, progress=None):
    spec = spec or CorpusSpec()
    rep = VerificationReport()
    rng = random.Random(spec.seed)

    for name, fn in GOLDEN.items():
        t = time.perf_counter()
        try:
            ok = bool(fn())
        except LatticeError:
            ok = False
        rep.record(name, "golden", ok, name)
        rep.result(name, "golden").seconds = time.perf_counter() - t

    lattices = []
    for r in range(1, spec.max_atoms + 1):
        lattices.extend(enumerate_atomic_lattices(r))
    for r in spec.sampled_atoms:
        lattices.extend(sample_atomic_lattices(r, spec.samples_per_size, seed=spec.seed + r))
    for lat in lattices:
        lattice_checks(rep, lat, field)
    if progress:
        progress(f"{len(lattices)} lattices")

    for _ in range(spec.random_ideals):
        ideal_checks(rep, random_squarefree_ideal(rng, spec.max_vars, spec.max_gens))
    for _ in range(spec.nonsquarefree):
        ideal_checks(rep, random_ideal(rng))
    if progress:
        progress(f"{spec.random_ideals + spec.nonsquarefree} ideals")

    for n in range(2, spec.complex_vertices + 1):
        for K in all_complexes(n):
            complex_checks(rep, K, field)
    if progress:
        progress("complexes")
    return rep
