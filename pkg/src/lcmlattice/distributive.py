"""Order filters, the distributive completion and covering primes.

``J(P)`` is the lattice of order filters of ``P`` under *reverse*
inclusion: the whole poset is the bottom, the empty filter the top, join
is intersection and meet is union. An atomic lattice sits inside
``J(mi L)`` as a join-subsemilattice through ``a -> mi ∩ up(a)``.
"""

import random
from dataclasses import dataclass, field

from . import config
from ._bits import bits, mask_of, minimal_transversals, popcount
from .errors import NotAtomic, ResourceLimit
from .poset import FinitePoset, lattice_structure


# order filters


def _up_closure(p, mask):
    out = 0
    for i in bits(mask):
        out |= p.up(i)
    return out


def order_filters(p, cap=None):
    """All order filters of ``p`` as masks over its indices.

    Built by adding elements in reverse topological order, so that the
    running count is known before anything is materialised past ``cap``.
    """
    if cap is None:
        cap = config.current().max_filters
    order = list(reversed(p.topological_order))
    out = [0]
    # an element may join a filter only once everything above it is in
    for i in order:
        above = p.up(i) & ~(1 << i)
        extra = [f | (1 << i) for f in out if f & above == above]
        if len(out) + len(extra) > cap:
            raise ResourceLimit(f"more than {cap} order filters")
        out.extend(extra)
    return sorted(out, key=lambda m: (-popcount(m), m))


def mask_label(p, mask):
    return "{" + ",".join(str(p.ids[i]) for i in bits(mask)) + "}"


@dataclass(frozen=True)
class FilterLattice:
    base: FinitePoset
    filters: tuple      # masks over base indices; index = lattice element
    lattice: object
    distributive: bool

    def element_of(self, mask):
        return self.filters.index(mask)

    def minimal_generators(self, i):
        """Minimal elements of filter ``i`` (the antichain that generates it)."""
        f = self.filters[i]
        p = self.base
        return tuple(j for j in bits(f) if not (p.down(j) & f & ~(1 << j)))


def _check_distributive(lat, rng, samples=20000):
    n = lat.n
    if n ** 3 <= samples:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
    for a, b, c in triples:
        if lat.join(a, lat.meet(b, c)) != lat.meet(lat.join(a, b), lat.join(a, c)):
            return False
    return True


def filter_lattice_j(p, seed=0):
    """``J(p)`` with a distributivity check (exhaustive when small, else sampled)."""
    filters = order_filters(p)
    ids = [mask_label(p, f) for f in filters]
    # reverse inclusion: F <= G iff G is a subset of F
    ups = [mask_of(j for j, g in enumerate(filters) if g & f == g) for f in filters]
    lat = lattice_structure(FinitePoset(ids, ups, check=False))
    return FilterLattice(p, tuple(filters), lat, _check_distributive(lat, random.Random(seed)))


# the embedding of an atomic lattice


@dataclass(frozen=True)
class XcEmbedding:
    mi: tuple        # meet-irreducible indices of the lattice, in order
    mi_poset: FinitePoset
    xc: dict         # element index (bottom excluded) -> mask over mi positions
    image: frozenset
    checks: dict = field(default_factory=dict)

    @property
    def check(self):
        return all(self.checks.values())

    def phi(self, mask):
        """Order filter of the mi poset generated by ``mask``."""
        return _up_closure(self.mi_poset, mask)


def phi_xc_embedding(lat, require_atomic=True):
    """``x^c`` on every element above the bottom, and its filter image.

    The maps make sense for any finite lattice; the embedding claims are
    only guaranteed for atomic ones, hence ``require_atomic``.
    """
    if require_atomic and not lat.is_atomic:
        raise NotAtomic("the lattice is not atomic")
    mis = lat.meet_irreducible_indices
    P = lat.poset.subposet(mis)
    pos = {k: i for i, k in enumerate(mis)}
    xc = {}
    for a in range(lat.n):
        if a == lat.bottom:
            continue
        xc[a] = mask_of(pos[k] for k in mis if lat.leq(a, k))
    image = frozenset(_up_closure(P, m) for m in xc.values())
    checks = {
        "xc_are_filters": all(_up_closure(P, m) == m for m in xc.values()),
        "injective": len(image) == len(xc),
        "joins_to_intersections": all(
            xc[lat.join(a, b)] == xc[a] & xc[b] for a in xc for b in xc
        ),
        "image_join_closed": all(f & g in image for f in image for g in image),
    }
    return XcEmbedding(tuple(mis), P, xc, image, checks)


# covering and associated primes


@dataclass(frozen=True)
class PrimeData:
    ideal: object
    associated: tuple          # variable tuples, sorted
    all_covering: tuple = None  # every covering variable set, when enumerated
    checks: dict = field(default_factory=dict)

    def format(self, compact=False):
        lhs = self.ideal.compact() if compact else str(self.ideal)
        parts = ["(" + ",".join(s) + ")" for s in self.associated]
        return lhs + " = " + " ∩ ".join(parts)


def _variable_masks(ideal):
    vs = ideal.variables
    index = {v: i for i, v in enumerate(vs)}
    return vs, [mask_of(index[v] for v in g.support) for g in ideal.generators]


def covering_primes(ideal, enumerate_all=None, seed=0, verify=True):
    """Associated primes of a squarefree ideal as minimal covering variable sets.

    A set of variables is covering when every generator is divisible by
    one of them, i.e. the union of their filters in the lcm-lattice is
    everything above the bottom. ``enumerate_all`` (default: up to 12
    variables) also lists every covering set.
    """
    from .construct import lcm_lattice

    ideal.require_squarefree()
    vs, edges = _variable_masks(ideal)
    n = len(vs)
    mins = minimal_transversals(edges)
    key = lambda m: [i for i in bits(m)]
    mins.sort(key=key)
    associated = tuple(tuple(vs[i] for i in bits(m)) for m in mins)
    if enumerate_all is None:
        enumerate_all = n <= 12
    all_cov = None
    if enumerate_all:
        cov = [S for S in range(1 << n) if all(S & e for e in edges)]
        cov.sort(key=lambda m: (popcount(m), key(m)))
        all_cov = tuple(tuple(vs[i] for i in bits(m)) for m in cov)
    checks = {}
    if verify:
        X = lcm_lattice(ideal)
        lat = X.lattice
        above_bottom = ((1 << lat.n) - 1) & ~(1 << lat.bottom)
        filt = {v: mask_of(b for b in range(lat.n) if X.label(b).exponent(v)) for v in vs}

        def union(vars_):
            u = 0
            for v in vars_:
                u |= filt[v]
            return u

        checks["filter_union_covers"] = all(union(s) == above_bottom for s in associated)
        checks["irredundant"] = all(
            union(s[:j] + s[j + 1:]) != above_bottom for s in associated for j in range(len(s))
        )
        if all_cov is not None:
            checks["covering_iff_filter_union"] = all(
                (union(tuple(vs[i] for i in bits(S))) == above_bottom) == all(S & e for e in edges)
                for S in range(1 << n)
            )
        # a squarefree monomial lies in I iff it lies in every associated prime
        if n <= 12:
            subsets = range(1 << n)
        else:
            rng = random.Random(seed)
            subsets = [rng.getrandbits(n) for _ in range(4096)]
        checks["decomposition"] = all(
            any(e & S == e for e in edges) == all(S & m for m in mins) for S in subsets
        )
    return PrimeData(ideal, associated, all_cov, checks)


def primes_containing_minimal(lat):
    """Masks over mi positions whose primes contain ``M(L)`` (every atom hit)."""
    mis = lat.meet_irreducible_indices
    pos = {k: i for i, k in enumerate(mis)}
    atom_supports = [mask_of(pos[k] for k in mis if not lat.leq(a, k)) for a in lat.atoms]
    return atom_supports


@dataclass(frozen=True)
class FiberReport:
    fibers: dict       # filter mask -> list of subset masks
    maxima: dict
    minima: dict
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def fiber_extrema(lat):
    """Group subsets of ``mi L`` by the filter they generate and test the extrema claims."""
    emb = phi_xc_embedding(lat)
    P = emb.mi_poset
    m = P.n
    if m > config.current().max_atoms_specialize + 4:
        raise ResourceLimit(f"2^{m} subsets of meet-irreducibles is over the cap")
    fibers = {}
    for S in range(1 << m):
        fibers.setdefault(emb.phi(S), []).append(S)
    maxima, minima = {}, {}
    unique = True
    for F, members in fibers.items():
        top = [S for S in members if all(T & S == T for T in members)]
        low = [S for S in members if all(T & S == S for T in members)]
        if len(top) != 1 or len(low) != 1:
            unique = False
            continue
        maxima[F], minima[F] = top[0], low[0]
    edges = primes_containing_minimal(lat)
    assoc = minimal_transversals(edges)
    covering = [S for S in range(1 << m) if all(S & e for e in edges)]
    cov_filters = {emb.phi(S) for S in covering}
    all_filters = set(fibers)
    checks = {
        "unique_extrema": unique,
        "lattice_elements_are_maxima": all(maxima.get(x) == x for x in emb.xc.values()),
        "associated_primes_are_minima": all(minima.get(emb.phi(S)) == S for S in assoc),
        # J is ordered by reverse inclusion: an order ideal is closed under supersets
        "covering_image_is_order_ideal": all(
            G in cov_filters for F in cov_filters for G in all_filters if G & F == F
        ),
    }
    return FiberReport(fibers, maxima, minima, checks)


# N-free posets and realisability as mi L


@dataclass(frozen=True)
class SeriesParallelResult:
    n_free: bool
    witness: tuple = None      # (a, b, c, d) ids with a<c, b<c, b<d only
    realizable: object = None  # True / False / None (search budget exhausted or not run)
    realization: object = None  # a lattice whose mi poset matches, when found


def find_n(p):
    """First induced N: a<c, b<c, b<d and no other relations among the four."""
    n = p.n
    for c in range(n):
        below = [x for x in bits(p.down(c)) if x != c]
        for a in below:
            for b in below:
                if a == b or p.comparable(a, b):
                    continue
                for d in bits(p.up(b)):
                    if d in (b, c) or p.comparable(d, c) or p.comparable(d, a):
                        continue
                    return (a, b, c, d)
    return None


def realize_as_mi(p, max_nodes=None):
    """Search for an atomic lattice whose meet-irreducibles form ``p``.

    Such a lattice corresponds to an antichain ``A`` of order filters (the
    images of its atoms) whose intersection-closure, together with the
    whole poset as bottom, has exactly the principal filters as its
    meet-irreducibles. Returns ``(True, lattice)``, ``(False, None)`` once
    the search space is exhausted, or ``(None, None)`` past the budget.
    """
    if max_nodes is None:
        max_nodes = config.current().max_iso_nodes
    n = p.n
    if n == 0:
        return False, None
    full = (1 << n) - 1
    principal = {p.up(i) for i in range(n)}
    if full in principal or len(principal) != n:
        return False, None
    filters = [f for f in order_filters(p) if f != full]
    nodes = 0

    def closure(atoms):
        fam = set(atoms)
        frontier = list(atoms)
        while frontier:
            new = []
            for f in frontier:
                for g in list(fam):
                    h = f & g
                    if h not in fam:
                        fam.add(h)
                        new.append(h)
            frontier = new
        return fam

    def evaluate(atoms):
        fam = closure(atoms) | {full}
        if 0 not in fam or not principal <= fam:
            return None
        elems = sorted(fam, key=lambda m: (-popcount(m), m))
        ups = [mask_of(j for j, g in enumerate(elems) if g & f == g) for f in elems]
        lat = lattice_structure(FinitePoset([mask_label(p, f) for f in elems], ups, check=False))
        if not lat.is_atomic:
            return None
        mi = {elems[i] for i in lat.meet_irreducible_indices}
        return lat if mi == principal else None

    # atoms are pairwise incomparable filters; extend antichains in index order
    def search(start, chosen):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ResourceLimit("realisability search budget exhausted")
        if chosen:
            lat = evaluate(chosen)
            if lat is not None:
                return lat
        for j in range(start, len(filters)):
            f = filters[j]
            if f == 0 or any(f & g == f or f & g == g for g in chosen):
                continue
            found = search(j + 1, chosen + [f])
            if found is not None:
                return found
        return None

    try:
        lat = search(0, [])
    except ResourceLimit:
        return None, None
    return (True, lat) if lat is not None else (False, None)


def series_parallel_check(p, realize=True, max_nodes=None):
    w = find_n(p)
    witness = None if w is None else tuple(p.ids[i] for i in w)
    realizable, lat = (None, None)
    if realize:
        realizable, lat = realize_as_mi(p, max_nodes)
    return SeriesParallelResult(w is None, witness, realizable, lat)
