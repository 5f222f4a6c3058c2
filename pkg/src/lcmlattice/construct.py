"""lcm-lattices and the ideals built from a finite atomic lattice.

Given an atomic lattice with atoms ``a_1..a_r`` and meet-irreducible set
``mi``, the minimal ideal has one variable per meet-irreducible and one
generator per atom, ``x(a) = prod(x_k : k in mi, not a <= k)``. Replacing
``mi`` by the whole proper part gives the (nonminimal) ideal ``N(L)``.

Lattice isomorphisms are checked through supports: an atomic lattice is
determined by the family ``{atoms below b}``, so two atomic lattices with
matched atoms are isomorphic iff those families coincide.
"""

from dataclasses import dataclass, field

from . import config
from ._bits import bits, mask_of, popcount
from .errors import (
    EmptyA,
    NotAChain,
    NotAPartition,
    NotAtomic,
    NotSquarefree,
    ResourceLimit,
    TooManyAtoms,
    TrivialLattice,
    UnknownId,
)
from .monomial import (
    ONE,
    Monomial,
    MonomialIdeal,
    is_variable_name,
    polarize,
    substitute_variables,
)
from .poset import FinitePoset, lattice_structure


# lcm-lattices


@dataclass(frozen=True)
class LcmLattice:
    """The lcm-lattice of ``ideal``: a lattice labelled by monomials.

    Element 0 is the bottom (label 1) and elements ``1..r`` are the atoms
    in generator order.
    """

    lattice: object
    ideal: MonomialIdeal
    atom_to_generator: dict

    def label(self, i):
        return self.lattice.labels[i]

    @property
    def labels(self):
        return self.lattice.labels

    def element(self, m):
        """Index of the element labelled ``m``."""
        for i, lab in self.lattice.labels.items():
            if lab == m:
                return i
        raise UnknownId(f"{m} is not an element of the lcm-lattice")


def _lcm_ids(labels):
    # compact ids when every variable is a single letter, else canonical
    short = all(len(v) == 1 for m in labels for v in m.support)
    return [m.compact() if short else str(m) for m in labels]


def lcm_lattice(ideal):
    """Close the generators under lcm and adjoin 1 as the bottom."""
    cap = config.current().max_elements
    gens = list(ideal.generators)
    elems = {ONE: None}
    for g in gens:
        elems[g] = None
    frontier = list(gens)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                l = m.lcm(g)
                if l not in elems:
                    elems[l] = None
                    new.append(l)
                    if len(elems) > cap:
                        raise ResourceLimit(f"lcm closure exceeds {cap} elements")
        frontier = new
    rest = sorted((m for m in elems if m != ONE and m not in set(gens)),
                  key=lambda m: (m.degree, m.sort_key()))
    labels = [ONE] + gens + rest
    ids = _lcm_ids(labels)
    ups = []
    for a in labels:
        ups.append(mask_of(j for j, b in enumerate(labels) if a.divides(b)))
    poset = FinitePoset(ids, ups, check=False)
    lat = lattice_structure(poset, labels=dict(enumerate(labels)))
    return LcmLattice(lat, ideal, {i + 1: g for i, g in enumerate(gens)})


def support_family(lat):
    """Frozen family of atom-position sets, one per element."""
    return frozenset(lat.support(i) for i in range(lat.n))


def same_lattice(lat1, lat2):
    """Isomorphic via the atom correspondence given by atom order."""
    return len(lat1.atoms) == len(lat2.atoms) and support_family(lat1) == support_family(lat2)


def _require_buildable(lat):
    if lat.n < 2 or not lat.atoms:
        raise TrivialLattice("the lattice has no atoms")
    if not lat.is_atomic:
        raise NotAtomic("the lattice is not atomic")
    if not lat.proper_part():
        raise TrivialLattice("the proper part is empty: the construction gives the unit ideal")


def default_variable_names(lat, indices):
    """``x_<id>`` per element, sanitised; falls back to ``x<k>`` on clashes."""
    names = []
    for i in indices:
        raw = str(lat.ids[i])
        clean = "".join(ch for ch in raw if ch.isalnum() or ch == "_")
        names.append("x_" + clean)
    if len(set(names)) != len(names) or not all(is_variable_name(n) for n in names):
        names = [f"x{k + 1}" for k in range(len(indices))]
    return names


def _names_for(lat, indices, names):
    if names is None:
        return default_variable_names(lat, indices)
    if names == "ids":
        return [str(lat.ids[i]) for i in indices]
    return [names.get(lat.ids[i], names.get(i)) for i in indices]


def element_labels(lat, variable_elements, names=None):
    """``x(b)`` for every element ``b``: product over listed elements not above b."""
    var_names = _names_for(lat, variable_elements, names)
    p = lat.poset
    out = {}
    for b in range(lat.n):
        out[b] = Monomial.from_support(
            v for k, v in zip(variable_elements, var_names) if not p.leq(b, k)
        )
    return out, var_names


def minimal_labels(lat, names=None):
    _require_buildable(lat)
    return element_labels(lat, lat.meet_irreducible_indices, names)


def minimal_ideal(lat, names=None):
    """The minimal squarefree ideal of an atomic lattice.

    ``names`` maps element ids to variable names, or is ``"ids"`` to use the
    ids themselves; the default names are ``x_<id>``.
    """
    labels, var_names = minimal_labels(lat, names)
    return MonomialIdeal([labels[a] for a in lat.atoms], var_names)


def nonminimal_ideal(lat, names=None):
    """Same construction with a variable for every proper element."""
    _require_buildable(lat)
    labels, var_names = element_labels(lat, lat.proper_part(), names)
    return MonomialIdeal([labels[a] for a in lat.atoms], var_names)


def labelled_minimal_lattice(lat, names=None):
    """``lat`` with every element labelled by its minimal-ideal monomial."""
    labels, _ = minimal_labels(lat, names)
    return lat.with_labels(labels)


def boolean_lattice(r, ids=None):
    """The boolean lattice on ``r`` atoms; ids default to subset strings."""
    subsets = sorted(range(1 << r), key=lambda m: (popcount(m), m))
    if ids is None:
        ids = ["{" + ",".join(str(i + 1) for i in bits(m)) + "}" for m in subsets]
    ups = [mask_of(j for j, t in enumerate(subsets) if s & t == s) for s in subsets]
    return lattice_structure(FinitePoset(ids, ups, check=False))


def lattice_from_supports(family, r, ids=None):
    """Atomic lattice from an intersection-closed family of subsets of ``[r]``.

    ``family`` holds atom-index masks; the empty set, singletons and the
    full set are added if missing.
    """
    fam = set(family) | {0, (1 << r) - 1} | {1 << i for i in range(r)}
    sets = sorted(fam, key=lambda m: (popcount(m), m))
    if ids is None:
        full = (1 << r) - 1

        def name(m):
            if m == 0:
                return "0"
            if m == full:
                return "1"
            return "s" + "".join(str(i + 1) for i in bits(m)) if r < 10 else \
                "s" + "_".join(str(i + 1) for i in bits(m))

        ids = [name(m) for m in sets]
    ups = [mask_of(j for j, t in enumerate(sets) if s & t == s) for s in sets]
    return lattice_structure(FinitePoset(ids, ups, check=False))


def face_lattice(K):
    """Face poset of a complex, with a top adjoined unless it is a simplex.

    Only vertices that are faces of ``K`` become atoms.
    """
    faces = K.all_face_masks()
    faces.sort(key=lambda m: (popcount(m), m))
    ids = ["{" + ",".join(str(K.vertices[i]) for i in bits(m)) + "}" for m in faces]
    ups = [mask_of(j for j, t in enumerate(faces) if s & t == s) for s in faces]
    if not K.is_simplex():
        ids.append("top")
        top = len(faces)
        ups = [u | (1 << top) for u in ups] + [1 << top]
    return lattice_structure(FinitePoset(ids, ups, check=False))


# specialisation of N(2^r)


@dataclass(frozen=True)
class Specialization:
    """Join map ``deg`` from subsets of atoms, fibre maxima, killed variables."""

    deg_map: dict      # subset mask -> element index
    fiber_max: dict    # element index -> maximal subset mask of its fibre
    kill_set: frozenset  # proper nonempty subset masks F with F != max fibre
    identity_check: bool


def specialize_n(lat):
    """Check that killing the non-maximal variables of ``N(2^r)`` yields ``N(L)``."""
    _require_buildable(lat)
    r = len(lat.atoms)
    cap = config.current().max_atoms_specialize
    if r > cap:
        raise TooManyAtoms(f"{r} atoms exceeds the cap of {cap}")
    full = (1 << r) - 1
    deg = {}
    for F in range(1 << r):
        deg[F] = lat.join_all(lat.atoms[i] for i in bits(F))
    fiber_max = {}
    for F, l in deg.items():
        cur = fiber_max.get(l)
        fiber_max[l] = F if cur is None else cur | F
    # the union of a join-closed fibre is its maximum
    for l, F in fiber_max.items():
        assert deg[F] == l
    proper = [F for F in range(1, full)]
    kill = frozenset(F for F in proper if fiber_max[deg[F]] != F)

    # N(2^r): generator for atom i is the product of x_F over proper F not containing i
    def var(F):
        return "x_" + "".join(str(i + 1) for i in bits(F)) if r < 10 else \
            "x_" + "_".join(str(i + 1) for i in bits(F))

    nl = nonminimal_ideal(lat)
    proper_l = lat.proper_part()
    name_of = dict(zip(proper_l, nl.variables))
    sigma = {}
    for F in proper:
        if F in kill:
            sigma[var(F)] = None
        else:
            sigma[var(F)] = name_of[deg[F]]
    ok = True
    for i, a in enumerate(lat.atoms):
        g = Monomial.from_support(var(F) for F in proper if not (F >> i) & 1)
        if g.substitute(sigma) != nl.generators[i]:
            ok = False
    return Specialization(deg, fiber_max, kill, ok)


# essential pairs and variable filters


@dataclass(frozen=True)
class EssentialPair:
    k: int  # meet-irreducible element index
    l: int  # its unique upper cover


@dataclass(frozen=True)
class FilterData:
    """Variable filters of a squarefree ideal against its lcm-lattice.

    ``filters[y]`` is the mask of elements whose label ``y`` divides;
    ``mi_filters[k]`` is the complement of the principal ideal below ``k``.
    """

    lcm: LcmLattice
    pairs: tuple
    filters: dict
    mi_filters: dict
    A: dict
    D: dict
    separators: dict
    checks: dict = field(default_factory=dict)


def essential_pairs(lat):
    p = lat.poset
    out = []
    for k in lat.meet_irreducible_indices:
        (l,) = bits(p.upper_covers(k))
        out.append(EssentialPair(k, l))
    return tuple(out)


def essential_pairs_and_filters(X):
    """Filters ``L(y,1)``, the sets ``A(k)``, ``D(y)`` and pair separators."""
    ideal = X.ideal
    if not ideal.is_squarefree():
        raise NotSquarefree("filters are defined for squarefree ideals")
    lat = X.lattice
    n = lat.n
    full = (1 << n) - 1
    labels = lat.labels
    filters = {
        y: mask_of(b for b in range(n) if labels[b].exponent(y)) for y in ideal.variables
    }
    mis = lat.meet_irreducible_indices
    mi_filters = {k: full & ~lat.poset.down(k) for k in mis}
    pairs = essential_pairs(lat)
    A = {k: tuple(y for y in ideal.variables if filters[y] == mi_filters[k]) for k in mis}
    separators = {}
    for y in ideal.variables:
        sep = [pr for pr in pairs
               if labels[pr.l].exponent(y) and not labels[pr.k].exponent(y)]
        separators[y] = sep[0] if len(sep) == 1 else (tuple(sep) if sep else None)
    D = {}
    checks = {"A_nonempty": all(A[k] for k in mis),
              "A_iff_separates": True,
              "A_disjoint": True,
              "cover_identity": True,
              "filters_are_filters": True}
    for y, f in filters.items():
        for b in bits(f):
            if lat.poset.up(b) & ~f:
                checks["filters_are_filters"] = False
    for pr in pairs:
        seps = {y for y in ideal.variables
                if labels[pr.l].exponent(y) and not labels[pr.k].exponent(y)}
        if seps != set(A[pr.k]):
            checks["A_iff_separates"] = False
    seen = set()
    for k in mis:
        if seen & set(A[k]):
            checks["A_disjoint"] = False
        seen |= set(A[k])
    for y in ideal.variables:
        if separators[y] is not None:
            continue
        f = filters[y]
        d = tuple(k for k in mis if mi_filters[k] & f == mi_filters[k] and mi_filters[k] != f)
        D[y] = d
        union = 0
        for k in d:
            union |= mi_filters[k]
        if union != f:
            checks["cover_identity"] = False
    return FilterData(X, pairs, filters, mi_filters, A, D, separators, checks)


@dataclass(frozen=True)
class Embedding:
    """Variable map from the minimal ideal into ``ideal`` and the support map."""

    phi: dict            # minimal-ideal variable -> ideal variable
    containment_check: bool
    rho: dict            # mi element index -> frozenset of ideal variables
    covers: dict         # non-separating variable -> chosen cover (mi indices)
    image_check: bool
    minimal: MonomialIdeal

    def rho_of(self, mi_elements):
        out = set()
        for k in mi_elements:
            out |= self.rho[k]
        return frozenset(out)


def minimal_embedding(ideal):
    """Embed the minimal ideal of ``LCM(ideal)`` into a squarefree ``ideal``.

    ``i(k)`` is the first variable of ``A(k)``; each cover ``C(y)`` is
    obtained from ``D(y)`` by greedily dropping redundant members.
    """
    ideal.require_squarefree()
    X = lcm_lattice(ideal)
    data = essential_pairs_and_filters(X)
    lat = X.lattice
    labels, var_names = minimal_labels(lat)
    mis = lat.meet_irreducible_indices
    xname = dict(zip(mis, var_names))
    phi = {}
    for k in mis:
        if not data.A[k]:
            raise EmptyA(f"no variable has the filter of {lat.ids[k]!r}")
        phi[xname[k]] = data.A[k][0]
    M = MonomialIdeal([labels[a] for a in lat.atoms], var_names)

    containment = all(
        labels[a].substitute(phi).divides(X.label(a)) for a in lat.atoms
    )

    covers = {}
    for y, d in data.D.items():
        target = data.filters[y]
        chosen = list(d)
        for k in list(chosen):
            rest = [c for c in chosen if c != k]
            u = 0
            for c in rest:
                u |= data.mi_filters[c]
            if u == target:
                chosen = rest
        covers[y] = tuple(chosen)
    B = {k: {y for y, c in covers.items() if k in c} for k in mis}
    rho = {k: frozenset(set(data.A[k]) | B[k]) for k in mis}

    def rho_of(ks):
        out = set()
        for k in ks:
            out |= rho[k]
        return frozenset(out)

    mi_pos = {k: i for i, k in enumerate(mis)}
    image_ok = True
    for a in lat.atoms:
        supp_x = [k for k in mis if labels[a].exponent(xname[k])]
        if rho_of(supp_x) != X.label(a).support:
            image_ok = False
    # the lattice image: supports of x(b) map to supports of y(b)
    seen = {}
    for b in range(lat.n):
        supp_x = frozenset(k for k in mis if labels[b].exponent(xname[k]))
        img = rho_of(supp_x)
        if img != X.label(b).support:
            image_ok = False
        if img in seen and seen[img] != supp_x:
            image_ok = False
        seen[img] = supp_x
    if len(mis) <= 12:
        images = set()
        for F in range(1 << len(mis)):
            images.add(rho_of(mis[i] for i in bits(F)))
        if len(images) != 1 << len(mis):
            image_ok = False
    del mi_pos
    return Embedding(phi, containment, rho, covers, image_ok, M)


# depolarization along chains


def parse_chain_spec(text):
    """``"a<b<c; d; e<f"`` -> ``[["a","b","c"], ["d"], ["e","f"]]``."""
    blocks = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            blocks.append([t.strip() for t in part.split("<") if t.strip()])
    return blocks


def depolarize_by_chains(lat, partition, reps=None, names=None):
    """Identify the variables of each chain block of ``mi`` with one representative.

    ``partition`` lists blocks of element ids; ``reps`` picks one id per
    block (default: the first listed).
    """
    labels, var_names = minimal_labels(lat, names)
    mis = lat.meet_irreducible_indices
    p = lat.poset
    blocks = [[lat.index(e) for e in block] for block in partition]
    flat = [i for b in blocks for i in b]
    if sorted(flat) != sorted(mis) or len(set(flat)) != len(flat):
        raise NotAPartition("blocks must partition the meet-irreducible elements")
    for bi, block in enumerate(blocks):
        if not p.is_chain(block):
            raise NotAChain(f"block {bi} is not a chain", bi)
    if reps is None:
        reps = [b[0] for b in blocks]
    else:
        reps = [lat.index(e) for e in reps]
    xname = dict(zip(mis, var_names))
    sigma = {}
    for block, rep in zip(blocks, reps):
        if rep not in block:
            raise NotAPartition("representative not in its block")
        for k in block:
            sigma[xname[k]] = xname[rep]
    M = MonomialIdeal([labels[a] for a in lat.atoms], var_names)
    return substitute_variables(M, sigma)


def lattice_of_ideal_matches(ideal, lat):
    """``LCM(ideal)`` equals ``lat`` with generators matched to atoms in order."""
    return same_lattice(lcm_lattice(ideal).lattice, lat)


# isomorphism of ideals


def find_isomorphism(I, J, max_nodes=None):
    """Variable bijection carrying the generator set of ``I`` onto that of ``J``.

    Only variables dividing some generator take part. Backtracking over
    variables whose (degree profile) signatures agree. Returns a dict or
    ``None``.
    """
    if max_nodes is None:
        max_nodes = config.current().max_iso_nodes
    vi, vj = I.used_variables, J.used_variables
    if len(vi) != len(vj) or len(I) != len(J):
        return None
    gi = [g.exponents for g in I.generators]
    gj = [g.exponents for g in J.generators]

    def signature(v, gens):
        return tuple(sorted((sum(g.values()), g.get(v, 0)) for g in gens if g.get(v, 0)))

    sig_i = {v: signature(v, gi) for v in vi}
    sig_j = {w: signature(w, gj) for w in vj}
    if sorted(sig_i.values()) != sorted(sig_j.values()):
        return None
    order = sorted(vi, key=lambda v: sum(1 for w in vj if sig_j[w] == sig_i[v]))
    target = set(J.generators)
    assign = {}
    used = set()
    nodes = 0

    def partial_ok():
        # restricted generator multisets must agree on assigned variables
        keys_i = sorted(tuple(sorted((assign[v], e) for v, e in g.items() if v in assign))
                        for g in gi)
        img = set(assign.values())
        keys_j = sorted(tuple(sorted((w, e) for w, e in g.items() if w in img)) for g in gj)
        return keys_i == keys_j

    def search(pos):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ResourceLimit("isomorphism search exceeded its node budget")
        if pos == len(order):
            mapped = {Monomial({assign[v]: e for v, e in g.items()}) for g in gi}
            return mapped == target
        v = order[pos]
        for w in vj:
            if w in used or sig_j[w] != sig_i[v]:
                continue
            assign[v] = w
            used.add(w)
            if partial_ok() and search(pos + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    return dict(assign) if search(0) else None


@dataclass(frozen=True)
class MinimalityResult:
    is_minimal: bool
    bijection: dict = None   # minimal-ideal variable -> polarized variable
    reason: str = ""
    polarized: MonomialIdeal = None
    minimal: MonomialIdeal = None

    def __bool__(self):
        return self.is_minimal


def is_minimal_ideal(ideal):
    """Decide whether the polarization of ``ideal`` is a squarefree minimal ideal.

    Atoms of ``LCM(I_pol)`` are the generators in order, and the minimal
    ideal built from that lattice uses the same atom order, so an
    isomorphism exists iff the variable columns (sets of generators a
    variable divides) agree after a bijection.
    """
    pol, _ = polarize(ideal)
    X = lcm_lattice(pol)
    lat = X.lattice
    try:
        M = minimal_ideal(lat)
    except TrivialLattice:
        return MinimalityResult(False, reason="lcm-lattice has empty proper part", polarized=pol)
    nmi = len(lat.meet_irreducible_indices)
    used = pol.used_variables
    if len(used) != nmi:
        return MinimalityResult(
            False, reason=f"{len(used)} variables but {nmi} meet-irreducibles",
            polarized=pol, minimal=M)

    def columns(I):
        return {v: frozenset(i for i, g in enumerate(I.generators) if g.exponent(v))
                for v in I.used_variables}

    col_p = columns(pol)
    col_m = columns(M)
    by_col = {}
    for v, c in col_p.items():
        by_col.setdefault(c, []).append(v)
    bij = {}
    for x, c in col_m.items():
        cands = by_col.get(c)
        if not cands:
            return MinimalityResult(False, reason=f"no variable matches {x}",
                                    polarized=pol, minimal=M)
        bij[x] = cands.pop(0)
    return MinimalityResult(True, bij, "isomorphic", pol, M)
