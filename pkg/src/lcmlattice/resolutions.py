"""Multigraded Betti numbers of S/I and the combinatorics around them.

Two independent routes give the Betti table of ``S/I``:

* interval homology: ``beta_{i,b} = dim H~_{i-2}((0, b))`` over the
  lcm-lattice, valid for any monomial ideal;
* Hochster's formula on the Stanley-Reisner complex,
  ``beta_{i,s} = dim H~_{|s|-i-1}(K|s)``, for squarefree ideals.

Tables use homological index ``i >= 1`` (``i = 0`` would be the single
entry at degree 1) and are keyed by the multidegree monomial.
"""

import json
from dataclasses import dataclass
from functools import lru_cache

from . import config
from ._bits import bits, popcount
from .errors import NoLinearResolution, NotALatticeElement, ResourceLimit
from .fields import QQ
from .monomial import ONE, Monomial, MonomialIdeal
from .poset import open_interval, order_complex
from .simplicial import SimplicialComplex, is_cohen_macaulay, reduced_homology, sr_complex


class BettiTable:
    """``entries[(i, b)]`` = beta_i(S/I, b) for nonzero values, ``i >= 1``."""

    convention = "quotient"

    def __init__(self, entries, field=QQ):
        self.entries = {k: v for k, v in entries.items() if v}
        self.field = field

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({len(self.entries)} nonzero entries, field {self.field})"

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].degree, kv[0][1].sort_key()))

    def degrees(self, i=None):
        """Betti degrees, optionally only those in homological index ``i``."""
        return {b for (j, b) in self.entries if i is None or j == i}

    def totals(self):
        out = {}
        for (i, _), v in self.entries.items():
            out[i] = out.get(i, 0) + v
        return dict(sorted(out.items()))

    @property
    def pd(self):
        return max(i for i, _ in self.entries)

    @property
    def reg(self):
        """Regularity of the ideal: the largest ``deg b - (i - 1)``."""
        return max(b.degree - (i - 1) for i, b in self.entries)

    def graded(self):
        """Coarse table ``{(i, total degree): value}``."""
        out = {}
        for (i, b), v in self.entries.items():
            out[(i, b.degree)] = out.get((i, b.degree), 0) + v
        return out

    def map_degrees(self, sigma):
        """Push multidegrees through a variable substitution (e.g. depolarization)."""
        out = {}
        for (i, b), v in self.entries.items():
            key = (i, b.substitute(sigma))
            out[key] = out.get(key, 0) + v
        return BettiTable(out, self.field)

    def to_json(self):
        return {
            "convention": self.convention,
            "field": str(self.field),
            "entries": [
                {"i": i, "degree": str(b), "value": v} for (i, b), v in self.sorted_entries()
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)

    def staircase(self, ideal_indexed=False):
        """Text diagram: rows are ``total degree - i``, columns ``i``.

        The quotient table includes the column ``i = 0``; the ideal-indexed
        version shifts every index down by one.
        """
        cells = {}
        if not ideal_indexed:
            cells[(0, 0)] = 1
        for (i, deg), v in self.graded().items():
            col = i - 1 if ideal_indexed else i
            row = deg - col
            cells[(row, col)] = cells.get((row, col), 0) + v
        if not cells:
            return ""
        cols = range(0, max(c for _, c in cells) + 1)
        rows = range(min(r for r, _ in cells), max(r for r, _ in cells) + 1)
        totals = {c: sum(v for (r, cc), v in cells.items() if cc == c) for c in cols}
        width = max(len(str(v)) for v in list(cells.values()) + list(totals.values()) + [max(cols)])
        fmt = lambda x: str(x).rjust(width)
        lines = ["       " + " ".join(fmt(c) for c in cols),
                 "total: " + " ".join(fmt(totals[c]) for c in cols)]
        for r in rows:
            lines.append(f"{r:>5}: " + " ".join(fmt(cells.get((r, c), ".")) for c in cols))
        return "\n".join(lines)


def _interval_homology(lat, b, fld):
    if b == lat.bottom:
        raise ValueError("no interval below the bottom")
    inner = open_interval(lat.poset, lat.bottom, b)
    return reduced_homology(order_complex(inner), fld)


def betti_gpw(ideal, field=QQ, lcm=None):
    """Betti table of ``S/ideal`` from homology of open lower intervals."""
    from .construct import lcm_lattice

    X = lcm or lcm_lattice(ideal)
    lat = X.lattice
    entries = {}
    for b in range(lat.n):
        if b == lat.bottom:
            continue
        h = _interval_homology(lat, b, field)
        for d, v in h.dims.items():
            if v:
                entries[(d + 2, X.label(b))] = v
    return BettiTable(entries, field)


def betti_hochster_oracle(ideal, field=QQ):
    """Betti table of ``S/ideal`` for squarefree ideals from restrictions of SR."""
    ideal.require_squarefree()
    K = sr_complex(ideal)
    vs = ideal.variables
    n = len(vs)
    if n > 16:
        raise ResourceLimit(f"{n} variables is too many for the subset loop")
    facets = K.facet_masks
    entries = {}
    for s in range(1, 1 << n):
        sub = SimplicialComplex.from_masks(vs, [f & s for f in facets])
        h = reduced_homology(sub, field)
        size = popcount(s)
        for j, v in h.dims.items():
            i = size - j - 1
            if v and i >= 1:
                entries[(i, Monomial.from_support(vs[k] for k in bits(s)))] = v
    return BettiTable(entries, field)


# Taylor and Scarf complexes


@dataclass(frozen=True)
class LabeledSimplex:
    """Full simplex on generator positions ``0..r-1`` labelled by lcms."""

    generators: tuple

    @property
    def r(self):
        return len(self.generators)

    def label(self, mask):
        m = ONE
        for i in bits(mask):
            m = m.lcm(self.generators[i])
        return m

    def face_labels(self):
        cap = config.current().max_taylor_generators
        if self.r > cap:
            raise ResourceLimit(f"{self.r} generators exceeds the Taylor cap {cap}")
        labels = [ONE] * (1 << self.r)
        for mask in range(1, 1 << self.r):
            low = mask & -mask
            labels[mask] = labels[mask ^ low].lcm(self.generators[low.bit_length() - 1])
        return labels


@dataclass(frozen=True)
class TaylorScarf:
    taylor: LabeledSimplex
    scarf: SimplicialComplex   # vertices 1..r (generator positions, 1-based)
    scarf_masks: tuple
    downward_closed: bool


def taylor_scarf(ideal):
    T = LabeledSimplex(tuple(ideal.generators))
    labels = T.face_labels()
    count = {}
    for m in labels:
        count[m] = count.get(m, 0) + 1
    faces = [mask for mask, m in enumerate(labels) if count[m] == 1]
    face_set = set(faces)
    closed = all(mask ^ (1 << i) in face_set for mask in faces for i in bits(mask))
    verts = list(range(1, T.r + 1))
    K = SimplicialComplex.from_masks(verts, faces) if faces else SimplicialComplex.void(verts)
    return TaylorScarf(T, K, tuple(faces), closed)


@dataclass(frozen=True)
class ScarfSupport:
    supports: bool                  # every Betti degree is a Scarf label
    interval_criterion: bool        # every b has boolean [0,b] or acyclic (0,b)
    diagnosis: dict                 # label -> "boolean" | "acyclic" | "fails"
    missing: tuple = ()             # Betti degrees that are not Scarf labels

    def __bool__(self):
        return self.supports


def scarf_supports(ideal, field=QQ):
    from .construct import lcm_lattice

    X = lcm_lattice(ideal)
    lat = X.lattice
    table = betti_gpw(ideal, field, lcm=X)
    ts = taylor_scarf(ideal)
    labels = {ts.taylor.label(m) for m in ts.scarf_masks}
    missing = tuple(sorted((b for b in table.degrees() if b not in labels), key=lambda m: m.sort_key()))
    diagnosis = {}
    for b in range(lat.n):
        if b == lat.bottom:
            continue
        k = popcount(lat.atoms_below(b))
        # boolean iff the interval has 2^k elements, all distinct joins of atom subsets
        size = popcount(lat.poset.down(b))
        if size == 1 << k:
            diagnosis[X.label(b)] = "boolean"
        elif _interval_homology(lat, b, field).is_acyclic():
            diagnosis[X.label(b)] = "acyclic"
        else:
            diagnosis[X.label(b)] = "fails"
    criterion = all(v != "fails" for v in diagnosis.values())
    return ScarfSupport(not missing, criterion, diagnosis, missing)


# projective dimension, regularity, linearity


def pd_and_reg(table):
    if not table.entries:
        raise ValueError("empty Betti table")
    return table.pd, table.reg


def has_linear_resolution(ideal, field=QQ, table=None):
    degs = ideal.degrees()
    if len(degs) != 1:
        return False
    d = degs[0]
    table = table or betti_gpw(ideal, field)
    return all(b.degree == d + i - 1 for i, b in table.entries)


def colon_by(gens, m):
    """Minimal generators of ``(gens) : m``."""
    quot = [g / g.gcd(m) for g in gens]
    return MonomialIdeal(quot).generators if quot else ()


@dataclass(frozen=True)
class LinearQuotients:
    holds: bool
    ordering: tuple = None        # generator positions, when found
    witness: object = None        # (prefix, generator, colon generators) for a dead end

    def __bool__(self):
        return self.holds


def linear_quotients(ideal):
    """Lexicographically first ordering with variable-generated colons.

    The colon at each step depends only on the set already placed, so
    failed sets are memoised and the search is over subsets.
    """
    gens = ideal.generators
    r = len(gens)
    cap = config.current().max_quotient_generators
    if r > cap:
        raise ResourceLimit(f"{r} generators exceeds the linear-quotients cap {cap}")
    full = (1 << r) - 1
    dead = set()
    first_failure = []

    @lru_cache(maxsize=None)
    def linear_step(placed, j):
        col = colon_by([gens[i] for i in bits(placed)], gens[j])
        return all(c.degree == 1 for c in col), col

    def search(placed, order):
        if placed == full:
            return order
        if placed in dead:
            return None
        for j in range(r):
            if (placed >> j) & 1:
                continue
            ok = True
            if placed:
                ok, col = linear_step(placed, j)
                if not ok and not first_failure:
                    first_failure.append((tuple(gens[i] for i in order), gens[j], col))
            if ok:
                found = search(placed | (1 << j), order + (j,))
                if found is not None:
                    return found
        dead.add(placed)
        return None

    order = search(0, ())
    if order is not None:
        return LinearQuotients(True, order)
    return LinearQuotients(False, None, first_failure[0] if first_failure else None)


@dataclass(frozen=True)
class Matroidal:
    holds: bool
    witness: tuple = None  # (m_i, m_j, y) with no m_k dividing lcm/y

    def __bool__(self):
        return self.holds


def is_matroidal(ideal):
    """Exchange test: for m_i != m_j and y | gcd, some m_k divides lcm(m_i,m_j)/y."""
    ideal.require_squarefree()
    gens = ideal.generators
    for a, mi in enumerate(gens):
        for mj in gens[a + 1:]:
            l = mi.lcm(mj)
            for y in sorted(mi.gcd(mj).support):
                target = l / Monomial({y: 1})
                if not any(g.divides(target) for g in gens):
                    return Matroidal(False, (mi, mj, y))
    return Matroidal(True)


def combinatorial_linearity(ideal):
    ideal.require_squarefree()
    return linear_quotients(ideal), is_matroidal(ideal)


# first syzygies and restrictions


def first_syzygy_ideal(ideal, field=QQ, table=None):
    """Ideal generated by the degrees of first syzygies, or None if there are none."""
    table = table or betti_gpw(ideal, field)
    degs = table.degrees(2)
    if not degs:
        return None
    return MonomialIdeal(sorted(degs, key=lambda m: (m.degree, m.sort_key())), ideal.variables)


def restriction_ideal(ideal, b):
    """``(m_i : m_i | b)`` for an element ``b`` of the lcm-lattice."""
    from .construct import lcm_lattice

    X = lcm_lattice(ideal)
    if b not in set(X.labels.values()):
        raise NotALatticeElement(f"{b} is not an lcm of generators")
    gens = [g for g in ideal.generators if g.divides(b)]
    return MonomialIdeal(gens, ideal.variables)


def restriction_matches_interval(ideal, b):
    """Whether ``LCM(I_{<=b})`` is the closed interval below ``b``."""
    from .construct import lcm_lattice

    X = lcm_lattice(ideal)
    sub = lcm_lattice(restriction_ideal(ideal, b))
    below = {m for m in X.labels.values() if m.divides(b)}
    return set(sub.labels.values()) == below


def first_syzygy_and_restriction(ideal, b=None, field=QQ):
    I1 = first_syzygy_ideal(ideal, field)
    if b is None:
        return I1, None, None
    return I1, restriction_ideal(ideal, b), restriction_matches_interval(ideal, b)


# lattice-side characterisation of linearity


@dataclass(frozen=True)
class LinearCharacterization:
    cohen_macaulay: bool
    cover_degrees: bool
    cm_witness: tuple = None
    cover_witness: tuple = None   # (a id, b id, deg x(a), deg x(b))

    @property
    def verdict(self):
        return self.cohen_macaulay and self.cover_degrees

    def __bool__(self):
        return self.verdict

    @property
    def failed(self):
        out = []
        if not self.cohen_macaulay:
            out.append("cohen_macaulay")
        if not self.cover_degrees:
            out.append("cover_degrees")
        return out


def lattice_linear_characterization(lat, field=QQ, names=None):
    """Cohen-Macaulay proper part plus unit degree jumps along covers above the atoms."""
    from .construct import minimal_labels

    labels, _ = minimal_labels(lat, names)
    p = lat.poset
    proper = p.subposet(lat.proper_part())
    cm = is_cohen_macaulay(order_complex(proper), field)
    cover_witness = None
    for a, b in p.covers:
        if a == lat.bottom:
            continue
        if labels[b].degree != labels[a].degree + 1:
            cover_witness = (p.ids[a], p.ids[b], labels[a].degree, labels[b].degree)
            break
    return LinearCharacterization(cm.is_cm, cover_witness is None, cm.witness, cover_witness)


@dataclass(frozen=True)
class LinearStructure:
    gcd: Monomial
    quotient: MonomialIdeal        # I / gcd, or None for a single generator
    bijection: dict                # minimal-ideal variable -> variable of the quotient
    minimal: MonomialIdeal


def minimality_from_linearity(ideal, field=QQ):
    """For squarefree ideals with linear resolution: ``I = g * I'`` with ``I' ≅ M(L)``."""
    from .construct import is_minimal_ideal

    ideal.require_squarefree()
    if not has_linear_resolution(ideal, field):
        raise NoLinearResolution(f"{ideal} does not have a linear resolution")
    g = ideal.gcd()
    if len(ideal) == 1:
        return LinearStructure(g, None, {}, None)
    q = ideal.divide_by(g) if not g.is_one() else ideal
    q = MonomialIdeal(q.generators, q.used_variables)
    res = is_minimal_ideal(q)
    if not res.is_minimal:
        # a proven statement: reaching this means an implementation bug
        raise AssertionError(f"quotient {q} is not minimal: {res.reason}")
    return LinearStructure(g, q, res.bijection, res.minimal)
