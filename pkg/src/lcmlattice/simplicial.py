"""Simplicial complexes, reduced homology and Stanley-Reisner translation.

A complex lives on an explicit ordered ground set and is stored by its
facets. Two degenerate complexes are kept apart: the *void* complex has
no faces at all, the *empty* complex ``{∅}`` has only the empty face.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import config
from ._bits import bits, mask_of, maximal_sets, minimal_transversals, popcount
from .errors import (
    DegenerateComplex,
    FullSimplex,
    NotAFace,
    ResourceLimit,
    UnknownVertex,
)
from .fields import QQ
from .linalg import sparse_rank
from .monomial import Monomial, MonomialIdeal


class SimplicialComplex:
    """Complex given by facets over ``vertices``.

    ``empty_face=True`` with no (nonempty) facets gives ``{∅}``; with no
    facets and ``empty_face=False`` the complex is void. Any nonempty
    facet implies the empty face.
    """

    def __init__(self, vertices, facets=(), empty_face=None):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise UnknownVertex("ground set has repeated vertices")
        self._vertices = vertices
        self._index = {v: i for i, v in enumerate(vertices)}
        masks = []
        for f in facets:
            m = 0
            for v in f:
                if v not in self._index:
                    raise UnknownVertex(f"facet uses unknown vertex {v!r}")
                m |= 1 << self._index[v]
            masks.append(m)
        if masks:
            self._facets = maximal_sets(masks)
        elif empty_face:
            self._facets = [0]
        else:
            self._facets = []

    @classmethod
    def from_masks(cls, vertices, masks, assume_maximal=False):
        K = cls(vertices)
        if assume_maximal:
            K._facets = sorted(set(masks))
        else:
            K._facets = maximal_sets(masks) if masks else []
        return K

    @classmethod
    def void(cls, vertices=()):
        return cls(vertices)

    @classmethod
    def empty(cls, vertices=()):
        return cls(vertices, empty_face=True)

    @classmethod
    def simplex(cls, vertices):
        vertices = tuple(vertices)
        return cls(vertices, [vertices], empty_face=True)

    # access

    @property
    def vertices(self):
        return self._vertices

    @property
    def facet_masks(self):
        return list(self._facets)

    def to_set(self, mask):
        return frozenset(self._vertices[i] for i in bits(mask))

    def to_mask(self, face):
        try:
            return mask_of(self._index[v] for v in face)
        except KeyError as exc:
            raise UnknownVertex(f"unknown vertex {exc.args[0]!r}") from None

    @property
    def facets(self):
        return frozenset(self.to_set(m) for m in self._facets)

    def sorted_facets(self):
        """Facets as vertex tuples in ground-set order, deterministic."""
        return [tuple(self._vertices[i] for i in bits(m)) for m in self._facets]

    @property
    def is_void(self):
        return not self._facets

    @property
    def is_empty_complex(self):
        return self._facets == [0]

    @property
    def dim(self):
        """Dimension; ``None`` for the void complex, ``-1`` for ``{∅}``."""
        if not self._facets:
            return None
        return max(popcount(m) for m in self._facets) - 1

    def is_pure(self):
        return len({popcount(m) for m in self._facets}) <= 1

    def is_simplex(self):
        return len(self._facets) == 1

    def contains_mask(self, mask):
        return any(mask & f == mask for f in self._facets)

    def __contains__(self, face):
        return self.contains_mask(self.to_mask(face))

    def face_masks(self, size, cap=None):
        """Faces with ``size`` vertices, as sorted masks.

        With ``cap`` set, gives up with ResourceLimit once more faces turn up.
        """
        if size == 0:
            return [0] if self._facets else []
        out = set()
        for f in self._facets:
            idx = list(bits(f))
            if len(idx) < size:
                continue
            for combo in combinations(idx, size):
                out.add(mask_of(combo))
                if cap is not None and len(out) > cap:
                    raise ResourceLimit(f"more than {cap} faces")
        return sorted(out)

    def all_face_masks(self):
        if not self._facets:
            return []
        d = self.dim
        out = []
        for s in range(d + 2):
            out.extend(self.face_masks(s))
        return out

    def faces(self):
        return [self.to_set(m) for m in self.all_face_masks()]

    def f_vector(self):
        """Face counts by size 0, 1, ..., dim+1 (size 0 is the empty face)."""
        if not self._facets:
            return []
        return [len(self.face_masks(s)) for s in range(self.dim + 2)]

    def reduced_euler_characteristic(self):
        return sum((-1) ** (s - 1) * c for s, c in enumerate(self.f_vector()))

    # operations

    def restrict(self, vertex_subset):
        """Induced subcomplex on ``vertex_subset`` (same ground set)."""
        m = self.to_mask(vertex_subset)
        return SimplicialComplex.from_masks(self._vertices, [f & m for f in self._facets])

    def link_mask(self, face_mask):
        if not self.contains_mask(face_mask):
            raise NotAFace("not a face of the complex")
        rest = [i for i in range(len(self._vertices)) if not (face_mask >> i) & 1]
        pos = {old: new for new, old in enumerate(rest)}
        gens = []
        for f in self._facets:
            if f & face_mask == face_mask:
                gens.append(mask_of(pos[i] for i in bits(f & ~face_mask)))
        return SimplicialComplex.from_masks([self._vertices[i] for i in rest], gens)

    def link(self, face):
        """``{G : G ∩ F = ∅, G ∪ F ∈ K}`` on the ground set minus ``F``."""
        return self.link_mask(self.to_mask(face))

    def on_ground_set(self, vertices):
        """Same faces over a larger (or reordered) ground set."""
        K = SimplicialComplex(vertices)
        K._facets = maximal_sets(K.to_mask(self.to_set(f)) for f in self._facets) if self._facets else []
        return K

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self.facets == other.facets \
            and self.is_void == other.is_void

    def __hash__(self):
        return hash((frozenset(self._vertices), self.facets))

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(void on {len(self._vertices)} vertices)"
        return f"SimplicialComplex(dim {self.dim}, {len(self._facets)} facets)"


def from_facets(vertices, facets, empty_face=False):
    return SimplicialComplex(vertices, facets, empty_face=empty_face)


# homology


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers of a complex over ``field``.

    ``dims[d]`` for ``-1 <= d <= dim``; absent degrees are zero.
    """

    field: object
    dims: dict = dc_field(default_factory=dict)

    def __getitem__(self, d):
        return self.dims.get(d, 0)

    def is_acyclic(self):
        return not any(self.dims.values())

    def nonzero(self):
        return {d: v for d, v in sorted(self.dims.items()) if v}

    def euler(self):
        return sum((-1) ** d * v for d, v in self.dims.items())


def _boundary_columns(faces_hi, index_lo):
    cols = []
    for f in faces_hi:
        col = {}
        sign = 1
        for i in bits(f):
            col[index_lo[f & ~(1 << i)]] = sign
            sign = -sign
        cols.append(col)
    return cols


def reduced_homology(K, field=QQ):
    """Dimensions of reduced homology via exact boundary-matrix ranks."""
    p = field.characteristic
    if K.is_void:
        return HomologyProfile(field, {})
    d = K.dim
    total = 0
    faces = {}
    cap = config.current().max_faces
    for s in range(d + 2):
        faces[s] = K.face_masks(s, cap - total)
        total += len(faces[s])
    # ranks[s]: rank of the boundary from size-s faces to size-(s-1) faces
    ranks = {0: 0, d + 2: 0}
    for s in range(1, d + 2):
        index_lo = {m: i for i, m in enumerate(faces[s - 1])}
        ranks[s] = sparse_rank(_boundary_columns(faces[s], index_lo), p)
    dims = {}
    for s in range(d + 2):
        dims[s - 1] = len(faces[s]) - ranks[s] - ranks[s + 1]
    return HomologyProfile(field, dims)


def is_acyclic(K, field=QQ):
    return reduced_homology(K, field).is_acyclic()


@dataclass(frozen=True)
class CMResult:
    is_cm: bool
    witness: tuple = None  # (face, degree) of the first failing link

    def __bool__(self):
        return self.is_cm


def is_cohen_macaulay(K, field=QQ):
    """Reisner's criterion: every link has reduced homology only on top."""
    if K.is_void:
        raise DegenerateComplex("the void complex has no Cohen-Macaulay status")
    for mask in K.all_face_masks():
        lk = K.link_mask(mask)
        top = lk.dim
        h = reduced_homology(lk, field)
        for deg in sorted(h.dims):
            if deg < top and h.dims[deg]:
                return CMResult(False, (K.to_set(mask), deg))
    return CMResult(True)


def delta_one(K):
    """Subcomplex generated by intersections of two or more facets.

    A face qualifies when it lies in at least two facets and equals the
    intersection of all facets containing it; such faces are exactly the
    intersections of families of at least two facets, whose maximal members
    are pairwise intersections. A simplex therefore gives the void complex.
    """
    fs = K.facet_masks
    inter = [a & b for i, a in enumerate(fs) for b in fs[i + 1:]]
    return SimplicialComplex.from_masks(K.vertices, inter)


def alexander_dual(K):
    """Complex of complements of non-faces, on the same ground set."""
    n = len(K.vertices)
    full = (1 << n) - 1
    if K.is_void or K.contains_mask(full):
        raise DegenerateComplex("the dual of the void complex or of the full simplex is degenerate")
    # minimal non-faces are minimal transversals of the facet complements
    nonfaces = minimal_transversals([full & ~f for f in K.facet_masks])
    return SimplicialComplex.from_masks(K.vertices, [full & ~m for m in nonfaces])


# Stanley-Reisner translation


def sr_complex(ideal):
    """Complex whose faces are the squarefree monomials outside ``ideal``."""
    ideal.require_squarefree()
    vs = ideal.variables
    index = {v: i for i, v in enumerate(vs)}
    edges = [mask_of(index[v] for v in g.support) for g in ideal.generators]
    full = (1 << len(vs)) - 1
    covers = minimal_transversals(edges)
    return SimplicialComplex.from_masks(vs, [full & ~c for c in covers])


def sr_ideal(K):
    """Ideal generated by the minimal non-faces of ``K``."""
    n = len(K.vertices)
    full = (1 << n) - 1
    if K.is_void:
        raise DegenerateComplex("the void complex has no Stanley-Reisner ideal")
    if K.contains_mask(full):
        raise FullSimplex("the Stanley-Reisner ideal of a full simplex is zero")
    nonfaces = minimal_transversals([full & ~f for f in K.facet_masks])
    names = vertex_variables(K)
    gens = [Monomial.from_support(names[i] for i in bits(m)) for m in nonfaces]
    return MonomialIdeal(gens, names)


def vertex_variables(K):
    """Variable names for the vertices: strings as they are, integers ``v`` as ``x<v>``."""
    return [v if isinstance(v, str) else f"x{v}" for v in K.vertices]


def alexander_dual_ideal(ideal):
    """Stanley-Reisner ideal of the Alexander dual of ``SR(ideal)``."""
    return sr_ideal(alexander_dual(sr_complex(ideal)))
