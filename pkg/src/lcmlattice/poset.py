"""Finite posets and lattices.

Elements are opaque hashable ids (strings when read from JSON); every
algorithm works on dense indices ``0..n-1`` in input order. The order is
kept as one bitmask row per element: ``up(i)`` has bit ``j`` set iff
``i <= j``.
"""

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter

import numpy as np

from . import config
from ._bits import bits, mask_of, popcount
from .errors import (
    CycleDetected,
    DuplicateId,
    NotALattice,
    NotAPoset,
    NotComparable,
    ResourceLimit,
    UnknownId,
    LabelMismatch,
)


def _check_size(n):
    cap = config.current().max_elements
    if n > cap:
        raise ResourceLimit(f"{n} elements exceeds the cap of {cap}")


class FinitePoset:
    """A finite partial order.

    Construct with :func:`build_from_covers` or :meth:`from_relation`;
    the constructor takes the closed order as up-set masks.
    """

    def __init__(self, ids, up_masks, *, check=True):
        ids = tuple(ids)
        if len(set(ids)) != len(ids):
            raise DuplicateId("element ids must be distinct")
        if len(up_masks) != len(ids):
            raise ValueError("one up-set mask per element is required")
        _check_size(len(ids))
        self._ids = ids
        self._index = {e: i for i, e in enumerate(ids)}
        self._up = list(up_masks)
        down = [0] * len(ids)
        for i, m in enumerate(self._up):
            for j in bits(m):
                down[j] |= 1 << i
        self._down = down
        if check:
            self._check_order()

    def _check_order(self):
        for i, m in enumerate(self._up):
            if not (m >> i) & 1:
                raise NotAPoset(f"relation is not reflexive at {self._ids[i]!r}")
            for j in bits(m & ~(1 << i)):
                if (self._up[j] >> i) & 1:
                    raise NotAPoset(
                        f"relation is not antisymmetric: {self._ids[i]!r}, {self._ids[j]!r}"
                    )
                if self._up[j] & ~m:
                    raise NotAPoset(f"relation is not transitive through {self._ids[j]!r}")

    @classmethod
    def from_relation(cls, ids, leq):
        """Poset from a callable ``leq(a, b)`` on ids (assumed to be an order)."""
        ids = list(ids)
        ups = []
        for a in ids:
            ups.append(mask_of(j for j, b in enumerate(ids) if leq(a, b)))
        return cls(ids, ups)

    # basic access

    def __len__(self):
        return len(self._ids)

    @property
    def n(self):
        return len(self._ids)

    @property
    def ids(self):
        return self._ids

    def index(self, element):
        try:
            return self._index[element]
        except KeyError:
            raise UnknownId(f"unknown element {element!r}") from None

    def __contains__(self, element):
        return element in self._index

    def up(self, i):
        """Mask of ``{j : i <= j}``."""
        return self._up[i]

    def down(self, i):
        """Mask of ``{j : j <= i}``."""
        return self._down[i]

    def leq(self, i, j):
        return bool((self._up[i] >> j) & 1)

    def lt(self, i, j):
        return i != j and self.leq(i, j)

    def comparable(self, i, j):
        return self.leq(i, j) or self.leq(j, i)

    def leq_matrix(self):
        n = self.n
        mat = np.zeros((n, n), dtype=bool)
        for i, m in enumerate(self._up):
            mat[i, list(bits(m))] = True
        return mat

    # derived structure

    @cached_property
    def _upper_covers(self):
        out = []
        for i in range(self.n):
            strict = self._up[i] & ~(1 << i)
            cov = 0
            for j in bits(strict):
                between = strict & self._down[j] & ~(1 << j)
                if not between:
                    cov |= 1 << j
            out.append(cov)
        return out

    def upper_covers(self, i):
        return self._upper_covers[i]

    @cached_property
    def _lower_covers(self):
        low = [0] * self.n
        for i, m in enumerate(self._upper_covers):
            for j in bits(m):
                low[j] |= 1 << i
        return low

    def lower_covers(self, i):
        return self._lower_covers[i]

    @cached_property
    def covers(self):
        """Transitive reduction as a sorted list of index pairs ``(lo, hi)``."""
        return [(i, j) for i in range(self.n) for j in bits(self._upper_covers[i])]

    def cover_ids(self):
        return [(self._ids[i], self._ids[j]) for i, j in self.covers]

    @cached_property
    def topological_order(self):
        """Indices sorted so that ``i < j`` in the order implies i comes first."""
        return sorted(range(self.n), key=lambda i: (popcount(self._down[i]), i))

    def minimal_elements(self):
        return [i for i in range(self.n) if self._down[i] == 1 << i]

    def maximal_elements(self):
        return [i for i in range(self.n) if self._up[i] == 1 << i]

    def subposet(self, indices):
        """Induced subposet on ``indices`` (kept in the given order)."""
        indices = list(indices)
        pos = {old: new for new, old in enumerate(indices)}
        ups = []
        for old in indices:
            m = 0
            for j in bits(self._up[old]):
                if j in pos:
                    m |= 1 << pos[j]
            ups.append(m)
        return FinitePoset([self._ids[i] for i in indices], ups, check=False)

    def is_chain(self, indices):
        idx = list(indices)
        return all(self.comparable(a, b) for k, a in enumerate(idx) for b in idx[k + 1:])

    def is_antichain(self, indices):
        idx = list(indices)
        return all(not self.comparable(a, b) for k, a in enumerate(idx) for b in idx[k + 1:])

    def maximal_chains(self):
        """All maximal chains, each as an ascending list of indices."""
        if self.n == 0:
            return []
        chains = []
        stack = [[i] for i in reversed(self.minimal_elements())]
        while stack:
            path = stack.pop()
            cov = self._upper_covers[path[-1]]
            if not cov:
                chains.append(path)
                continue
            for j in reversed(list(bits(cov))):
                stack.append(path + [j])
        return chains

    @cached_property
    def height(self):
        """Number of covers in a longest chain (``-1`` for the empty poset)."""
        if self.n == 0:
            return -1
        longest = [0] * self.n
        for i in self.topological_order:
            for j in bits(self._upper_covers[i]):
                longest[j] = max(longest[j], longest[i] + 1)
        return max(longest)

    def dual(self):
        return FinitePoset(self._ids, self._down, check=False)

    def isomorphic_relabel(self, mapping):
        """Same order with ids renamed through ``mapping``."""
        return FinitePoset([mapping[e] for e in self._ids], self._up, check=False)

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        if set(self._ids) != set(other._ids):
            return False
        return all(
            self.leq(i, self.index(b)) == other.leq(other.index(a), other.index(b))
            for i, a in enumerate(self._ids)
            for b in self._ids
        )

    def __hash__(self):
        return hash(frozenset(self._ids))

    def __repr__(self):
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"


def build_from_covers(ids, cover_pairs):
    """Poset generated by the cover relation ``lo < hi`` for each pair."""
    ids = list(ids)
    if len(set(ids)) != len(ids):
        seen = set()
        dup = next(e for e in ids if e in seen or seen.add(e))
        raise DuplicateId(f"duplicate element id {dup!r}")
    _check_size(len(ids))
    index = {e: i for i, e in enumerate(ids)}
    above = [set() for _ in ids]
    graph = {i: set() for i in range(len(ids))}
    for lo, hi in cover_pairs:
        for e in (lo, hi):
            if e not in index:
                raise UnknownId(f"cover references unknown id {e!r}")
        a, b = index[lo], index[hi]
        above[a].add(b)
        graph[b].add(a)
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        cyc = [ids[i] for i in exc.args[1]]
        raise CycleDetected(f"cover relation has a cycle through {cyc}") from None
    up = [0] * len(ids)
    for i in reversed(order):
        m = 1 << i
        for j in above[i]:
            m |= up[j]
        up[i] = m
    return FinitePoset(ids, up, check=False)


def open_interval(p, a, b):
    """Induced subposet ``{c : a < c < b}``; ``a`` and ``b`` are indices."""
    if not p.lt(a, b):
        raise NotComparable(f"{p.ids[a]!r} is not strictly below {p.ids[b]!r}")
    mask = p.up(a) & p.down(b) & ~(1 << a) & ~(1 << b)
    return p.subposet(bits(mask))


def closed_interval(p, a, b):
    if not p.leq(a, b):
        raise NotComparable(f"{p.ids[a]!r} is not below {p.ids[b]!r}")
    return p.subposet(bits(p.up(a) & p.down(b)))


# chains and antichains


@dataclass(frozen=True)
class ChainStats:
    """Width (maximum antichain size), a chain partition realising it, height.

    Some authors define the width as one less than the largest antichain;
    that number is available as :attr:`width_minus_one`.
    """

    width: int
    chains: tuple
    height: int
    antichain: tuple

    @property
    def width_minus_one(self):
        return self.width - 1


def _max_matching(p):
    """Kuhn's augmenting paths on the strict order, lowest index first."""
    n = p.n
    succ = [list(bits(p.up(i) & ~(1 << i))) for i in range(n)]
    match_right = [-1] * n  # right j -> left i
    match_left = [-1] * n

    def augment(i, seen):
        for j in succ[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_right[j] == -1 or augment(match_right[j], seen):
                match_right[j] = i
                match_left[i] = j
                return True
        return False

    for i in range(n):
        augment(i, [False] * n)
    return succ, match_left, match_right


def chain_stats(p):
    """Dilworth data via a minimum chain cover (bipartite matching)."""
    n = p.n
    succ, match_left, match_right = _max_matching(p)
    chains = []
    for start in range(n):
        if match_right[start] != -1:
            continue
        chain = [start]
        while match_left[chain[-1]] != -1:
            chain.append(match_left[chain[-1]])
        chains.append(tuple(p.ids[i] for i in chain))

    # Koenig: alternating reachability from unmatched left vertices
    left_seen = [False] * n
    right_seen = [False] * n
    stack = [i for i in range(n) if match_left[i] == -1]
    for i in stack:
        left_seen[i] = True
    while stack:
        i = stack.pop()
        for j in succ[i]:
            if match_left[i] == j or right_seen[j]:
                continue
            right_seen[j] = True
            k = match_right[j]
            if k != -1 and not left_seen[k]:
                left_seen[k] = True
                stack.append(k)
    antichain = tuple(p.ids[i] for i in range(n) if left_seen[i] and not right_seen[i])
    return ChainStats(
        width=len(chains),
        chains=tuple(chains),
        height=max(p.height, 0) if n else 0,
        antichain=antichain,
    )


# lattices


class FiniteLattice:
    """A finite lattice with join/meet tables.

    Use :func:`lattice_structure` to build one from a poset. ``labels``
    optionally maps element indices to :class:`~lcmlattice.monomial.Monomial`.
    """

    def __init__(self, poset, join, meet, labels=None):
        self.poset = poset
        self.join_table = join
        self.meet_table = meet
        n = poset.n
        self.bottom = poset.minimal_elements()[0]
        self.top = poset.maximal_elements()[0]
        self.atoms = tuple(bits(poset.upper_covers(self.bottom))) if n > 1 else ()
        self.coatoms = tuple(bits(poset.lower_covers(self.top))) if n > 1 else ()
        self.labels = dict(labels) if labels else None
        if self.labels is not None:
            self._check_labels()

    def _check_labels(self):
        p = self.poset
        if set(self.labels) != set(range(p.n)):
            raise LabelMismatch("labels must cover every element")
        for i in range(p.n):
            for j in range(p.n):
                if p.leq(i, j) != self.labels[i].divides(self.labels[j]):
                    raise LabelMismatch(
                        f"order and divisibility disagree on {p.ids[i]!r}, {p.ids[j]!r}"
                    )

    def __len__(self):
        return self.poset.n

    @property
    def n(self):
        return self.poset.n

    @property
    def ids(self):
        return self.poset.ids

    def index(self, element):
        return self.poset.index(element)

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def join(self, i, j):
        return int(self.join_table[i, j])

    def meet(self, i, j):
        return int(self.meet_table[i, j])

    def join_all(self, indices):
        acc = self.bottom
        for i in indices:
            acc = self.join(acc, i)
        return acc

    def meet_all(self, indices):
        acc = self.top
        for i in indices:
            acc = self.meet(acc, i)
        return acc

    def label(self, i):
        return None if self.labels is None else self.labels[i]

    def proper_part(self):
        """Indices other than bottom and top, in index order."""
        return [i for i in range(self.n) if i not in (self.bottom, self.top)]

    @cached_property
    def atom_mask(self):
        return mask_of(self.atoms)

    def atoms_below(self, i):
        """Mask (over element indices) of the atoms below ``i``."""
        return self.poset.down(i) & self.atom_mask

    def support(self, i):
        """Positions (in :attr:`atoms`) of the atoms below ``i``."""
        below = self.atoms_below(i)
        return frozenset(k for k, a in enumerate(self.atoms) if (below >> a) & 1)

    @cached_property
    def is_atomic(self):
        if self.n == 1:
            return True
        for i in range(self.n):
            if self.join_all(bits(self.atoms_below(i))) != i:
                return False
        return True

    @cached_property
    def is_graded(self):
        p = self.poset
        longest = {self.bottom: 0}
        shortest = {self.bottom: 0}
        for i in p.topological_order:
            if i not in longest:
                continue
            for j in bits(p.upper_covers(i)):
                longest[j] = max(longest.get(j, -1), longest[i] + 1)
                shortest[j] = min(shortest.get(j, 1 << 30), shortest[i] + 1)
        return longest[self.top] == shortest[self.top]

    def rank(self, i):
        """Length of a longest chain from bottom to ``i``."""
        return closed_interval(self.poset, self.bottom, i).height

    @property
    def height(self):
        return self.poset.height

    @cached_property
    def meet_irreducible_indices(self):
        """Proper elements with exactly one upper cover."""
        return tuple(
            i for i in self.proper_part() if popcount(self.poset.upper_covers(i)) == 1
        )

    def with_labels(self, labels):
        return FiniteLattice(self.poset, self.join_table, self.meet_table, labels)

    def __repr__(self):
        return f"FiniteLattice({self.n} elements, {len(self.atoms)} atoms)"


def lattice_structure(p, labels=None):
    """Compute join and meet tables, or raise :class:`NotALattice`."""
    n = p.n
    if n == 0:
        raise NotALattice("the empty poset is not a lattice")
    order = p.topological_order
    rank = [0] * n
    for r, i in enumerate(order):
        rank[i] = r
    up_t = [mask_of(rank[j] for j in bits(p.up(i))) for i in range(n)]
    down_t = [mask_of(rank[j] for j in bits(p.down(i))) for i in range(n)]

    join = np.empty((n, n), dtype=np.int32)
    meet = np.empty((n, n), dtype=np.int32)
    ids = p.ids
    for a in range(n):
        ua, da = up_t[a], down_t[a]
        for b in range(a, n):
            common = ua & up_t[b]
            if not common:
                raise NotALattice(f"{ids[a]!r} and {ids[b]!r} have no upper bound", (ids[a], ids[b]))
            c = order[(common & -common).bit_length() - 1]
            if common & ~up_t[c]:
                raise NotALattice(
                    f"{ids[a]!r} and {ids[b]!r} have no least upper bound", (ids[a], ids[b])
                )
            join[a, b] = join[b, a] = c
            common = da & down_t[b]
            if not common:
                raise NotALattice(f"{ids[a]!r} and {ids[b]!r} have no lower bound", (ids[a], ids[b]))
            c = order[common.bit_length() - 1]
            if common & ~down_t[c]:
                raise NotALattice(
                    f"{ids[a]!r} and {ids[b]!r} have no greatest lower bound", (ids[a], ids[b])
                )
            meet[a, b] = meet[b, a] = c
    return FiniteLattice(p, join, meet, labels)


def meet_irreducibles(lat):
    """Induced subposet of meet-irreducible elements of the proper part."""
    return lat.poset.subposet(lat.meet_irreducible_indices)


def order_complex(p):
    """Simplicial complex of chains of ``p``; vertices are the element ids."""
    from .simplicial import SimplicialComplex

    masks = []
    for chain in p.maximal_chains():
        m = 0
        for i in chain:
            m |= 1 << i
        masks.append(m)
    # maximal chains already form an antichain of sets
    return SimplicialComplex.from_masks(p.ids, masks or [0], assume_maximal=True)
