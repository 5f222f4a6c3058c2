"""Enumerate finite atomic lattices by their support families.

An atomic lattice on atoms ``1..r`` is the same thing as a family of
subsets of ``[r]`` closed under intersection and containing the empty
set, every singleton and ``[r]``: the family of "atoms below b". So the
exhaustive census runs over the optional sets (sizes ``2..r-1``) and
keeps the intersection-closed choices, one per orbit of the symmetric
group on atoms.
"""

import random
from itertools import combinations, permutations

from . import config
from ._bits import bits, popcount
from .construct import lattice_from_supports
from .errors import ResourceLimit


def _permute(mask, perm):
    out = 0
    for i in bits(mask):
        out |= 1 << perm[i]
    return out


def canonical_family(family, r):
    """Lexicographically least sorted tuple over all atom relabelings."""
    fam = sorted(family)
    best = None
    for perm in permutations(range(r)):
        cand = tuple(sorted(_permute(m, perm) for m in fam))
        if best is None or cand < best:
            best = cand
    return best


def intersection_closure(sets):
    fam = set(sets)
    frontier = list(fam)
    while frontier:
        new = []
        for a in frontier:
            for b in list(fam):
                c = a & b
                if c not in fam:
                    fam.add(c)
                    new.append(c)
        frontier = new
    return fam


def _base(r):
    return {0, (1 << r) - 1} | {1 << i for i in range(r)}


def _is_closed(fam):
    return all(a & b in fam for a in fam for b in fam)


def atomic_families(r, max_elements=None):
    """Support families of all atomic lattices on ``r`` atoms, up to isomorphism.

    Exhaustive; sensible for ``r <= 4`` (the ``r = 5`` loop has 2^25 cases).
    """
    if max_elements is None:
        max_elements = config.current().max_elements
    if r < 1:
        raise ValueError("at least one atom is required")
    if r > 4:
        raise ResourceLimit("exhaustive enumeration is limited to r <= 4; use sample_families")
    base = _base(r)
    optional = [m for m in range(1 << r) if 2 <= popcount(m) <= r - 1]
    seen = set()
    out = []
    for k in range(len(optional) + 1):
        for chosen in combinations(optional, k):
            fam = base | set(chosen)
            if len(fam) > max_elements or not _is_closed(fam):
                continue
            key = canonical_family(fam, r)
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
    return out


def enumerate_atomic_lattices(r, max_elements=None):
    """Yield every atomic lattice on ``r`` atoms once up to isomorphism."""
    for fam in atomic_families(r, max_elements):
        yield lattice_from_supports(fam, r)


def sample_families(r, count, seed=0, max_elements=None, density=None):
    """Random atomic lattices on ``r`` atoms from closures of random subsets.

    Draws random subsets of sizes ``2..r-1``, closes them under
    intersection together with the compulsory sets and deduplicates up to
    atom relabeling. May return fewer than ``count`` families if the same
    ones keep coming up.
    """
    if max_elements is None:
        max_elements = config.current().max_elements
    rng = random.Random(seed)
    base = _base(r)
    optional = [m for m in range(1 << r) if 2 <= popcount(m) <= r - 1]
    seen = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        p = density if density is not None else rng.uniform(0.05, 0.5)
        chosen = [m for m in optional if rng.random() < p]
        fam = intersection_closure(base | set(chosen))
        if len(fam) > max_elements:
            continue
        key = canonical_family(fam, r) if r <= 6 else tuple(sorted(fam))
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    return out


def sample_atomic_lattices(r, count, seed=0, max_elements=None):
    for fam in sample_families(r, count, seed, max_elements):
        yield lattice_from_supports(fam, r)
