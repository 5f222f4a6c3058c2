"""Bitmask helpers. Sets of small integers are stored as Python ints."""


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def minimal_sets(masks):
    """Inclusion-minimal members of an iterable of masks, sorted."""
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    out = []
    for m in uniq:
        if not any(o & m == o for o in out):
            out.append(m)
    return sorted(out)


def maximal_sets(masks):
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    out = []
    for m in uniq:
        if not any(o & m == m for o in out):
            out.append(m)
    return sorted(out)


def minimal_transversals(edges):
    """Minimal hitting sets of a hypergraph given by edge masks.

    Berge's incremental algorithm; exponential in the worst case, fine for
    a few dozen vertices. An empty edge has no transversal, so the result
    is then ``[]``.
    """
    trans = [0]
    for e in minimal_sets(edges):
        new = set()
        for t in trans:
            if t & e:
                new.add(t)
            else:
                for v in bits(e):
                    new.add(t | (1 << v))
        trans = minimal_sets(new)
        if not trans:
            break
    return trans
