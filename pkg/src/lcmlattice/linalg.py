"""Exact matrix rank over the rationals and over GF(p).

Boundary matrices are sparse with entries in {-1, 0, 1}, so the main
engine works column by column on ``{row: value}`` dicts. Over the
rationals it stays fraction free: each elimination step is an integer
combination followed by removal of the column's content (gcd), which
keeps entries small. :func:`bareiss_rank` is an independent dense
implementation used to cross-check it.
"""

from math import gcd


def _content_free(col):
    g = 0
    for v in col.values():
        g = gcd(g, v)
        if g == 1:
            return col
    if g > 1:
        return {r: v // g for r, v in col.items()}
    return col


def sparse_rank(columns, p=0):
    """Rank of the matrix whose columns are ``{row: value}`` mappings.

    ``p == 0`` computes over the rationals, otherwise over GF(p).
    """
    pivots = {}
    rank = 0
    for col in columns:
        if p:
            v = {r: x % p for r, x in col.items() if x % p}
        else:
            v = {r: x for r, x in col.items() if x}
        while v:
            r = max(v)
            w = pivots.get(r)
            if w is None:
                if p:
                    inv = pow(v[r], -1, p)
                    v = {k: (x * inv) % p for k, x in v.items()}
                else:
                    v = _content_free(v)
                pivots[r] = v
                rank += 1
                break
            a = v[r]
            if p:
                # pivot columns are normalised to 1 at their pivot row
                for k, x in w.items():
                    y = (v.get(k, 0) - a * x) % p
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
            else:
                b = w[r]
                g = gcd(a, b)
                fa, fb = a // g, b // g
                nv = {}
                for k, x in v.items():
                    nv[k] = fb * x
                for k, x in w.items():
                    y = nv.get(k, 0) - fa * x
                    if y:
                        nv[k] = y
                    else:
                        nv.pop(k, None)
                v = _content_free(nv) if nv else nv
    return rank


def bareiss_rank(matrix):
    """Rank of a dense integer matrix (list of rows) by Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    prev = 1
    rank = 0
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pr = a[row]
        for i in range(row + 1, m):
            ri = a[i]
            f = ri[col]
            for j in range(col + 1, n):
                ri[j] = (pr[col] * ri[j] - f * pr[j]) // prev
            ri[col] = 0
        prev = pr[col]
        row += 1
        rank += 1
    return rank


def modular_rank(matrix, p):
    """Rank of a dense integer matrix over GF(p)."""
    a = [[x % p for x in row] for row in matrix]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        pr = [(x * inv) % p for x in a[rank]]
        a[rank] = pr
        for i in range(m):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
        rank += 1
        if rank == m:
            break
    return rank
