"""Exact linear algebra over Q and Z: rank and Smith normal form."""
from __future__ import annotations

from fractions import Fraction


def rank(rows) -> int:
    """Rank over Q of a matrix given as a list of sparse rows ``{column: value}``.

    Elimination picks the sparsest available pivot row per column, which keeps
    fill-in small on the nearly triangular matrices that PBW checks produce.
    """
    pending = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    pending = [r for r in pending if r]
    pivots: dict = {}
    for r in pending:
        r = dict(r)
        while r:
            col = min(r)
            if col not in pivots:
                pivots[col] = r
                break
            p = pivots[col]
            factor = r[col] / p[col]
            for c, v in p.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return len(pivots)


def smith_normal_form(matrix):
    """Invariant factors of an integer matrix, with the column transform.

    Returns ``(diag, V)`` where ``U A V = D`` for some unimodular ``U``,
    ``diag`` lists the diagonal entries of ``D`` (length ``min(rows, cols)``,
    each dividing the next, zeros last) and ``V`` is the unimodular column
    transform as a list of rows.
    """
    a = [list(map(int, r)) for r in matrix]
    nr = len(a)
    nc = len(a[0]) if a else 0
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                entries = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, i, j = min(entries)
                if i != t:
                    a[t], a[i] = a[i], a[t]
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    diag = [a[i][i] if i < nr and i < nc else 0 for i in range(min(nr, nc))]
    return diag, v
