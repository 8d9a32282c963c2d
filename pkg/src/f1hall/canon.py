"""Canonical isomorphism keys for finite modules.

An indecomposable module of dimension d gets the key ``d|g1:r1|g2:r2|...``
where each ``r`` is the comma-separated action row of a generator under the
labeling that minimizes the tuple of rows.  The minimizing labeling is found
by colour refinement followed by individualization/backtracking over the
remaining cells.  Decomposable modules join their sorted component keys with
``⊕``; the zero module is ``0|``.
"""
from __future__ import annotations

import itertools

from .errors import ParseError, SpecError
from .module import AModule, components, direct_sum_all, elements_mask, restrict
from .semigroup import SemigroupSpec

SUM = "⊕"
ZERO_KEY = "0|"

_component_cache: dict = {}


def _rank(values):
    order = {v: i for i, v in enumerate(sorted(set(values[1:])))}
    return [-1] + [order[v] for v in values[1:]]


def _refine(rows, pre, col, n):
    ncolors = len(set(col[1:]))
    while True:
        sig = [None]
        for x in range(1, n + 1):
            out = tuple(col[r[x]] if r[x] else -1 for r in rows)
            inc = tuple(tuple(sorted(col[p] for p in pg[x])) for pg in pre)
            sig.append((col[x], out, inc))
        col = _rank(sig)
        k = len(set(col[1:]))
        if k == ncolors:
            return col
        ncolors = k


def _canon_connected(rows, n):
    """Minimal row encoding of a connected module, with the labeling that attains it."""
    pre = []
    for r in rows:
        p = [[] for _ in range(n + 1)]
        for x in range(1, n + 1):
            if r[x]:
                p[r[x]].append(x)
        pre.append(p)
    leafish = [all(not pg[x] for pg in pre) for x in range(n + 1)]
    init = [None] + [
        tuple((r[x] == 0, r[x] == x, len(pg[x])) for r, pg in zip(rows, pre))
        for x in range(1, n + 1)
    ]
    best = [None, None]

    def leaf(col):
        label = [0] + [c + 1 for c in col[1:]]
        inv = [0] * (n + 1)
        for x in range(1, n + 1):
            inv[label[x]] = x
        enc = tuple(tuple(label[r[inv[i]]] for i in range(1, n + 1)) for r in rows)
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, tuple(label)

    def search(col):
        cells: dict[int, list[int]] = {}
        for x in range(1, n + 1):
            cells.setdefault(col[x], []).append(x)
        open_cells = [c for c, mem in cells.items() if len(mem) > 1]
        if not open_cells:
            leaf(col)
            return
        target = min(open_cells)
        twins = set()
        for v in cells[target]:
            if leafish[v]:
                # swapping two in-degree-0 vertices with equal images is an automorphism
                image = tuple(r[v] for r in rows)
                if image in twins:
                    continue
                twins.add(image)
            new = [-1] + [2 * c + (1 if c == target and x != v else 0) for x, c in enumerate(col) if x]
            search(_refine(rows, pre, new, n))

    search(_refine(rows, pre, _rank(init), n))
    return best[0], best[1]


def _component_key(spec: SemigroupSpec, enc, n) -> str:
    parts = [str(n)] + [f"{g}:{','.join(map(str, r))}" for g, r in zip(spec.generators, enc)]
    if len(parts) == 1:
        return f"{n}|"
    return "|".join(parts)


def _canon_component(m: AModule):
    cache_key = (m.spec.fingerprint, m.rows)
    hit = _component_cache.get(cache_key)
    if hit is None:
        enc, label = _canon_connected(m.rows, m.dim)
        hit = (_component_key(m.spec, enc, m.dim), label)
        _component_cache[cache_key] = hit
    return hit


def canonical_form(m: AModule):
    """Canonical key and a relabeling ``old element -> label in module_from_key(key)``."""
    if m.dim == 0:
        return ZERO_KEY, (0,)
    comps = components(m)
    if len(comps) == 1:
        return _canon_component(m)
    parts = []
    for c in comps:
        key, label = _canon_component(restrict(m, elements_mask(c)))
        parts.append((key, c, label))
    parts.sort(key=lambda p: p[0])
    relabel = [0] * (m.dim + 1)
    offset = 0
    for key, c, label in parts:
        for i, x in enumerate(c, 1):
            relabel[x] = label[i] + offset
        offset += len(c)
    return SUM.join(p[0] for p in parts), tuple(relabel)


def key_of(m: AModule) -> str:
    return canonical_form(m)[0]


def is_isomorphic(m: AModule, n: AModule) -> bool:
    if m.spec != n.spec:
        raise SpecError("modules over different semigroups")
    return m.dim == n.dim and key_of(m) == key_of(n)


def relabel_module(m: AModule, relabel) -> AModule:
    """Apply a bijection ``old -> new`` (fixing 0) to the element labels."""
    inv = [0] * (m.dim + 1)
    for x in range(1, m.dim + 1):
        inv[relabel[x]] = x
    rows = tuple((0, *(relabel[r[inv[i]]] for i in range(1, m.dim + 1))) for r in m.rows)
    return AModule(m.spec, m.dim, rows)


# -- reading keys back --------------------------------------------------

def key_components(key: str) -> list[str]:
    if key == ZERO_KEY:
        return []
    return key.split(SUM)


def key_dim(key: str) -> int:
    return sum(int(c.split("|", 1)[0]) for c in key_components(key))


def key_order(key: str):
    """Sort key used for every key-ordered listing: by dimension, then text."""
    return (key_dim(key), key)


def is_indecomposable_key(key: str) -> bool:
    return len(key_components(key)) == 1


def join_keys(keys) -> str:
    comps = sorted(c for k in keys for c in key_components(k))
    return SUM.join(comps) if comps else ZERO_KEY


def _component_from_key(spec: SemigroupSpec, text: str) -> AModule:
    head, *rest = text.split("|")
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"bad key component {text!r}", text, 0) from None
    rest = [r for r in rest if r]
    if len(rest) != spec.ngens:
        raise ParseError(f"key component {text!r} does not match generators of {spec.text}", text)
    rows = []
    for part, g in zip(rest, spec.generators):
        name, _, body = part.partition(":")
        if name != g:
            raise ParseError(f"expected generator {g!r} in key, found {name!r}", text)
        vals = tuple(int(v) for v in body.split(",")) if body else ()
        if len(vals) != n:
            raise ParseError(f"row for {g} in key has wrong length", text)
        rows.append((0, *vals))
    if not rows:
        rows = [(0,)] * 0
    return AModule(spec, n, tuple(rows))


def module_from_key(spec: SemigroupSpec, key: str) -> AModule:
    """The canonical representative of a key (components in key order)."""
    return direct_sum_all(spec, (_component_from_key(spec, c) for c in key_components(key)))


def brute_force_isomorphic(m: AModule, n: AModule) -> bool:
    """Test oracle: search all bijections for an equivariant one."""
    if m.dim != n.dim or m.spec != n.spec:
        return False
    d = m.dim
    for perm in itertools.permutations(range(1, d + 1)):
        f = (0, *perm)
        if all(f[rm[x]] == rn[f[x]] for rm, rn in zip(m.rows, n.rows) for x in range(1, d + 1)):
            return True
    return False
