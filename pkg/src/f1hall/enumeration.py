"""Enumeration of isomorphism classes of modules and of extensions between them."""
from __future__ import annotations

from .canon import ZERO_KEY, join_keys, key_of, key_order, module_from_key
from .errors import BoundError, SpecError
from .module import AModule, components, is_nilpotent
from .semigroup import SemigroupSpec

MAX_DIM = 8
FILTERS = ("all", "indecomposable", "nilpotent", "nilpotent-indecomposable")

_indecomposable_cache: dict = {}
_class_cache: dict = {}


def _partial_word(rows, word, x):
    for g in reversed(word):
        if x == 0:
            return 0
        x = rows[g][x]
        if x < 0:
            return None
    return x


def _relations_ok(relations, rows, dim):
    for lhs, rhs in relations:
        for x in range(1, dim + 1):
            a = _partial_word(rows, lhs, x)
            if a is None:
                continue
            b = 0 if rhs is None else _partial_word(rows, rhs, x)
            if b is not None and a != b:
                return False
    return True


def raw_modules(spec: SemigroupSpec, dim: int, domains=None):
    """Yield every labeled module of the given dimension as a rows tuple.

    ``domains[g][x]`` optionally restricts the candidate values of ``g . x``.
    Partial assignments are pruned against the spec relations as soon as a
    relation becomes decidable at some element.
    """
    k = spec.ngens
    rows = [[0] + [-1] * dim for _ in range(k)]
    positions = [(g, x) for g in range(k) for x in range(1, dim + 1)]
    if domains is None:
        full = list(range(dim + 1))
        domains = [[None] + [full] * dim for _ in range(k)]
    rels = spec.relations

    def rec(i):
        if i == len(positions):
            yield tuple(tuple(r) for r in rows)
            return
        g, x = positions[i]
        for v in domains[g][x]:
            rows[g][x] = v
            if not rels or _relations_ok(rels, rows, dim):
                yield from rec(i + 1)
        rows[g][x] = -1

    yield from rec(0)


def _sorted_invariants(rows, dim):
    """True when a cheap per-element invariant is non-decreasing in the labels.

    Every isomorphism class has a labeling with this property, so the filter
    only removes redundant labelings.
    """
    indeg = [[0] * (dim + 1) for _ in rows]
    for gi, r in enumerate(rows):
        for x in range(1, dim + 1):
            indeg[gi][r[x]] += 1
    prev = None
    for x in range(1, dim + 1):
        inv = tuple((r[x] == 0, r[x] == x, indeg[gi][x]) for gi, r in enumerate(rows))
        if prev is not None and inv < prev:
            return False
        prev = inv
    return True


def indecomposable_classes(spec: SemigroupSpec, dim: int) -> list[str]:
    """Keys of indecomposable classes of one dimension, in key order."""
    _check_bound(spec, dim)
    cache_key = (spec.fingerprint, dim)
    if cache_key in _indecomposable_cache:
        return _indecomposable_cache[cache_key]
    keys = set()
    if dim > 0:
        for rows in raw_modules(spec, dim):
            if not _sorted_invariants(rows, dim):
                continue
            m = AModule(spec, dim, rows)
            if len(components(m)) == 1:
                keys.add(key_of(m))
    out = sorted(keys, key=key_order)
    _indecomposable_cache[cache_key] = out
    return out


def _check_bound(spec, dim):
    if dim < 0:
        raise SpecError("dimension must be non-negative")
    if dim > MAX_DIM:
        raise BoundError(f"dimension {dim} exceeds the enumeration bound {MAX_DIM}")


def _nilpotent_key(spec, key):
    return is_nilpotent(module_from_key(spec, key))


def enumerate_modules(spec: SemigroupSpec, dim: int, filter: str = "all") -> list[str]:
    """One key per isomorphism class of the given dimension, in key order.

    Decomposable classes are assembled as multisets of indecomposable classes
    (Krull-Schmidt), so only indecomposables are enumerated by brute force.
    """
    if filter not in FILTERS:
        raise SpecError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    _check_bound(spec, dim)
    cache_key = (spec.fingerprint, dim, filter)
    if cache_key in _class_cache:
        return _class_cache[cache_key]
    nil = filter.startswith("nilpotent")
    if filter.endswith("indecomposable"):
        keys = [k for k in indecomposable_classes(spec, dim) if not nil or _nilpotent_key(spec, k)]
    else:
        pool = []
        for d in range(1, dim + 1):
            for k in indecomposable_classes(spec, d):
                if not nil or _nilpotent_key(spec, k):
                    pool.append((d, k))
        found = set()

        def rec(start, remaining, chosen):
            if remaining == 0:
                found.add(join_keys(chosen))
                return
            for i in range(start, len(pool)):
                d, k = pool[i]
                if d <= remaining:
                    chosen.append(k)
                    rec(i, remaining - d, chosen)
                    chosen.pop()

        rec(0, dim, [])
        keys = sorted(found, key=key_order)
    _class_cache[cache_key] = keys
    return keys


def classes_up_to(spec: SemigroupSpec, max_dim: int, filter: str = "all") -> list[str]:
    out = []
    for d in range(max_dim + 1):
        if d == 0:
            out.append(ZERO_KEY)
        else:
            out.extend(enumerate_modules(spec, d, filter))
    return out


def enumerate_extensions(spec: SemigroupSpec, m: AModule, n: AModule):
    """Modules R containing a copy of N (elements 1..dim N) with R/N isomorphic to M.

    The elements of M keep their nonzero images (shifted past N); every image
    that M sends to the basepoint may instead land anywhere in N.  Results are
    deduplicated by key and returned in key order as ``(R, mask of N)``.
    """
    if m.spec != spec or n.spec != spec:
        raise SpecError("modules must be over the given spec")
    dn, dm = n.dim, m.dim
    dim = dn + dm
    into_n = list(range(dn + 1))
    domains = []
    for g in range(spec.ngens):
        dom = [None]
        for x in range(1, dn + 1):
            dom.append([n.rows[g][x]])
        for x in range(1, dm + 1):
            y = m.rows[g][x]
            dom.append([y + dn] if y else into_n)
        domains.append(dom)
    found = {}
    for rows in raw_modules(spec, dim, domains):
        r = AModule(spec, dim, rows)
        key = key_of(r)
        if key not in found:
            found[key] = r
    mask = (1 << dn) - 1
    return [(found[k], mask) for k in sorted(found, key=key_order)]
