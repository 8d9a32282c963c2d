"""Cartesian, smash and tensor products, the Rep rings, and group-with-zero modules.

Products are built on explicit pair carriers.  For ``M x N`` the nonzero
elements are all pairs except ``(*, *)``; for ``M ^ N`` only pairs with both
coordinates nonzero survive.  The tensor product is the smash product modulo
the equivalence generated by ``(a.m, n) ~ (m, a.n)``, including the instances
with ``a = 0`` that send every pair with a basepoint coordinate to ``(*, *)``;
``a`` acts on a class through one coordinate, as for any tensor product over a
commutative ring.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .canon import ZERO_KEY, is_indecomposable_key, join_keys, key_components, key_dim, key_of, key_order, module_from_key
from .enumeration import classes_up_to, enumerate_extensions, indecomposable_classes
from .errors import ModuleError, SpecError
from .groups import GroupTable, SubgroupClass, conjugacy_classes_of_subgroups, find_subgroup_class, left_cosets
from .hall import hall_number, product_basis
from .module import AModule, _same_spec, decompose, direct_sum, is_closed, submodules
from .report import Report
from .semigroup import GROUP, SemigroupSpec, build_group_with_zero

__all__ = [
    "cartesian", "smash", "tensor", "RepElement", "rep_product",
    "conjugacy_classes_of_subgroups", "irreducibles_for_group_with_zero",
    "BurnsideTable", "burnside_table", "burnside_oracle", "verify_semisimplicity",
]


# -- products of modules -------------------------------------------------------

def _pair_module(m: AModule, n: AModule, pairs) -> AModule:
    index = {p: i + 1 for i, p in enumerate(pairs)}
    rows = []
    for rm, rn in zip(m.rows, n.rows):
        row = [0]
        for a, b in pairs:
            row.append(index.get((rm[a], rn[b]), 0))
        rows.append(tuple(row))
    return AModule(m.spec, len(pairs), tuple(rows))


def cartesian(m: AModule, n: AModule) -> AModule:
    """Pointed product M x N with the diagonal action; (*, *) is the basepoint."""
    _same_spec(m, n)
    pairs = [(a, b) for a in range(m.dim + 1) for b in range(n.dim + 1) if a or b]
    return _pair_module(m, n, pairs)


def smash(m: AModule, n: AModule) -> AModule:
    """M ^ N: pairs of nonzero elements, a pair dies once either side does."""
    _same_spec(m, n)
    pairs = [(a, b) for a in m.elements for b in n.elements]
    return _pair_module(m, n, pairs)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def tensor(m: AModule, n: AModule) -> AModule:
    """M (x) N over a commutative spec, by union-find closure on all pairs.

    The generating instances are taken for every generator and every pair,
    basepoint coordinates included, together with ``(*, y) ~ (*, *)`` and
    ``(x, *) ~ (*, *)`` from the zero element.  A generator acts on a class
    through the first coordinate, ``a.[m, n] = [a.m, n]``, which equals
    ``[m, a.n]`` by the relation; the diagonal action of the smash product
    would make ``a`` act as ``a^2`` and break associativity.  Commutativity
    makes the relation compatible with this action, and the saturation loop
    below only guards that.
    """
    _same_spec(m, n)
    if not m.spec.is_commutative():
        raise SpecError(f"tensor product needs a commutative spec, {m.spec.text} is not")
    pairs = [(a, b) for a in range(m.dim + 1) for b in range(n.dim + 1)]
    uf = _UnionFind(pairs)
    for a in range(m.dim + 1):
        uf.union((a, 0), (0, 0))
    for b in range(n.dim + 1):
        uf.union((0, b), (0, 0))
    for rm, rn in zip(m.rows, n.rows):
        for a, b in pairs:
            uf.union((rm[a], b), (a, rn[b]))
    changed = True
    while changed:
        changed = False
        for rm, rn in zip(m.rows, n.rows):
            image = {}
            for a, b in pairs:
                r = uf.find((a, b))
                target = (rm[a], b)
                if r in image:
                    changed |= uf.union(image[r], target)
                else:
                    image[r] = target
    zero = uf.find((0, 0))
    reps = sorted({uf.find(p) for p in pairs} - {zero})
    index = {r: i + 1 for i, r in enumerate(reps)}
    index[zero] = 0
    rows = []
    for rm, rn in zip(m.rows, n.rows):
        row = [0] * (len(reps) + 1)
        for r in reps:
            row[index[r]] = index[uf.find((rm[r[0]], r[1]))]
        rows.append(tuple(row))
    return AModule(m.spec, len(reps), tuple(rows))


PRODUCTS = {"smash": smash, "tensor": tensor, "cartesian": cartesian}


# -- Rep rings ---------------------------------------------------------------

class RepElement:
    """Integer combination of indecomposable classes; modules enter through their decomposition."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: SemigroupSpec, coeffs=None):
        self.spec = spec
        out = {}
        for k, v in (coeffs or {}).items():
            if not is_indecomposable_key(k):
                raise ModuleError(f"Rep basis keys must be indecomposable, got {k}")
            if v:
                out[k] = int(v)
        self.coeffs = out

    @classmethod
    def of(cls, m: AModule) -> "RepElement":
        return cls.of_key(m.spec, key_of(m))

    @classmethod
    def of_key(cls, spec, key: str) -> "RepElement":
        return cls(spec, Counter(key_components(key)))

    def __add__(self, other):
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return RepElement(self.spec, out)

    def __sub__(self, other):
        out = Counter(self.coeffs)
        out.subtract(other.coeffs)
        return RepElement(self.spec, out)

    def __mul__(self, k):
        return RepElement(self.spec, {key: v * k for key, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RepElement) and self.spec == other.spec and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key):
        return self.coeffs.get(key, 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: key_order(kv[0]))

    def dim(self) -> int:
        return sum(key_dim(k) * v for k, v in self.coeffs.items())

    def __repr__(self):
        terms = " + ".join(f"{v}*[{k}]" for k, v in self.items())
        return f"RepElement({terms or '0'})"


def product_key(spec: SemigroupSpec, kind: str, k1: str, k2: str) -> str:
    if kind not in PRODUCTS:
        raise SpecError(f"unknown product {kind!r}")
    return key_of(PRODUCTS[kind](module_from_key(spec, k1), module_from_key(spec, k2)))


def rep_product(x: RepElement, y: RepElement, kind: str = "smash") -> RepElement:
    """Bilinear product of Rep elements; each basis product is decomposed."""
    if x.spec != y.spec:
        raise SpecError("Rep elements over different semigroups")
    if kind not in ("smash", "tensor"):
        raise SpecError("Rep products are 'smash' or 'tensor'")
    if kind == "tensor" and not x.spec.is_commutative():
        raise SpecError(f"tensor product needs a commutative spec, {x.spec.text} is not")
    out = Counter()
    for k1, u in x.items():
        for k2, w in y.items():
            for c in key_components(product_key(x.spec, kind, k1, k2)):
                if c != ZERO_KEY:
                    out[c] += u * w
    return RepElement(x.spec, out)


# -- groups with zero -----------------------------------------------------------

def _group_spec(g: GroupTable) -> SemigroupSpec:
    return build_group_with_zero(g)


def coset_module(spec: SemigroupSpec, h) -> AModule:
    """G/H u {*} with G acting by left multiplication, cosets ordered by smallest element."""
    g = spec.group
    cosets = left_cosets(g, h)
    where = {x: i + 1 for i, c in enumerate(cosets) for x in c}
    rows = []
    for e in spec.gen_elements:
        a = e - 1
        rows.append((0,) + tuple(where[g.mul(a, min(c))] for c in cosets))
    return AModule(spec, len(cosets), tuple(rows))


def irreducibles_for_group_with_zero(g: GroupTable, spec: SemigroupSpec | None = None) -> list[AModule]:
    """One transitive coset module per conjugacy class of subgroups, in class order."""
    spec = spec or _group_spec(g)
    if spec.kind != GROUP:
        raise SpecError("coset modules need a group-with-zero spec")
    return [coset_module(spec, c.representative) for c in conjugacy_classes_of_subgroups(g)]


@dataclass
class BurnsideTable:
    group: str
    labels: list
    dims: list
    cells: dict  # (i, j) -> tuple of multiplicities over the labels

    def row(self, i: int) -> list:
        return [self.cells[(i, j)] for j in range(len(self.labels))]

    def to_rows(self) -> list:
        """Printable table: one row per label, each cell as ``a[Hi] + b[Hj]``."""
        out = []
        for i, li in enumerate(self.labels):
            cells = []
            for j in range(len(self.labels)):
                vec = self.cells[(i, j)]
                terms = [f"{c}[{self.labels[k]}]" if c != 1 else f"[{self.labels[k]}]" for k, c in enumerate(vec) if c]
                cells.append(" + ".join(terms) or "0")
            out.append([li] + cells)
        return out


def burnside_table(g: GroupTable) -> BurnsideTable:
    """Smash products of the coset modules, decomposed back into the coset basis."""
    spec = _group_spec(g)
    classes = conjugacy_classes_of_subgroups(g)
    irr = irreducibles_for_group_with_zero(g, spec)
    keys = [key_of(m) for m in irr]
    position = {k: i for i, k in enumerate(keys)}
    cells = {}
    for i, mi in enumerate(irr):
        for j, mj in enumerate(irr):
            vec = [0] * len(irr)
            for c in key_components(key_of(smash(mi, mj))):
                if c not in position:
                    raise ModuleError(f"smash product component {c} is not a coset module")
                vec[position[c]] += 1
            cells[(i, j)] = tuple(vec)
    return BurnsideTable(g.label, [c.label for c in classes], [m.dim for m in irr], cells)


def burnside_oracle(g: GroupTable) -> dict:
    """Orbit counting on pairs of cosets, with stabilizers located up to conjugacy.

    Works with the group table alone: no modules, no canonical keys.
    """
    classes: list[SubgroupClass] = conjugacy_classes_of_subgroups(g)
    cosets = [left_cosets(g, c.representative) for c in classes]
    cells = {}
    for i, ci in enumerate(cosets):
        for j, cj in enumerate(cosets):
            vec = [0] * len(classes)
            seen = set()
            for p in range(len(ci)):
                for q in range(len(cj)):
                    if (p, q) in seen:
                        continue
                    x, y = min(ci[p]), min(cj[q])
                    orbit = set()
                    stab = []
                    for a in range(g.order):
                        ax, ay = g.mul(a, x), g.mul(a, y)
                        pp = next(k for k, c in enumerate(ci) if ax in c)
                        qq = next(k for k, c in enumerate(cj) if ay in c)
                        orbit.add((pp, qq))
                        if (pp, qq) == (p, q):
                            stab.append(a)
                    seen |= orbit
                    vec[find_subgroup_class(g, classes, stab)] += 1
            cells[(i, j)] = tuple(vec)
    return cells


def verify_semisimplicity(g: GroupTable, max_dim: int) -> Report:
    """Splitting of admissible sequences and the free commutative Hall algebra, up to max_dim."""
    spec = _group_spec(g)
    rep = Report(f"semisimplicity over {spec.text}, total dim <= {max_dim}")
    irr = irreducibles_for_group_with_zero(g, spec)
    irr_keys = {key_of(m) for m in irr}
    keys = classes_up_to(spec, max_dim)

    simple = rep.check("coset modules are simple")
    for m in irr:
        simple.record(len(submodules(m)) == 2, key_of(m))
    covered = rep.check("indecomposables are coset modules")
    for d in range(1, max_dim + 1):
        for k in indecomposable_classes(spec, d):
            covered.record(k in irr_keys, k)
    split = rep.check("extensions split")
    for km in keys:
        for kn in keys:
            if km == ZERO_KEY or kn == ZERO_KEY or key_dim(km) + key_dim(kn) > max_dim:
                continue
            target = join_keys([km, kn])
            for r, _ in enumerate_extensions(spec, module_from_key(spec, km), module_from_key(spec, kn)):
                split.record(key_of(r) == target, f"{km} by {kn}: {key_of(r)}")
    comp = rep.check("complements of submodules are closed")
    for k in keys:
        r = module_from_key(spec, k)
        for s in submodules(r):
            comp.record(is_closed(r, r.full_mask & ~s), f"{k} sub {s}")
    prod = rep.check("delta products are single split terms")
    distinct = rep.check("distinct irreducibles multiply to the delta of the sum")
    for km in keys:
        for kn in keys:
            if key_dim(km) + key_dim(kn) > max_dim:
                continue
            target = join_keys([km, kn])
            pb = product_basis(spec, km, kn)
            expect = hall_number(*(module_from_key(spec, x) for x in (target, km, kn)))
            prod.record(pb == {target: expect} and pb == product_basis(spec, kn, km), f"{km} * {kn}")
            if km != kn and km in irr_keys and kn in irr_keys:
                distinct.record(pb == {target: 1}, f"{km} * {kn}")
    rep.data["irreducible_dims"] = [m.dim for m in irr]
    return rep


# -- oracles and the forest displays ------------------------------------------------

def tensor_oracle(m: AModule, n: AModule, max_power: int | None = None) -> AModule:
    """Tensor product over a one-generator spec by naive partition merging.

    Uses every power t^k (k up to ``max_power``) and the zero element as
    separate instances, and merges blocks as sets until nothing changes.
    The generator acts on a block through the first coordinate.
    """
    if m.spec.ngens != 1:
        raise SpecError("the partition oracle handles one-generator specs")
    t, u = m.rows[0], n.rows[0]
    if max_power is None:
        max_power = m.dim + n.dim + 1
    pairs = [(a, b) for a in range(m.dim + 1) for b in range(n.dim + 1)]

    def power(row, k, x):
        for _ in range(k):
            x = row[x]
        return x

    blocks = [{p} for p in pairs]
    links = [((a, b), (0, 0)) for a, b in pairs if a == 0 or b == 0]
    for k in range(1, max_power + 1):
        links += [((power(t, k, a), b), (a, power(u, k, b))) for a, b in pairs]
    merged = True
    while merged:
        merged = False
        for x, y in links:
            bx = next(s for s in blocks if x in s)
            by = next(s for s in blocks if y in s)
            if bx is not by:
                bx |= by
                blocks.remove(by)
                merged = True
        for s in list(blocks):
            images = {(t[a], b) for a, b in s}
            first = next(iter(images))
            links += [(first, z) for z in images if z != first]
    zero = next(s for s in blocks if (0, 0) in s)
    others = sorted((sorted(s) for s in blocks if s is not zero))
    index = {p: i + 1 for i, s in enumerate(others) for p in s}
    for p in zero:
        index[p] = 0
    row = [0] + [index[(t[s[0][0]], s[0][1])] for s in others]
    return AModule(m.spec, len(others), (tuple(row),))


def smash_forest_oracle(f1: str, f2: str) -> str:
    """Forest code of M ^ N computed directly on pairs of forest vertices."""
    from .forest import Forest, forest_code

    p1, p2 = Forest(f1).parents(), Forest(f2).parents()
    verts = [(a, b) for a in range(1, len(p1)) for b in range(1, len(p2))]
    kids = {v: [] for v in verts}
    roots = []
    for a, b in verts:
        if p1[a] and p2[b]:
            kids[(p1[a], p2[b])].append((a, b))
        else:
            roots.append((a, b))

    def build(v):
        return tuple(build(c) for c in kids[v])

    return forest_code([build(r) for r in roots])


CHERRY = "(()())"
LADDER3 = "((()))"
STAR4 = "(()()()())"

PAPER_DISPLAYS = [
    ("smash", CHERRY, LADDER3, CHERRY + "()" * 6),
    ("smash", CHERRY, CHERRY, STAR4 + "()" * 4),
    ("tensor", CHERRY, LADDER3, CHERRY),
    ("tensor", CHERRY, CHERRY, STAR4),
]


def paper_examples() -> Report:
    """The four forest product displays against computed and oracle values."""
    from .forest import FREE1, Forest, forest_to_module, module_to_forest

    rep = Report("forest product displays: printed vs computed")
    rep.notes.append(
        "tensor uses the literal congruence, zero-sided instances included, with "
        "a.[m, n] = [a.m, n]; a mismatch with the printed value is reported, not corrected"
    )
    rows = []
    oracle_chk = rep.check("computed value equals brute-force oracle")
    for kind, a, b, printed in PAPER_DISPLAYS:
        ma, mb = forest_to_module(Forest(a)), forest_to_module(Forest(b))
        computed = module_to_forest(PRODUCTS[kind](ma, mb)).code
        if kind == "smash":
            oracle = smash_forest_oracle(a, b)
        else:
            oracle = module_to_forest(tensor_oracle(ma, mb)).code
        printed = Forest.parse(printed).code
        oracle_chk.record(computed == oracle, f"{kind} {a} {b}: {computed} vs {oracle}")
        rows.append({
            "product": kind,
            "left": a,
            "right": b,
            "printed": printed,
            "computed": computed,
            "oracle": oracle,
            "matches_printed": computed == printed,
        })
    exact = rep.check("cherry ^ cherry reproduces the printed value")
    row = rows[1]
    exact.record(row["matches_printed"], f"{row['computed']} vs {row['printed']}")
    rep.data["displays"] = rows
    rep.data["spec"] = FREE1.text
    return rep


def describe_forest(code: str) -> str:
    """Human form such as ``(()())+6*()`` grouping repeated trees."""
    from .forest import Forest

    counts = Counter(Forest(code).trees)
    parts = []
    for tree in sorted(counts, key=lambda c: (-c.count("("), c)):
        k = counts[tree]
        parts.append(tree if k == 1 else f"{k}*{tree}")
    return " + ".join(parts) or "1"


def distributivity_witness(spec: SemigroupSpec, keys, kind: str):
    """First triple (M, N, L) from ``keys`` where M*(N+L) differs from M*N + M*L, or None."""
    for k1 in keys:
        for k2 in keys:
            for k3 in keys:
                m, n, l = (module_from_key(spec, k) for k in (k1, k2, k3))
                lhs = key_of(PRODUCTS[kind](m, direct_sum(n, l)))
                rhs = key_of(direct_sum(PRODUCTS[kind](m, n), PRODUCTS[kind](m, l)))
                if lhs != rhs:
                    return (k1, k2, k3, lhs, rhs)
    return None


def decomposition_keys(m: AModule) -> list[str]:
    return sorted((key_of(c) for c in decompose(m)), key=key_order)


def sum_key(keys) -> str:
    return join_keys(keys) if keys else ZERO_KEY

