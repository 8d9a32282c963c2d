"""The Hall algebra of finite modules with normal morphisms, over Q.

Basis elements are delta functions on isomorphism classes, indexed by keys.
The product of two deltas counts submodules:

    delta_M * delta_N = sum_R P(R; M, N) delta_R,
    P(R; M, N) = #{L subset R : L ~ N, R/L ~ M}.

The coproduct sends delta_R to the sum of delta_A (x) delta_B over ordered
pairs of classes with A + B ~ R, each with coefficient 1.  The unit is the
zero-module class.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import canon
from .canon import ZERO_KEY, key_components, key_dim, key_of, key_order, module_from_key
from .enumeration import classes_up_to, enumerate_extensions, enumerate_modules
from .errors import SpecError
from .linalg import rank, smith_normal_form
from .module import AModule, quotient, restrict, submodules
from .report import Report
from .semigroup import SemigroupSpec


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class HallElement:
    """Finitely supported rational combination of class keys."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: SemigroupSpec, coeffs=None):
        self.spec = spec
        self.coeffs = {k: _frac(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def delta(cls, spec, key, coeff=1):
        return cls(spec, {key: coeff})

    @classmethod
    def of(cls, m: AModule, coeff=1):
        return cls(m.spec, {key_of(m): coeff})

    @classmethod
    def one(cls, spec):
        return cls(spec, {ZERO_KEY: 1})

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecError("Hall elements over different semigroups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return HallElement(self.spec, out)

    def __neg__(self):
        return HallElement(self.spec, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return hall_product(self, other)
        return HallElement(self.spec, {k: v * other for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.spec == other.spec and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key):
        return self.coeffs.get(key, Fraction(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: key_order(kv[0]))

    def grades(self) -> set:
        return {key_dim(k) for k in self.coeffs}

    def __repr__(self):
        terms = " + ".join(f"{v}*[{k}]" for k, v in self.items())
        return f"HallElement({terms or '0'})"


class TensorElement:
    """Finitely supported rational combination of ordered key pairs."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs=None):
        self.spec = spec
        self.coeffs = {k: _frac(v) for k, v in (coeffs or {}).items() if v}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TensorElement(self.spec, out)

    def __sub__(self, other):
        return self + TensorElement(other.spec, {k: -v for k, v in other.coeffs.items()})

    def __mul__(self, other):
        """Componentwise product (a (x) b)(c (x) d) = ac (x) bd."""
        if not isinstance(other, TensorElement):
            return TensorElement(self.spec, {k: v * other for k, v in self.coeffs.items()})
        out: dict = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), w in other.coeffs.items():
                left = product_basis(self.spec, a, c)
                right = product_basis(self.spec, b, d)
                for x, p in left.items():
                    for y, q in right.items():
                        out[(x, y)] = out.get((x, y), 0) + u * w * p * q
        return TensorElement(self.spec, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.coeffs == other.coeffs

    def swap(self):
        return TensorElement(self.spec, {(b, a): v for (a, b), v in self.coeffs.items()})

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (key_order(kv[0][0]), key_order(kv[0][1])))

    def __repr__(self):
        terms = " + ".join(f"{v}*[{a}]x[{b}]" for (a, b), v in self.items())
        return f"TensorElement({terms or '0'})"


# -- structure constants -------------------------------------------------

@lru_cache(maxsize=None)
def _profile(spec: SemigroupSpec, key: str) -> Counter:
    r = module_from_key(spec, key)
    out = Counter()
    for s in submodules(r):
        out[(key_of(quotient(r, s)), key_of(restrict(r, s)))] += 1
    return out


def hall_profile(r: AModule) -> Counter:
    """Counter over (class of R/L, class of L) for all submodules L of R."""
    return _profile(r.spec, key_of(r))


def hall_number(r: AModule, m: AModule, n: AModule) -> int:
    """#{L subset R : L ~ N and R/L ~ M}."""
    if not (r.spec == m.spec == n.spec):
        raise SpecError("modules over different semigroups")
    if r.dim != m.dim + n.dim:
        return 0
    return _profile(r.spec, key_of(r))[(key_of(m), key_of(n))]


def _as_key(spec, x):
    return x if isinstance(x, str) else key_of(x)


@lru_cache(maxsize=None)
def _product_basis(spec, km, kn):
    m, n = module_from_key(spec, km), module_from_key(spec, kn)
    out = {}
    for r, _ in enumerate_extensions(spec, m, n):
        kr = key_of(r)
        p = _profile(spec, kr)[(km, kn)]
        if p:
            out[kr] = p
    return out


def product_basis(spec: SemigroupSpec, m, n) -> dict:
    """Structure constants of delta_M * delta_N via extension gluing."""
    km, kn = _as_key(spec, m), _as_key(spec, n)
    if km == ZERO_KEY:
        return {kn: 1}
    if kn == ZERO_KEY:
        return {km: 1}
    return _product_basis(spec, km, kn)


def product_basis_scan(spec: SemigroupSpec, m, n) -> dict:
    """Same constants, found by scanning every class of the right dimension."""
    km, kn = _as_key(spec, m), _as_key(spec, n)
    mm, nn = module_from_key(spec, km), module_from_key(spec, kn)
    d = key_dim(km) + key_dim(kn)
    out = {}
    for kr in enumerate_modules(spec, d) if d else [ZERO_KEY]:
        p = hall_number(module_from_key(spec, kr), mm, nn)
        if p:
            out[kr] = p
    return out


def hall_product(a: HallElement, b: HallElement) -> HallElement:
    a._check(b)
    out: dict = {}
    for km, u in a.items():
        for kn, w in b.items():
            for kr, p in product_basis(a.spec, km, kn).items():
                out[kr] = out.get(kr, 0) + u * w * p
    return HallElement(a.spec, out)


def product_of(spec, keys) -> HallElement:
    out = HallElement.one(spec)
    for k in keys:
        out = out * HallElement.delta(spec, k)
    return out


# -- coproduct, counit, antipode -------------------------------------------

@lru_cache(maxsize=None)
def _splittings(key: str):
    comps = key_components(key)
    counts = Counter(comps)
    names = sorted(counts)
    out = []
    for picks in itertools.product(*(range(counts[c] + 1) for c in names)):
        left = [c for c, k in zip(names, picks) for _ in range(k)]
        right = [c for c, k in zip(names, picks) for _ in range(counts[c] - k)]
        out.append((canon.join_keys(left), canon.join_keys(right)))
    return tuple(out)


def coproduct(a: HallElement) -> TensorElement:
    out: dict = {}
    for k, v in a.items():
        for pair in _splittings(k):
            out[pair] = out.get(pair, 0) + v
    return TensorElement(a.spec, out)


def counit(a: HallElement) -> Fraction:
    return a[ZERO_KEY]


@lru_cache(maxsize=None)
def _antipode_basis(spec, key):
    if key == ZERO_KEY:
        return HallElement.one(spec)
    out = -HallElement.delta(spec, key)
    for left, right in _splittings(key):
        if left == ZERO_KEY or right == ZERO_KEY:
            continue
        out = out - _antipode_basis(spec, left) * HallElement.delta(spec, right)
    return out


def antipode(a: HallElement) -> HallElement:
    out = HallElement(a.spec)
    for k, v in a.items():
        out = out + _antipode_basis(a.spec, k) * v
    return out


def lie_bracket(spec: SemigroupSpec, m, n) -> HallElement:
    km, kn = _as_key(spec, m), _as_key(spec, n)
    for k in (km, kn):
        if len(key_components(k)) != 1:
            raise SpecError(f"bracket is defined on indecomposable classes; {k!r} is not")
    x, y = HallElement.delta(spec, km), HallElement.delta(spec, kn)
    return x * y - y * x


def _mul_tensor(t: TensorElement, left=None) -> HallElement:
    """m(f (x) id) applied to a tensor, f given on basis keys."""
    out = HallElement(t.spec)
    for (a, b), v in t.items():
        fa = left(a) if left else HallElement.delta(t.spec, a)
        out = out + fa * HallElement.delta(t.spec, b) * v
    return out


# -- verification suites ---------------------------------------------------

def _fmt(*keys):
    return " ; ".join(f"[{k}]" for k in keys)


def verify_hopf_axioms(spec: SemigroupSpec, max_dim: int, filter: str = "all") -> Report:
    """Exhaustive bialgebra and antipode checks on basis elements of grade <= max_dim."""
    rep = Report(f"Hopf axioms for {spec.text}, grade <= {max_dim}")
    rep.data["filter"] = filter
    basis = classes_up_to(spec, max_dim, filter)
    by_dim: dict = {}
    for k in basis:
        by_dim.setdefault(key_dim(k), []).append(k)
    rep.data["classes_per_grade"] = {str(d): len(v) for d, v in sorted(by_dim.items())}
    delta = lambda k: HallElement.delta(spec, k)  # noqa: E731
    one = HallElement.one(spec)

    unit = rep.check("unit")
    for k in basis:
        x = delta(k)
        unit.record(one * x == x and x * one == x, _fmt(k))

    assoc = rep.check("associativity")
    for a, b in itertools.product(basis, repeat=2):
        if key_dim(a) + key_dim(b) > max_dim or ZERO_KEY in (a, b):
            continue
        ab = delta(a) * delta(b)
        for c in basis:
            if key_dim(a) + key_dim(b) + key_dim(c) > max_dim or c == ZERO_KEY:
                continue
            lhs = ab * delta(c)
            rhs = delta(a) * (delta(b) * delta(c))
            assoc.record(lhs == rhs, _fmt(a, b, c))

    grading = rep.check("grading")
    for a, b in itertools.product(basis, repeat=2):
        if key_dim(a) + key_dim(b) <= max_dim:
            g = (delta(a) * delta(b)).grades()
            grading.record(g <= {key_dim(a) + key_dim(b)}, _fmt(a, b))

    coassoc = rep.check("coassociativity")
    cocomm = rep.check("cocommutativity")
    counit_c = rep.check("counit")
    antip = rep.check("antipode")
    for k in basis:
        x = delta(k)
        dx = coproduct(x)
        left: dict = {}
        right: dict = {}
        for (a, b), v in dx.items():
            for (a1, a2), w in coproduct(delta(a)).items():
                left[(a1, a2, b)] = left.get((a1, a2, b), 0) + v * w
            for (b1, b2), w in coproduct(delta(b)).items():
                right[(a, b1, b2)] = right.get((a, b1, b2), 0) + v * w
        coassoc.record(left == right, _fmt(k))
        cocomm.record(dx.swap() == dx, _fmt(k))
        lc = HallElement(spec, {b: v for (a, b), v in dx.items() if a == ZERO_KEY})
        rc = HallElement(spec, {a: v for (a, b), v in dx.items() if b == ZERO_KEY})
        counit_c.record(lc == x and rc == x, _fmt(k))
        s_left = _mul_tensor(dx, lambda a: _antipode_basis(spec, a))
        s_right = HallElement(spec)
        for (a, b), v in dx.items():
            s_right = s_right + delta(a) * _antipode_basis(spec, b) * v
        target = one * counit(x)
        antip.record(s_left == target and s_right == target, _fmt(k))

    bialg = rep.check("bialgebra")
    for a, b in itertools.product(basis, repeat=2):
        if key_dim(a) + key_dim(b) > max_dim:
            continue
        lhs = coproduct(delta(a) * delta(b))
        rhs = coproduct(delta(a)) * coproduct(delta(b))
        bialg.record(lhs == rhs, _fmt(a, b))

    comm = all(
        delta(a) * delta(b) == delta(b) * delta(a)
        for a, b in itertools.combinations(basis, 2)
        if key_dim(a) + key_dim(b) <= max_dim
    )
    rep.data["commutative"] = comm
    return rep


def _multisets_by_dim(items, total):
    """Non-decreasing sequences from ``items`` (list of (dim, key)) with dims summing to total."""
    out = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for i in range(start, len(items)):
            d, k = items[i]
            if d <= remaining:
                chosen.append(k)
                rec(i, remaining - d, chosen)
                chosen.pop()

    rec(0, total, [])
    return out


def verify_pbw(spec: SemigroupSpec, max_dim: int, filter: str = "all") -> Report:
    """Ordered monomials in indecomposable deltas form a basis of each grade."""
    rep = Report(f"PBW basis for {spec.text}, grade <= {max_dim}")
    ind_filter = "nilpotent-indecomposable" if filter.startswith("nilpotent") else "indecomposable"
    items = []
    for d in range(1, max_dim + 1):
        keys = enumerate_modules(spec, d, ind_filter)
        items.extend((d, k) for k in keys)
    items.sort(key=lambda dk: key_order(dk[1]))
    grades = []
    chk = rep.check("rank equals class count")
    for d in range(1, max_dim + 1):
        classes = enumerate_modules(spec, d, filter)
        index = {k: i for i, k in enumerate(classes)}
        monomials = _multisets_by_dim(items, d)
        rows = []
        for mono in monomials:
            vec = product_of(spec, mono)
            rows.append({index[k]: v for k, v in vec.items()})
        r = rank(rows)
        n_ind = sum(1 for dd, _ in items if dd == d)
        grades.append({"grade": d, "classes": len(classes), "indecomposables": n_ind,
                       "monomials": len(monomials), "rank": r})
        chk.record(r == len(classes) == len(monomials), f"grade {d}: rank {r}, classes {len(classes)}")
    rep.data["grades"] = grades
    return rep


@dataclass
class K0Report:
    max_dim: int
    classes: list
    relation_shape: tuple
    invariant_factors: list
    class_images: dict

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 0)

    def to_dict(self):
        return {
            "truncation": f"classes of dimension <= {self.max_dim} (a truncation, not K0 itself)",
            "max_dim": self.max_dim,
            "classes": self.classes,
            "relation_matrix": list(self.relation_shape),
            "invariant_factors": self.invariant_factors,
            "class_images": self.class_images,
        }


def k0_truncated(spec: SemigroupSpec, max_dim: int, filter: str = "all") -> K0Report:
    """Z[classes of dim <= max_dim] modulo [R] - [M] - [N] for admissible extensions inside the range.

    ``invariant_factors`` lists the non-unit factors of the quotient group, 0
    meaning a free summand.  ``class_images`` gives each class's coordinates in
    those summands.
    """
    classes = classes_up_to(spec, max_dim, filter)
    index = {k: i for i, k in enumerate(classes)}
    rows = []
    for km in classes:
        for kn in classes:
            if key_dim(km) + key_dim(kn) > max_dim:
                continue
            for kr in product_basis(spec, km, kn):
                row = [0] * len(classes)
                row[index[kr]] += 1
                row[index[km]] -= 1
                row[index[kn]] -= 1
                rows.append(row)
    diag, v = smith_normal_form(rows) if rows else ([], [[int(i == j) for j in range(len(classes))] for i in range(len(classes))])
    full = diag + [0] * (len(classes) - len(diag))
    keep = [i for i, f in enumerate(full) if f != 1]
    factors = [full[i] for i in keep]
    images = {k: [] for k in classes}
    for i in keep:
        col = [v[index[k]][i] for k in classes]
        if full[i] == 0:
            # a free summand has generator +-1; orient it by the first nonzero class
            sign = next((1 if c > 0 else -1 for c in col if c), 1)
            col = [sign * c for c in col]
        else:
            col = [c % full[i] for c in col]
        for k, c in zip(classes, col):
            images[k].append(c)
    return K0Report(max_dim, classes, (len(rows), len(classes)), factors, images)
