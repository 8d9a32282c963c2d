"""Finitely generated semigroups with zero, in five supported presentations.

Every spec carries an ordered generator list and a list of relations between
words in those generators.  A relation ``(lhs, rhs)`` with ``rhs is None``
means ``lhs = 0``.  The relations are complete: a family of pointed maps, one
per generator, is a module exactly when every relation holds.

Words are tuples of generator indices.  A word ``(g1, ..., gk)`` denotes the
product ``g1 g2 ... gk`` and acts on a module as ``g1 . (g2 . ( ... gk . m))``.
"""
from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import SpecError
from .groups import GroupTable

FREE = "FreeMonoidOnK"
TCONG = "TCongruence"
TABLE = "FiniteTable"
PATH = "PathSemigroup"
GROUP = "GroupWithZero"

Word = tuple


@dataclass(frozen=True)
class Quiver:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    edge_names: tuple[str, ...] | None = None
    vertex_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.vertices < 1:
            raise SpecError("a quiver needs at least one vertex")
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        for s, t in edges:
            if not (1 <= s <= self.vertices and 1 <= t <= self.vertices):
                raise SpecError(f"edge ({s},{t}) has an endpoint outside 1..{self.vertices}")
        object.__setattr__(self, "edges", edges)
        if self.edge_names is None:
            names = ("e",) if len(edges) == 1 else tuple(f"e{i + 1}" for i in range(len(edges)))
            object.__setattr__(self, "edge_names", names)
        if self.vertex_names is None:
            names = ("v",) if self.vertices == 1 else tuple(f"v{i + 1}" for i in range(self.vertices))
            object.__setattr__(self, "vertex_names", names)
        all_names = list(self.vertex_names) + list(self.edge_names)
        if len(self.edge_names) != len(edges) or len(self.vertex_names) != self.vertices:
            raise SpecError("quiver name lists have the wrong length")
        if len(set(all_names)) != len(all_names):
            raise SpecError("quiver vertex and edge names must be distinct")

    def is_acyclic(self) -> bool:
        indeg = [0] * (self.vertices + 1)
        for _, t in self.edges:
            indeg[t] += 1
        queue = [v for v in range(1, self.vertices + 1) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for s, t in self.edges:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        return seen == self.vertices


def _power_name(tokens) -> str:
    parts = []
    for name, run in itertools.groupby(tokens):
        k = len(list(run))
        parts.append(name if k == 1 else f"{name}^{k}")
    sep = "" if all(len(p.split("^")[0]) == 1 for p in parts) else "."
    return sep.join(parts)


@dataclass(frozen=True, eq=False)
class SemigroupSpec:
    kind: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word | None], ...]
    has_unit: bool
    text: str
    elements: tuple[str, ...] | None = None
    table: tuple[tuple[int, ...], ...] | None = None
    zero: int | None = None
    unit: int | None = None
    gen_elements: tuple[int, ...] | None = None
    witnesses: dict = field(default_factory=dict)
    quiver: Quiver | None = None
    group: GroupTable | None = None
    params: tuple = ()
    fingerprint: str = ""

    def __eq__(self, other):
        return isinstance(other, SemigroupSpec) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"SemigroupSpec({self.text!r}, fingerprint={self.fingerprint})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def is_finite(self) -> bool:
        return self.table is not None

    def gen_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise SpecError(f"{name!r} is not a generator of {self.text}") from None

    # -- evaluation ---------------------------------------------------
    def evaluate(self, word):
        """Product of a word of generator indices; ``None`` stands for 0."""
        word = tuple(word)
        if not word:
            if not self.has_unit:
                raise SpecError(f"{self.text} has no unit; the empty word has no value")
            return self._unit_value()
        if self.kind == FREE:
            return word
        if self.kind == PATH:
            value = self._path_gen(word[0])
            for g in word[1:]:
                value = self._path_mul(value, self._path_gen(g))
                if value is None:
                    return None
            return value
        value = self.gen_elements[word[0]]
        for g in word[1:]:
            if value == self.zero:
                break
            value = self.table[value][self.gen_elements[g]]
        return None if value == self.zero else value

    def _unit_value(self):
        if self.kind == FREE:
            return ()
        return self.unit

    def _path_gen(self, g):
        nv = self.quiver.vertices
        return ("v", g) if g < nv else ("p", (g - nv,))

    def _path_mul(self, x, y):
        if x is None or y is None:
            return None
        q = self.quiver
        if x[0] == "v" and y[0] == "v":
            return x if x[1] == y[1] else None
        if x[0] == "v":
            return y if q.edges[y[1][0]][0] == x[1] + 1 else None
        if y[0] == "v":
            return x if q.edges[x[1][-1]][1] == y[1] + 1 else None
        if q.edges[x[1][-1]][1] == q.edges[y[1][0]][0]:
            return ("p", x[1] + y[1])
        return None

    def element_name(self, value) -> str:
        if value is None:
            return "0"
        if self.kind == FREE:
            return _power_name(self.generators[g] for g in value) if value else "1"
        if self.kind == PATH:
            if value[0] == "v":
                return self.quiver.vertex_names[value[1]]
            return _power_name(self.quiver.edge_names[e] for e in value[1])
        return self.elements[value]

    def evaluate_word(self, names) -> str:
        """Evaluate a word given by generator names; returns the element name ("0" for zero)."""
        word = tuple(self.gen_index(n) for n in names)
        return self.element_name(self.evaluate(word))

    def is_commutative(self) -> bool:
        return all(
            self.evaluate((a, b)) == self.evaluate((b, a))
            for a in range(self.ngens) for b in range(a + 1, self.ngens)
        )

    def word_text(self, word) -> str:
        if word is None:
            return "0"
        if not word:
            return "1"
        return "*".join(self.generators[g] for g in word)


# -- fingerprints ------------------------------------------------------

def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _finite_fingerprint(gens, elements, table, zero, unit, gen_elements) -> str:
    rows = ";".join(",".join(map(str, r)) for r in table)
    text = (
        f"gens={','.join(gens)}|elems={','.join(elements)}|zero={zero}|unit={unit}"
        f"|genel={','.join(map(str, gen_elements))}|table={rows}"
    )
    return _digest(text)


# -- finite tables -----------------------------------------------------

def _check_table(elements, table, zero, unit):
    n = len(elements)
    if len(table) != n or any(len(r) != n for r in table):
        raise SpecError(f"multiplication table must be {n}x{n}")
    if any(not 0 <= v < n for r in table for v in r):
        raise SpecError("multiplication table entry out of range")
    if not 0 <= zero < n:
        raise SpecError("zero index out of range")
    for a in range(n):
        if table[zero][a] != zero or table[a][zero] != zero:
            raise SpecError(f"zero element {elements[zero]} is not absorbing at {elements[a]}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise SpecError(
                f"table is not associative: ({elements[a]}*{elements[b]})*{elements[c]} != "
                f"{elements[a]}*({elements[b]}*{elements[c]})"
            )
    if unit is not None:
        if not 0 <= unit < n or unit == zero:
            raise SpecError("unit index invalid")
        for a in range(n):
            if table[unit][a] != a or table[a][unit] != a:
                raise SpecError(f"{elements[unit]} is not a two-sided unit")


def _witnesses(table, zero, unit, gen_elements):
    """Shortest words (BFS over right multiplication) reaching every nonzero element."""
    wit = {}
    queue = deque()
    if unit is not None:
        wit[unit] = ()
        queue.append(unit)
    for g, x in enumerate(gen_elements):
        if x != zero and x not in wit:
            wit[x] = (g,)
            queue.append(x)
    while queue:
        x = queue.popleft()
        for g, y in enumerate(gen_elements):
            z = table[x][y]
            if z != zero and z not in wit:
                wit[z] = wit[x] + (g,)
                queue.append(z)
    return wit


def _cayley_relations(table, zero, gen_elements, wit):
    rels = []
    seen = set()

    def add(lhs, rhs):
        if lhs != rhs and (lhs, rhs) not in seen:
            seen.add((lhs, rhs))
            rels.append((lhs, rhs))

    for g, x in enumerate(gen_elements):
        add((g,), None if x == zero else wit[x])
    for x in sorted(wit, key=lambda e: (len(wit[e]), wit[e])):
        for g, y in enumerate(gen_elements):
            z = table[x][y]
            add(wit[x] + (g,), None if z == zero else wit[z])
    return tuple(rels)


def _finite_spec(kind, text, elements, table, zero, unit, generators, **extra) -> SemigroupSpec:
    elements = tuple(str(e) for e in elements)
    table = tuple(tuple(int(v) for v in r) for r in table)
    if len(set(elements)) != len(elements):
        raise SpecError("element names must be distinct")
    _check_table(elements, table, zero, unit)
    if generators is None:
        generators = [e for i, e in enumerate(elements) if i not in (zero, unit)]
    gen_names, gen_elements = [], []
    for g in generators:
        alias, target = (g, g) if isinstance(g, str) else g
        if target not in elements:
            raise SpecError(f"generator {alias!r} is not an element")
        gen_names.append(alias)
        gen_elements.append(elements.index(target))
    if len(set(gen_names)) != len(gen_names):
        raise SpecError("generator names must be distinct")
    wit = _witnesses(table, zero, unit, gen_elements)
    missing = [elements[i] for i in range(len(elements)) if i != zero and i not in wit]
    if missing:
        raise SpecError(f"generators {gen_names} fail to generate {', '.join(missing)}")
    rels = _cayley_relations(table, zero, gen_elements, wit)
    return SemigroupSpec(
        kind=kind,
        generators=tuple(gen_names),
        relations=rels,
        has_unit=unit is not None,
        text=text,
        elements=elements,
        table=table,
        zero=zero,
        unit=unit,
        gen_elements=tuple(gen_elements),
        witnesses=wit,
        fingerprint=_finite_fingerprint(gen_names, elements, table, zero, unit, gen_elements),
        **extra,
    )


def build_finite_table(elements, table, zero_index, unit_index=None, generators=None, text="table"):
    """Validate a multiplication table as a semigroup with zero.

    ``generators`` is a list of element names, or of ``(alias, element)``
    pairs; by default every element other than 0 and the unit is a generator.
    """
    return _finite_spec(TABLE, text, elements, table, zero_index, unit_index, generators)


def build_free_monoid(k: int) -> SemigroupSpec:
    if k < 1:
        raise SpecError("the free monoid needs at least one generator")
    gens = ("t",) if k == 1 else tuple(f"x{i + 1}" for i in range(k))
    return SemigroupSpec(
        kind=FREE, generators=gens, relations=(), has_unit=True, text=f"free:{k}",
        fingerprint=_digest(f"free|gens={','.join(gens)}"),
    )


def build_t_congruence(n: int, m: int | None = None) -> SemigroupSpec:
    """Quotient of <t> by t^n ~ x, with x = 0 when ``m is None`` and x = t^m otherwise."""
    if n < 1:
        raise SpecError("congruence exponent n must be at least 1")
    if m is not None and not 0 <= m < n:
        raise SpecError(f"need 0 <= m < n (got m={m}, n={n}); m = n is the free monoid")

    def reduce(k):
        if k < n:
            return k
        if m is None:
            return None
        return m + (k - m) % (n - m)

    def idx(k):
        return 0 if k is None else k + 1

    elements = ["0", "1"] + ["t" if k == 1 else f"t^{k}" for k in range(1, n)]
    size = n + 1
    table = [[0] * size for _ in range(size)]
    for a in range(n):
        for b in range(n):
            table[a + 1][b + 1] = idx(reduce(a + b))
    gen_el = idx(reduce(1))
    name = elements[gen_el]
    text = f"tcong:{n},0" if m is None else (f"tcong:{n},t0" if m == 0 else f"tcong:{n},{m}")
    return _finite_spec(TCONG, text, elements, table, 0, 1, [("t", name)], params=(n, m))


def build_group_with_zero(g: GroupTable) -> SemigroupSpec:
    """The monoid G u {0}; generators are the group's declared generators or a greedy set."""
    n = g.order
    elements = ["0"] + list(g.names)
    table = [[0] * (n + 1)] + [[0] + [g.mul(a, b) + 1 for b in range(n)] for a in range(n)]
    if g.generators is not None:
        gens = list(g.generators)
    else:
        gens, span = [], {g.identity}
        for x in range(n):
            if x not in span:
                gens.append(g.names[x])
                span = set(_group_span(g, [g.names.index(h) for h in gens]))
    return _finite_spec(GROUP, f"gz:{g.label}", elements, table, 0, g.identity + 1, gens, group=g)


def _group_span(g: GroupTable, gens):
    span = {g.identity}
    frontier = [g.identity]
    while frontier:
        new = []
        for x in frontier:
            for h in gens:
                y = g.mul(x, h)
                if y not in span:
                    span.add(y)
                    new.append(y)
        frontier = new
    return span


def build_path_semigroup(q: Quiver, text="path") -> SemigroupSpec:
    """Path semigroup: paths in q, concatenated left to right when composable.

    Generators are the vertex idempotents followed by the edges.  ``e v = e``
    exactly when v is the terminal vertex of e, and ``v e = e`` exactly when v
    is its initial vertex.  No unit.
    """
    nv = len(q.vertex_names)
    gens = tuple(q.vertex_names) + tuple(q.edge_names)
    rels = []
    for i in range(nv):
        for j in range(nv):
            rels.append(((i, j), (i,) if i == j else None))
    for l, (s, t) in enumerate(q.edges):
        e = nv + l
        for i in range(nv):
            rels.append(((e, i), (e,) if i + 1 == t else None))
            rels.append(((i, e), (e,) if i + 1 == s else None))
    edges_text = ",".join(f"{s}>{t}" for s, t in q.edges)
    fp = _digest(f"path|n={q.vertices}|edges={edges_text}|names={','.join(gens)}")
    spec = SemigroupSpec(
        kind=PATH, generators=gens, relations=tuple(rels), has_unit=False, text=text,
        quiver=q, fingerprint=fp,
    )
    if q.is_acyclic():
        spec = _materialize_paths(spec)
    return spec


def _materialize_paths(spec: SemigroupSpec) -> SemigroupSpec:
    q = spec.quiver
    nv = q.vertices
    values = [None] + [("v", i) for i in range(nv)]
    frontier = [("p", (l,)) for l in range(len(q.edges))]
    while frontier:
        values.extend(frontier)
        new = []
        for p in frontier:
            for l in range(len(q.edges)):
                r = spec._path_mul(p, ("p", (l,)))
                if r is not None:
                    new.append(r)
        frontier = new
    index = {v: i for i, v in enumerate(values)}
    table = tuple(tuple(index[spec._path_mul(x, y)] for y in values) for x in values)
    elements = tuple(spec.element_name(v) for v in values)
    gen_elements = tuple(index[spec._path_gen(g)] for g in range(spec.ngens))
    _check_table(elements, table, 0, None)
    wit = _witnesses(table, 0, None, gen_elements)
    return SemigroupSpec(
        kind=PATH, generators=spec.generators, relations=spec.relations, has_unit=False,
        text=spec.text, elements=elements, table=table, zero=0, unit=None,
        gen_elements=gen_elements, witnesses=wit, quiver=q, fingerprint=spec.fingerprint,
    )
