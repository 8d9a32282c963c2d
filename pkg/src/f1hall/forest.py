"""Single-generator modules as graphs, rooted forests, cuts and the Kreimer coproduct.

For a module over a one-generator spec, the graph has an edge x -> t.x for
every x with t.x != *.  Nilpotent modules are rooted forests (roots are killed
by t); indecomposable non-nilpotent ones are a single oriented cycle with
trees hanging off it.

A cut is a set of edges, each named by its source element.  When the source
is a root, the "edge" is the one into the basepoint; cutting it removes the
whole tree (the total cut of Connes-Kreimer).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .canon import key_of
from .errors import ModuleError, ParseError, SpecError
from .hall import hall_number, product_basis
from .module import AModule, components, elements_mask, is_nilpotent, quotient, restrict, submodules
from .report import Report
from .semigroup import TCONG, SemigroupSpec, build_free_monoid

FREE1 = build_free_monoid(1)


def _require_single(m: AModule):
    if m.spec.ngens != 1:
        raise SpecError(f"graph operations need a one-generator spec, not {m.spec.text}")


# -- module graphs ---------------------------------------------------------

@dataclass(frozen=True)
class ModuleGraph:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    types: tuple[tuple[int, int], ...]
    h1: int
    cycles: tuple[tuple[int, ...], ...]

    def vertex_type(self, x: int) -> tuple[int, int]:
        return self.types[x - 1]


def _cycle_from(t, x):
    seen = {}
    while x and x not in seen:
        seen[x] = len(seen)
        x = t[x]
    if not x:
        return None
    cyc = [x]
    y = t[x]
    while y != x:
        cyc.append(y)
        y = t[y]
    i = cyc.index(min(cyc))
    return tuple(cyc[i:] + cyc[:i])


def module_to_graph(m: AModule) -> ModuleGraph:
    _require_single(m)
    t = m.rows[0]
    edges = tuple((x, t[x]) for x in m.elements if t[x])
    indeg = Counter(y for _, y in edges)
    types = tuple((indeg[x], 1 if t[x] else 0) for x in m.elements)
    h1 = len(edges) - m.dim + len(components(m))
    cycles = sorted({c for x in m.elements if (c := _cycle_from(t, x))})
    return ModuleGraph(m.dim, edges, types, h1, tuple(cycles))


def undirected_core(m: AModule) -> set:
    """Vertices left after repeatedly deleting degree-1 vertices of the undirected multigraph."""
    _require_single(m)
    t = m.rows[0]
    deg = Counter()
    for x in m.elements:
        if t[x]:
            deg[x] += 1
            deg[t[x]] += 1
    alive = set(m.elements)
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            if deg[x] <= 1:
                alive.discard(x)
                changed = True
                for y in m.elements:
                    if y in alive and (t[x] == y or t[y] == x):
                        deg[y] -= 1
    return alive


# -- rooted forests --------------------------------------------------------

def _tree_code(children, x):
    return "(" + "".join(sorted(_tree_code(children, c) for c in children[x])) + ")"


def _parse_trees(text: str):
    """Parse concatenated bracket trees into nested tuples."""
    pos = 0

    def tree():
        nonlocal pos
        if pos >= len(text) or text[pos] != "(":
            raise ParseError("expected '('", text, pos)
        pos += 1
        kids = []
        while pos < len(text) and text[pos] == "(":
            kids.append(tree())
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')'", text, pos)
        pos += 1
        return tuple(kids)

    trees = []
    while pos < len(text):
        trees.append(tree())
    return trees


def _code(tree) -> str:
    return "(" + "".join(sorted(_code(c) for c in tree)) + ")"


def forest_code(trees) -> str:
    return "".join(sorted(_code(t) for t in trees))


@dataclass(frozen=True)
class Forest:
    """A rooted forest by its canonical bracket code; ``""`` is the empty forest."""

    code: str

    @classmethod
    def parse(cls, text: str) -> "Forest":
        text = "".join(text.split())
        if text in ("1", "∅"):
            text = ""
        return cls(forest_code(_parse_trees(text)))

    @property
    def size(self) -> int:
        return self.code.count("(")

    @property
    def trees(self) -> list[str]:
        out, depth, start = [], 0, 0
        for i, ch in enumerate(self.code):
            depth += 1 if ch == "(" else -1
            if depth == 0:
                out.append(self.code[start:i + 1])
                start = i + 1
        return out

    def parents(self) -> list[int]:
        """Parent of each vertex in preorder (1-based ids), 0 for roots."""
        parent = [0]
        stack = []
        for ch in self.code:
            if ch == "(":
                parent.append(stack[-1] if stack else 0)
                stack.append(len(parent) - 1)
            else:
                stack.pop()
        return parent

    def children(self) -> list[list[int]]:
        parent = self.parents()
        kids = [[] for _ in parent]
        for x in range(1, len(parent)):
            kids[parent[x]].append(x)
        return kids

    def height(self) -> int:
        depth = [0] * (self.size + 1)
        parent = self.parents()
        for x in range(1, self.size + 1):
            if parent[x]:
                depth[x] = depth[parent[x]] + 1
        return max(depth[1:], default=0)

    def __str__(self):
        return self.code or "1"


def forest_order(code: str):
    return (code.count("("), code)


def forest_to_module(f: Forest, spec: SemigroupSpec = FREE1) -> AModule:
    if spec.ngens != 1:
        raise SpecError("forests describe modules over one generator")
    parent = f.parents()
    m = AModule(spec, f.size, (tuple(parent),))
    from .module import relation_violation
    if relation_violation(spec, m.rows, m.dim) is not None:
        raise ModuleError(f"forest {f} is not a module over {spec.text}")
    return m


def module_to_forest(m: AModule) -> Forest:
    _require_single(m)
    if not is_nilpotent(m):
        raise ModuleError("only nilpotent modules are forests")
    t = m.rows[0]
    children = [[] for _ in range(m.dim + 1)]
    for x in m.elements:
        children[t[x]].append(x)
    return Forest("".join(sorted(_tree_code(children, r) for r in children[0])))


@lru_cache(maxsize=None)
def all_trees(n: int) -> tuple[str, ...]:
    """Codes of all rooted trees with n vertices, generated directly."""
    if n < 1:
        return ()
    return tuple(sorted({"(" + f + ")" for f in all_forests(n - 1)}))


@lru_cache(maxsize=None)
def all_forests(n: int) -> tuple[str, ...]:
    if n == 0:
        return ("",)
    out = set()
    for k in range(1, n + 1):
        for t in all_trees(k):
            for rest in all_forests(n - k):
                out.add("".join(sorted([t] + Forest(rest).trees)))
    return tuple(sorted(out))


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class NilpotentTree:
    height: int
    code: str


@dataclass(frozen=True)
class CycleWithTrees:
    cycle_length: int
    attached: tuple[str, ...]
    depth: int


def classify(m: AModule):
    """Shape of an indecomposable one-generator module.

    For the cycle case ``attached`` lists the codes of the trees hanging off
    the cycle (each rooted at a vertex mapping into the cycle) and ``depth``
    is the largest distance from a vertex to the cycle.
    """
    _require_single(m)
    if len(components(m)) != 1:
        raise ModuleError("classify needs an indecomposable module")
    if is_nilpotent(m):
        f = module_to_forest(m)
        return NilpotentTree(f.height(), f.code)
    t = m.rows[0]
    cyc = _cycle_from(t, 1)
    on_cycle = set(cyc)
    children = [[] for _ in range(m.dim + 1)]
    for x in m.elements:
        if x not in on_cycle:
            children[t[x]].append(x)
    attached = sorted(_tree_code(children, x) for c in cyc for x in children[c])
    depth = 0
    for x in m.elements:
        k, y = 0, x
        while y not in on_cycle:
            y, k = t[y], k + 1
        depth = max(depth, k)
    return CycleWithTrees(len(cyc), tuple(attached), depth)


def congruence_shape_ok(spec: SemigroupSpec, shape) -> bool:
    """Whether an indecomposable shape is allowed over <t>/(t^n ~ x).

    x = 0: trees of height <= n-1.  x = t^m: trees of height <= m-1, or a
    cycle whose length divides n-m with every vertex within m steps of it.
    """
    if spec.kind != TCONG:
        raise SpecError("shape predicates apply to congruence quotients of <t>")
    n, m = spec.params
    if m is None:
        return isinstance(shape, NilpotentTree) and shape.height <= n - 1
    if isinstance(shape, NilpotentTree):
        return shape.height <= m - 1
    return (n - m) % shape.cycle_length == 0 and shape.depth <= m


# -- cuts -------------------------------------------------------------------

def _orbit(t, x):
    """Elements t.x, t^2.x, ... until the basepoint or a repeat."""
    out = []
    seen = set()
    y = t[x]
    while y and y not in seen:
        out.append(y)
        seen.add(y)
        y = t[y]
    return out


@dataclass(frozen=True)
class Cut:
    host: AModule
    edges: frozenset

    def trunk_mask(self) -> int:
        t = self.host.rows[0]
        keep = []
        for x in self.host.elements:
            if x not in self.edges and not any(y in self.edges for y in _orbit(t, x)):
                keep.append(x)
        return elements_mask(keep)

    def trunk(self) -> AModule:
        """Root/cycle side: the submodule left after removing cut edges."""
        return restrict(self.host, self.trunk_mask())

    def pruned(self) -> AModule:
        """The pieces cut away, as the quotient by the trunk."""
        return quotient(self.host, self.trunk_mask())


def _host(x) -> AModule:
    return forest_to_module(x) if isinstance(x, Forest) else x


def is_admissible(host: AModule, edges) -> bool:
    t = host.rows[0]
    edges = set(edges)
    return all(not any(y in edges for y in _orbit(t, x)) for x in edges)


def admissible_cuts(f, extended: bool = False) -> list[Cut]:
    """Edge sets meeting every directed path at most once.

    By default only genuine edges x -> t.x != * are cuttable; ``extended``
    also allows the root edges into the basepoint.
    """
    host = _host(f)
    _require_single(host)
    t = host.rows[0]
    cand = [x for x in host.elements if extended or t[x]]
    orbit = {x: set(_orbit(t, x)) for x in cand}
    cand = [x for x in cand if x not in orbit[x]]
    out = []

    def rec(i, chosen):
        if i == len(cand):
            out.append(frozenset(chosen))
            return
        rec(i + 1, chosen)
        x = cand[i]
        if all(x not in orbit[y] and y not in orbit[x] for y in chosen):
            chosen.append(x)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    out.sort(key=lambda s: (len(s), sorted(s)))
    return [Cut(host, s) for s in out]


def simple_cuts(f) -> list[Cut]:
    host = _host(f)
    _require_single(host)
    if host.dim and len(components(host)) != 1:
        raise ModuleError("simple cuts are taken on a connected graph")
    return [c for c in admissible_cuts(host) if len(c.edges) == 1]


def cut_for_submodule(host: AModule, mask: int) -> Cut:
    """Edges leaving the complement of N into N or the basepoint."""
    t = host.rows[0]
    inside = lambda y: y == 0 or mask >> (y - 1) & 1  # noqa: E731
    edges = frozenset(x for x in host.elements if not inside(x) and inside(t[x]))
    return Cut(host, edges)


# -- Kreimer coproduct --------------------------------------------------------

def _pieces(f: Forest, cut_vertices):
    """Forest codes of (pruned part, trunk) for a set of cut vertices, computed on the tree."""
    kids = f.children()
    cut = set(cut_vertices)

    def code(x):
        return "(" + "".join(sorted(code(c) for c in kids[x] if c not in cut)) + ")"

    pruned = "".join(sorted(code(x) for x in cut))
    trunk = "".join(sorted(code(r) for r in kids[0] if r not in cut))
    return pruned, trunk


def kreimer_coproduct(f: Forest) -> dict:
    """Sum over cuts of (pruned forest) (x) (trunk); 1 is the empty forest "".

    Returned as ``{(pruned code, trunk code): count}`` in forest order.  Each
    tree is either cut totally (it lands on the left) or by an admissible set
    of inner edges; the empty cut gives 1 (x) F and the total cut F (x) 1.
    """
    out = Counter()
    for cut in admissible_cuts(f, extended=True):
        out[_pieces(f, cut.edges)] += 1
    order = lambda kv: (forest_order(kv[0][0]), forest_order(kv[0][1]))  # noqa: E731
    return dict(sorted(out.items(), key=order))


def kreimer_in_module_keys(f: Forest, spec: SemigroupSpec = FREE1) -> dict:
    out = {}
    for (lf, rt), v in kreimer_coproduct(f).items():
        pair = (key_of(forest_to_module(Forest(lf), spec)), key_of(forest_to_module(Forest(rt), spec)))
        out[pair] = out.get(pair, 0) + v
    return out


# -- verification suites ------------------------------------------------------

def verify_duality(max_vertices: int) -> Report:
    """Hall numbers of nilpotent <t>-modules against Kreimer coproduct coefficients."""
    rep = Report(f"Hall/Kreimer duality, forests with <= {max_vertices} vertices")
    rep.notes.append(
        "convention: left factor = pruned part (quotient M), right factor = trunk "
        "(submodule N); empty cut -> 1 (x) F, total cut -> F (x) 1"
    )
    chk = rep.check("coefficient equality")
    support = rep.check("coproduct support within forest pairs")
    for n in range(max_vertices + 1):
        for rcode in all_forests(n):
            rf = Forest(rcode)
            r = forest_to_module(rf)
            kc = kreimer_coproduct(rf)
            seen = set()
            for a in range(n + 1):
                for mcode in all_forests(a):
                    mm = forest_to_module(Forest(mcode))
                    for ncode in all_forests(n - a):
                        nn = forest_to_module(Forest(ncode))
                        h = hall_number(r, mm, nn)
                        k = kc.get((mcode, ncode), 0)
                        seen.add((mcode, ncode))
                        chk.record(h == k, f"R={rcode or '1'} M={mcode or '1'} N={ncode or '1'}: hall {h}, kreimer {k}")
            support.record(set(kc) <= seen, f"R={rcode}")
    rep.data["forests"] = sum(len(all_forests(n)) for n in range(max_vertices + 1))
    return rep


def verify_treeprod(max_vertices: int) -> Report:
    """Coefficient of a tree R in delta_M * delta_N equals the count of simple cuts R -> (M, N)."""
    rep = Report(f"tree products via simple cuts, trees with <= {max_vertices} vertices")
    tree_coeff = rep.check("indecomposable coefficients")
    split = rep.check("split term and support")
    for n in range(2, max_vertices + 1):
        for rcode in all_trees(n):
            r = forest_to_module(Forest(rcode))
            kr = key_of(r)
            counts = Counter()
            for cut in simple_cuts(r):
                counts[(key_of(cut.pruned()), key_of(cut.trunk()))] += 1
            for a in range(1, n):
                for mcode in all_trees(a):
                    for ncode in all_trees(n - a):
                        km = key_of(forest_to_module(Forest(mcode)))
                        kn = key_of(forest_to_module(Forest(ncode)))
                        p = product_basis(FREE1, km, kn).get(kr, 0)
                        tree_coeff.record(p == counts[(km, kn)], f"R={rcode} M={mcode} N={ncode}: {p} vs {counts[(km, kn)]}")
    for a in range(1, max_vertices):
        for b in range(1, max_vertices - a + 1):
            for mcode in all_trees(a):
                for ncode in all_trees(b):
                    km = key_of(forest_to_module(Forest(mcode)))
                    kn = key_of(forest_to_module(Forest(ncode)))
                    prod = product_basis(FREE1, km, kn)
                    ksum = key_of(forest_to_module(Forest(mcode + ncode)))
                    others = [k for k in prod if k != ksum and "⊕" in k]
                    expect = 2 if km == kn else 1
                    split.record(prod.get(ksum) == expect and not others, f"M={mcode} N={ncode}")
    return rep


def verify_cut_bijection(max_vertices: int) -> Report:
    """Cuts (root edges allowed) versus submodules of forest modules."""
    rep = Report(f"cut/submodule bijection, forests with <= {max_vertices} vertices")
    count = rep.check("cut count equals submodule count")
    bij = rep.check("trunk map is a bijection onto submodules")
    classes = rep.check("pruned/trunk classes match quotient/submodule")
    inverse = rep.check("submodule boundary is an admissible cut")
    for n in range(max_vertices + 1):
        for code in all_forests(n):
            f = Forest(code)
            m = forest_to_module(f)
            cuts = admissible_cuts(f, extended=True)
            subs = submodules(m)
            count.record(len(cuts) == len(subs), f"{code}: {len(cuts)} cuts, {len(subs)} submodules")
            masks = [c.trunk_mask() for c in cuts]
            bij.record(sorted(masks) == sorted(subs), code)
            for c, mask in zip(cuts, masks):
                lf, rt = _pieces(f, c.edges)
                ok = (
                    module_to_forest(quotient(m, mask)).code == lf
                    and module_to_forest(restrict(m, mask)).code == rt
                )
                classes.record(ok, f"{code} cut {sorted(c.edges)}")
            for mask in subs:
                c = cut_for_submodule(m, mask)
                inverse.record(is_admissible(m, c.edges) and c.trunk_mask() == mask, f"{code} sub {mask}")
    return rep
