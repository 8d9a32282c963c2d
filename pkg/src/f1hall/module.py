"""Finite A-modules: pointed sets {0, 1, ..., dim} with one action row per generator.

Element 0 is the basepoint.  ``rows[g][x]`` is ``g . x``; every row fixes 0.
Subsets of the nonzero elements are bitmasks with bit ``x - 1`` for element x.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ModuleError, MorphismError, SpecError
from .semigroup import SemigroupSpec


@dataclass(frozen=True, eq=False)
class AModule:
    spec: SemigroupSpec
    dim: int
    rows: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        return isinstance(other, AModule) and self.spec == other.spec and self.rows == other.rows and self.dim == other.dim

    def __hash__(self):
        return hash((self.spec.fingerprint, self.dim, self.rows))

    def __repr__(self):
        return f"AModule({format_module(self)!r})"

    def act(self, g: int, x: int) -> int:
        return self.rows[g][x]

    def act_word(self, word, x: int) -> int:
        for g in reversed(word):
            if x == 0:
                return 0
            x = self.rows[g][x]
        return x

    @property
    def elements(self) -> range:
        return range(1, self.dim + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.dim) - 1


def format_module(m: AModule) -> str:
    """Text encoding ``d; g1:[a,b]; g2:[...]`` (rows list images of 1..d)."""
    parts = [str(m.dim)]
    for name, row in zip(m.spec.generators, m.rows):
        parts.append(f"{name}:[{','.join(map(str, row[1:]))}]")
    return "; ".join(parts)


def mask_elements(mask: int) -> list[int]:
    out, x = [], 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def elements_mask(elements) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << (x - 1)
    return mask


# -- validation ---------------------------------------------------------

def relation_violation(spec: SemigroupSpec, rows, dim: int):
    """First ``(relation, element)`` at which the action breaks a relation, or None."""
    for lhs, rhs in spec.relations:
        for x in range(1, dim + 1):
            a = _act_word(rows, lhs, x)
            b = 0 if rhs is None else _act_word(rows, rhs, x)
            if a != b:
                return (lhs, rhs), x
    return None


def _act_word(rows, word, x):
    for g in reversed(word):
        if x == 0:
            return 0
        x = rows[g][x]
    return x


def validate_module(spec: SemigroupSpec, action, dim: int | None = None) -> AModule:
    """Build a module from per-generator rows listing the images of 1..dim.

    ``action`` is a mapping from generator name to row, or a sequence of rows
    in generator order.
    """
    if isinstance(action, dict):
        unknown = set(action) - set(spec.generators)
        if unknown:
            raise ModuleError(f"unknown generators {sorted(unknown)} for {spec.text}")
        missing = [g for g in spec.generators if g not in action]
        if missing:
            raise ModuleError(f"missing action rows for {missing}")
        raw = [list(action[g]) for g in spec.generators]
    else:
        raw = [list(r) for r in action]
        if len(raw) != spec.ngens:
            raise ModuleError(f"expected {spec.ngens} action rows, got {len(raw)}")
    if dim is None:
        if not raw:
            raise ModuleError("dimension must be given for a spec without generators")
        dim = len(raw[0])
    rows = []
    for name, r in zip(spec.generators, raw):
        if len(r) != dim:
            raise ModuleError(f"row for {name} has length {len(r)}, expected {dim}")
        for v in r:
            if not isinstance(v, int) or not 0 <= v <= dim:
                raise ModuleError(f"row for {name} has entry {v!r} outside 0..{dim}")
        rows.append((0, *r))
    rows = tuple(rows)
    bad = relation_violation(spec, rows, dim)
    if bad is not None:
        (lhs, rhs), x = bad
        raise ModuleError(
            f"relation {spec.word_text(lhs)} = {spec.word_text(rhs)} fails at element {x}"
        )
    return AModule(spec, dim, rows)


def zero_module(spec: SemigroupSpec) -> AModule:
    return AModule(spec, 0, tuple((0,) for _ in spec.generators))


def expanded_action(m: AModule) -> dict:
    """Full action of every element of a finite spec, as element index -> image tuple."""
    spec = m.spec
    if not spec.is_finite:
        raise SpecError("expanded action needs a finite multiplication table")
    out = {spec.zero: (0,) * (m.dim + 1)}
    for e, word in spec.witnesses.items():
        out[e] = tuple(m.act_word(word, x) for x in range(m.dim + 1))
    return out


# -- structure ----------------------------------------------------------

def _same_spec(m: AModule, n: AModule):
    if m.spec != n.spec:
        raise SpecError(f"modules over different semigroups ({m.spec.text} vs {n.spec.text})")


def direct_sum(m: AModule, n: AModule) -> AModule:
    _same_spec(m, n)
    d = m.dim
    rows = tuple(
        rm + tuple(0 if v == 0 else v + d for v in rn[1:])
        for rm, rn in zip(m.rows, n.rows)
    )
    return AModule(m.spec, m.dim + n.dim, rows)


def direct_sum_all(spec: SemigroupSpec, modules) -> AModule:
    out = zero_module(spec)
    for m in modules:
        out = direct_sum(out, m)
    return out


def components(m: AModule) -> list[list[int]]:
    """Connected components of the undirected action graph, sorted by smallest element."""
    parent = list(range(m.dim + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in m.rows:
        for x in m.elements:
            y = row[x]
            if y:
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in m.elements:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda c: c[0])


def is_indecomposable(m: AModule) -> bool:
    return len(components(m)) == 1


def restrict(m: AModule, mask: int) -> AModule:
    """The submodule on a closed subset, relabeled in increasing order."""
    keep = mask_elements(mask)
    new = {0: 0}
    for i, x in enumerate(keep, 1):
        new[x] = i
    rows = []
    for row in m.rows:
        r = [0]
        for x in keep:
            y = row[x]
            if y not in new:
                raise ModuleError(f"subset is not closed: {x} maps outside it")
            r.append(new[y])
        rows.append(tuple(r))
    return AModule(m.spec, len(keep), tuple(rows))


def decompose(m: AModule) -> list[AModule]:
    return [restrict(m, elements_mask(c)) for c in components(m)]


def successor_masks(m: AModule) -> list[int]:
    """For each element x, the mask of its nonzero images g.x."""
    out = [0] * (m.dim + 1)
    for row in m.rows:
        for x in m.elements:
            y = row[x]
            if y:
                out[x] |= 1 << (y - 1)
    return out


def is_closed(m: AModule, mask: int) -> bool:
    succ = successor_masks(m)
    return all(succ[x] & ~mask == 0 for x in mask_elements(mask))


def submodules(m: AModule) -> list[int]:
    """All action-closed subsets, ordered by size then mask value."""
    succ = successor_masks(m)
    out = []
    for mask in range(1 << m.dim):
        ok = True
        s, x = mask, 1
        while s:
            if s & 1 and succ[x] & ~mask:
                ok = False
                break
            s >>= 1
            x += 1
        if ok:
            out.append(mask)
    out.sort(key=lambda s: (bin(s).count("1"), s))
    return out


def quotient(m: AModule, mask: int) -> AModule:
    """M/N: elements of N collapse onto the basepoint."""
    if not is_closed(m, mask):
        raise ModuleError("cannot take a quotient by a non-closed subset")
    keep = [x for x in m.elements if not mask >> (x - 1) & 1]
    new = {x: i for i, x in enumerate(keep, 1)}
    rows = tuple(
        (0, *(new.get(row[x], 0) for x in keep)) for row in m.rows
    )
    return AModule(m.spec, len(keep), rows)


def is_nilpotent(m: AModule) -> bool:
    """Every long enough word kills every element (the action graph has no cycle)."""
    succ = [[row[x] for row in m.rows if row[x]] for x in range(m.dim + 1)]
    state = [0] * (m.dim + 1)
    for start in m.elements:
        if state[start]:
            continue
        stack = [(start, iter(succ[start]))]
        state[start] = 1
        while stack:
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                state[x] = 2
                stack.pop()
            elif state[y] == 1:
                return False
            elif state[y] == 0:
                state[y] = 1
                stack.append((y, iter(succ[y])))
    return True


# -- base change --------------------------------------------------------

@dataclass(frozen=True)
class LinearizedModule:
    generators: tuple[str, ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def matrix(self, name: str):
        return self.matrices[self.generators.index(name)]


def linearize(m: AModule) -> LinearizedModule:
    """0/1 matrices over Z: column x of g's matrix is e_{g.x}, or zero when g.x = *."""
    mats = []
    for row in m.rows:
        mat = [[0] * m.dim for _ in range(m.dim)]
        for x in m.elements:
            if row[x]:
                mat[row[x] - 1][x - 1] = 1
        mats.append(tuple(tuple(r) for r in mat))
    return LinearizedModule(m.spec.generators, tuple(mats))


def matrix_of_map(images, dim: int):
    mat = [[0] * dim for _ in range(dim)]
    for x in range(1, dim + 1):
        if images[x]:
            mat[images[x] - 1][x - 1] = 1
    return mat


# -- morphisms ----------------------------------------------------------

@dataclass(frozen=True)
class ModuleMorphism:
    dom: AModule
    cod: AModule
    map: tuple[int, ...]


def validate_morphism(dom: AModule, cod: AModule, images) -> ModuleMorphism:
    """``images`` lists f(1..dim(dom)); f(0) = 0 is implied."""
    _same_spec(dom, cod)
    images = list(images)
    if len(images) != dom.dim:
        raise MorphismError(f"map needs {dom.dim} images, got {len(images)}")
    if any(not 0 <= v <= cod.dim for v in images):
        raise MorphismError("map image outside the codomain")
    f = (0, *images)
    for g, name in enumerate(dom.spec.generators):
        for x in dom.elements:
            if f[dom.rows[g][x]] != cod.rows[g][f[x]]:
                raise MorphismError(
                    f"map is not equivariant: f({name}.{x}) = {f[dom.rows[g][x]]} "
                    f"but {name}.f({x}) = {cod.rows[g][f[x]]}"
                )
    return ModuleMorphism(dom, cod, f)


def kernel_image_cokernel(f: ModuleMorphism):
    kernel = elements_mask(x for x in f.dom.elements if f.map[x] == 0)
    image = elements_mask(f.map[x] for x in f.dom.elements if f.map[x])
    return kernel, image, quotient(f.cod, image)


def is_normal(f: ModuleMorphism) -> bool:
    """Every fibre over a nonzero element has at most one point."""
    hit = [f.map[x] for x in f.dom.elements if f.map[x]]
    return len(hit) == len(set(hit))
