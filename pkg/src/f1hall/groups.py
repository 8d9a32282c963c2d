"""Finite groups given by multiplication tables, and their subgroup lattices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BoundError, SpecError

MAX_GROUP_ORDER = 24


@dataclass(frozen=True)
class GroupTable:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    generators: tuple[str, ...] | None = None
    label: str = "table"

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        row = self.table[a]
        return row.index(self.identity)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))


def make_group(names, table, generators=None, label="table") -> GroupTable:
    """Validate a group table and locate its identity.

    Raises SpecError for non-square, non-associative or non-invertible tables.
    """
    names = tuple(str(x) for x in names)
    n = len(names)
    if n == 0:
        raise SpecError("a group needs at least one element")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SpecError(f"group table must be {n}x{n}")
    if any(not 0 <= v < n for r in rows for v in r):
        raise SpecError("group table entry out of range")
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise SpecError(f"group table is not associative at ({names[a]}, {names[b]}, {names[c]})")
    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise SpecError("group table has no identity element")
    for a in range(n):
        if ident not in rows[a] or sorted(rows[a]) != list(range(n)):
            raise SpecError(f"element {names[a]} has no inverse")
    if generators is not None:
        generators = tuple(generators)
        for g in generators:
            if g not in names:
                raise SpecError(f"unknown group generator {g!r}")
    return GroupTable(names, rows, ident, generators, label)


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise SpecError("cyclic group order must be positive")
    names = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_group(names, table, generators=("g",) if n > 1 else (), label=f"z{n}")


def symmetric_group(n: int) -> GroupTable:
    """S_n on {0..n-1}; product is composition, (p*q)(i) = p(q(i))."""
    if not 1 <= n <= 4:
        raise SpecError("built-in symmetric groups are S1..S4")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    names = ["p" + "".join(map(str, p)) for p in perms]
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    gens = []
    if n >= 2:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        gens.append(names[index[tuple(swap)]])
    if n >= 3:
        cycle = tuple((i + 1) % n for i in range(n))
        gens.append(names[index[cycle]])
    return make_group(names, table, generators=tuple(gens), label=f"s{n}")


def builtin_group(name: str) -> GroupTable:
    name = name.strip().lower()
    if name.startswith("z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("s") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise SpecError(f"unknown built-in group {name!r} (use zN or s1..s4)")


def _closure(g: GroupTable, elements) -> frozenset[int]:
    members = {g.identity, *elements}
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in list(members):
                for c in (g.mul(a, b), g.mul(b, a)):
                    if c not in members:
                        members.add(c)
                        new.append(c)
        frontier = new
    return frozenset(members)


def all_subgroups(g: GroupTable) -> list[frozenset[int]]:
    if g.order > MAX_GROUP_ORDER:
        raise BoundError(f"group order {g.order} exceeds bound {MAX_GROUP_ORDER}")
    seen = {frozenset([g.identity])}
    frontier = list(seen)
    while frontier:
        new = []
        for h in frontier:
            for x in range(g.order):
                if x not in h:
                    k = _closure(g, h | {x})
                    if k not in seen:
                        seen.add(k)
                        new.append(k)
        frontier = new
    return sorted(seen, key=lambda h: (len(h), sorted(h)))


def conjugate(g: GroupTable, x: int, h) -> frozenset[int]:
    xi = g.inverse(x)
    return frozenset(g.mul(g.mul(x, a), xi) for a in h)


@dataclass(frozen=True)
class SubgroupClass:
    representative: frozenset[int]
    class_size: int
    label: str

    @property
    def order(self) -> int:
        return len(self.representative)


def conjugacy_classes_of_subgroups(g: GroupTable) -> list[SubgroupClass]:
    """Subgroups up to conjugacy, ordered by size then by sorted element set."""
    remaining = all_subgroups(g)
    classes = []
    while remaining:
        h = remaining[0]
        orbit = {conjugate(g, x, h) for x in range(g.order)}
        rep = min(orbit, key=lambda s: sorted(s))
        classes.append((rep, len(orbit)))
        remaining = [k for k in remaining if k not in orbit]
    classes.sort(key=lambda c: (len(c[0]), sorted(c[0])))
    out = []
    for i, (rep, size) in enumerate(classes):
        out.append(SubgroupClass(rep, size, f"H{i}[{len(rep)}]"))
    return out


def left_cosets(g: GroupTable, h) -> list[frozenset[int]]:
    """Left cosets xH, ordered by their smallest element."""
    cosets = {frozenset(g.mul(x, a) for a in h) for x in range(g.order)}
    return sorted(cosets, key=min)


def find_subgroup_class(g: GroupTable, classes: list[SubgroupClass], h) -> int:
    h = frozenset(h)
    for i, c in enumerate(classes):
        if len(c.representative) != len(h):
            continue
        if any(conjugate(g, x, c.representative) == h for x in range(g.order)):
            return i
    raise SpecError("subgroup not found among conjugacy classes")
