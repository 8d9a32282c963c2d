import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import FREE1, brute_force_key, free1_modules, mod
from f1hall.canon import (
    ZERO_KEY,
    brute_force_isomorphic,
    canonical_form,
    is_isomorphic,
    key_components,
    key_dim,
    key_of,
    module_from_key,
    relabel_module,
)
from f1hall.encoding import parse_spec
from f1hall.enumeration import enumerate_modules, raw_modules
from f1hall.errors import SpecError
from f1hall.module import AModule, zero_module


def shuffled(m, perm):
    """Relabel element x as perm[x - 1]."""
    f = (0, *perm)
    inv = [0] * (m.dim + 1)
    for x in range(1, m.dim + 1):
        inv[f[x]] = x
    rows = tuple((0, *(f[row[inv[y]]] for y in range(1, m.dim + 1))) for row in m.rows)
    return AModule(m.spec, m.dim, rows)


def test_ladder_labelings_agree():
    assert key_of(mod([2, 0])) == key_of(mod([0, 1]))


def test_dot_and_loop_differ():
    assert key_of(mod([0])) != key_of(mod([1]))
    assert not is_isomorphic(mod([0]), mod([1]))


def test_zero_module_key():
    assert key_of(zero_module(FREE1)) == ZERO_KEY == "0|"


def test_key_shape():
    key = key_of(mod([2, 0]))
    assert key == "2|t:2,0"
    assert key_dim(key) == 2
    assert key_components(key) == [key]


def test_decomposable_key_joins_sorted_components():
    key = key_of(mod([0, 3, 0]))
    assert key_components(key) == sorted(key_components(key))
    assert len(key_components(key)) == 2


def test_is_isomorphic_spec_mismatch():
    with pytest.raises(SpecError):
        is_isomorphic(mod([0]), zero_module(parse_spec("free:2")))


def test_relabeling_witness():
    m = mod([3, 3, 0, 1])
    key, relabel = canonical_form(m)
    assert key_of(relabel_module(m, relabel)) == key
    assert sorted(relabel) == list(range(m.dim + 1))


@given(free1_modules(max_dim=6), st.randoms(use_true_random=False))
def test_key_invariant_under_relabeling(m, rnd):
    perm = list(range(1, m.dim + 1))
    rnd.shuffle(perm)
    assert key_of(shuffled(m, perm)) == key_of(m)


@pytest.mark.parametrize("seed", range(10))
def test_permutation_fuzzing_dim6(seed):
    rnd = random.Random(seed)
    d = 6
    m = AModule(FREE1, d, ((0, *(rnd.randint(0, d) for _ in range(d))),))
    for _ in range(5):
        perm = list(range(1, d + 1))
        rnd.shuffle(perm)
        assert key_of(shuffled(m, perm)) == key_of(m)


def test_permutation_fuzzing_two_generators():
    s = parse_spec("free:2")
    rnd = random.Random(7)
    for _ in range(30):
        d = rnd.randint(1, 6)
        m = AModule(s, d, tuple((0, *(rnd.randint(0, d) for _ in range(d))) for _ in range(2)))
        perm = list(range(1, d + 1))
        rnd.shuffle(perm)
        assert key_of(shuffled(m, perm)) == key_of(m)


@given(free1_modules(max_dim=5))
def test_module_from_key_round_trip(m):
    key = key_of(m)
    assert key_of(module_from_key(FREE1, key)) == key


@pytest.mark.parametrize("dim", range(1, 6))
def test_distinct_keys_are_not_isomorphic(dim):
    keys = enumerate_modules(FREE1, dim)
    mods = [module_from_key(FREE1, k) for k in keys]
    invariants = [brute_force_key(m) for m in mods]
    assert len(set(invariants)) == len(keys)


@pytest.mark.parametrize("dim", range(1, 5))
def test_raw_modules_land_on_their_class(dim):
    """Equal key iff an equivariant bijection exists, checked on every raw module."""
    by_invariant = {}
    for rows in raw_modules(FREE1, dim):
        m = AModule(FREE1, dim, rows)
        by_invariant.setdefault(brute_force_key(m), set()).add(key_of(m))
    assert all(len(v) == 1 for v in by_invariant.values())
    assert len(by_invariant) == len(enumerate_modules(FREE1, dim))


def test_brute_force_oracle_on_group_modules():
    s = parse_spec("gz:z2")
    keys = enumerate_modules(s, 4)
    mods = [module_from_key(s, k) for k in keys]
    for a, b in itertools.combinations(mods, 2):
        assert not brute_force_isomorphic(a, b)
    for rows in raw_modules(s, 3):
        m = AModule(s, 3, rows)
        target = module_from_key(s, key_of(m))
        assert brute_force_isomorphic(m, target)
