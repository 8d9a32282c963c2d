import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import FREE1, brute_force_key, mod
from f1hall.canon import ZERO_KEY, join_keys, key_components, key_dim, key_of, module_from_key
from f1hall.encoding import parse_spec
from f1hall.enumeration import classes_up_to
from f1hall.errors import SpecError
from f1hall.hall import (
    HallElement,
    antipode,
    coproduct,
    counit,
    hall_number,
    k0_truncated,
    lie_bracket,
    product_basis,
    product_basis_scan,
    product_of,
    verify_hopf_axioms,
    verify_pbw,
)
from f1hall.module import AModule, mask_elements, zero_module

DOT = mod([0])
C1 = mod([1])
L2 = mod([2, 0])
DD = mod([0, 0])
CYCLE2 = mod([2, 1])
LOOP_TAIL = mod([1, 1])

K = key_of


def d(m, c=1):
    return HallElement.of(m, c)


def brute_hall_number(r, m, n):
    """Scan every subset of R, test closure, compare classes by permutation scan."""
    count = 0
    for mask in range(1 << r.dim):
        inside = set(mask_elements(mask))
        if any(row[x] and row[x] not in inside for row in r.rows for x in inside):
            continue
        order_in = sorted(inside)
        order_out = [x for x in range(1, r.dim + 1) if x not in inside]
        pos_in = {x: i + 1 for i, x in enumerate(order_in)}
        pos_out = {x: i + 1 for i, x in enumerate(order_out)}
        sub = AModule(r.spec, len(order_in), tuple((0, *(pos_in.get(row[x], 0) for x in order_in)) for row in r.rows))
        quo = AModule(r.spec, len(order_out), tuple((0, *(pos_out.get(row[x], 0) for x in order_out)) for row in r.rows))
        if brute_force_key(sub) == brute_force_key(n) and brute_force_key(quo) == brute_force_key(m):
            count += 1
    return count


# -- structure constants ----------------------------------------------------------------

def test_hall_number_examples():
    assert hall_number(L2, DOT, DOT) == 1
    assert hall_number(DD, DOT, DOT) == 2
    assert hall_number(CYCLE2, DOT, DOT) == 0


def test_hall_number_dimension_mismatch_is_zero():
    assert hall_number(L2, DOT, L2) == 0


def test_hall_number_spec_mismatch():
    with pytest.raises(SpecError):
        hall_number(DOT, DOT, zero_module(parse_spec("free:2")))


@pytest.mark.parametrize("kr", classes_up_to(FREE1, 4)[1:], ids=str)
def test_hall_numbers_match_subset_scan(kr):
    r = module_from_key(FREE1, kr)
    for km in classes_up_to(FREE1, r.dim):
        for kn in classes_up_to(FREE1, r.dim):
            m, n = module_from_key(FREE1, km), module_from_key(FREE1, kn)
            if m.dim + n.dim != r.dim:
                continue
            assert hall_number(r, m, n) == brute_hall_number(r, m, n)


def test_dot_squared():
    assert d(DOT) * d(DOT) == d(DD, 2) + d(L2)


def test_zero_class_is_unit():
    x = d(L2, 3) + d(C1, Fraction(-1, 2))
    one = HallElement.one(FREE1)
    assert one * x == x == x * one


def test_product_needs_same_spec():
    with pytest.raises(SpecError):
        d(DOT) * HallElement.one(parse_spec("free:2"))


def test_linear_combinations():
    x = d(DOT) + d(C1)
    assert x * d(DOT) == d(DOT) * d(DOT) + d(C1) * d(DOT)
    assert (x - x).coeffs == {}


@pytest.mark.parametrize("text,max_dim", [("free:1", 4), ("gz:z2", 3), ("tcong:3,1", 3)])
def test_gluing_product_equals_full_scan(text, max_dim):
    spec = parse_spec(text)
    classes = classes_up_to(spec, max_dim)
    for km, kn in itertools.product(classes, repeat=2):
        if key_dim(km) + key_dim(kn) <= max_dim:
            scan = product_basis_scan(spec, km, kn) if km != ZERO_KEY and kn != ZERO_KEY else product_basis(spec, km, kn)
            assert product_basis(spec, km, kn) == scan


# -- coproduct, counit, antipode -----------------------------------------------------------

def test_coproduct_of_primitive():
    t = coproduct(d(DOT))
    assert t.coeffs == {(K(DOT), ZERO_KEY): 1, (ZERO_KEY, K(DOT)): 1}


def test_coproduct_of_two_dots():
    t = coproduct(d(DD))
    assert t.coeffs == {(K(DD), ZERO_KEY): 1, (K(DOT), K(DOT)): 1, (ZERO_KEY, K(DD)): 1}


def test_counit():
    assert counit(HallElement.one(FREE1)) == 1
    assert counit(d(DOT)) == 0


def test_antipode_examples():
    assert antipode(d(DOT)) == d(DOT, -1)
    assert antipode(d(DD)) == d(DD) + d(L2)
    assert antipode(HallElement.one(FREE1)) == HallElement.one(FREE1)


def test_antipode_axiom_grade_two():
    total = HallElement(FREE1)
    for (a, b), v in coproduct(d(DD)).items():
        total = total + antipode(HallElement.delta(FREE1, a)) * HallElement.delta(FREE1, b) * v
    assert not total


def ordered_splits(components, k):
    """Ordered k-tuples of nonempty sub-multisets whose union is the given multiset."""
    counts = Counter(components)
    names = sorted(counts)
    out = set()

    def rec(i, blocks):
        if i == len(names):
            if all(blocks):
                out.add(tuple(join_keys(b) for b in blocks))
            return
        c = names[i]
        for dist in itertools.product(range(counts[c] + 1), repeat=k):
            if sum(dist) == counts[c]:
                rec(i + 1, [b + [c] * n for b, n in zip(blocks, dist)])

    rec(0, [[] for _ in range(k)])
    return out


def takeuchi_antipode(spec, key):
    """S = sum_k (-1)^k m^(k) reduced-coproduct^(k), written out over ordered splittings."""
    comps = key_components(key)
    out = HallElement(spec)
    for k in range(1, len(comps) + 1):
        for blocks in ordered_splits(comps, k):
            out = out + product_of(spec, blocks) * (-1) ** k
    return out


@pytest.mark.parametrize("text,max_dim", [("free:1", 4), ("tcong:2,0", 4), ("gz:z2", 4)])
def test_antipode_matches_takeuchi_formula(text, max_dim):
    spec = parse_spec(text)
    for key in classes_up_to(spec, max_dim)[1:]:
        assert antipode(HallElement.delta(spec, key)) == takeuchi_antipode(spec, key)


@given(st.sampled_from(classes_up_to(FREE1, 3)), st.sampled_from(classes_up_to(FREE1, 3)))
def test_coproduct_is_multiplicative(ka, kb):
    a, b = HallElement.delta(FREE1, ka), HallElement.delta(FREE1, kb)
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


# -- brackets -----------------------------------------------------------------------------

def test_bracket_with_self_vanishes():
    assert not lie_bracket(FREE1, DOT, DOT)


def test_bracket_dot_loop():
    assert lie_bracket(FREE1, DOT, C1) == d(LOOP_TAIL)
    assert d(DOT) * d(C1) == d(mod([1, 0])) + d(LOOP_TAIL)
    assert d(C1) * d(DOT) == d(mod([1, 0]))


def test_group_brackets_vanish():
    z2 = parse_spec("gz:z2")
    ind = classes_up_to(z2, 4, "indecomposable")[1:]
    for a, b in itertools.product(ind, repeat=2):
        assert not lie_bracket(z2, a, b)


def test_bracket_rejects_decomposable():
    with pytest.raises(SpecError):
        lie_bracket(FREE1, DD, DOT)


@pytest.mark.parametrize("pair", list(itertools.combinations(classes_up_to(FREE1, 3, "indecomposable")[1:], 2)), ids=str)
def test_brackets_are_primitive(pair):
    b = lie_bracket(FREE1, *pair)
    assert all(len(key_components(k)) == 1 for k in b.coeffs)


# -- verification suites ---------------------------------------------------------------------

@pytest.mark.parametrize("text", ["free:1", "gz:z2", "tcong:2,0", "tcong:3,1"])
def test_hopf_axioms_grade_three(text):
    rep = verify_hopf_axioms(parse_spec(text), 3)
    assert rep.passed, rep.to_dict()


def test_group_algebra_is_commutative():
    z2 = parse_spec("gz:z2")
    classes = classes_up_to(z2, 4)
    for a, b in itertools.product(classes, repeat=2):
        x, y = HallElement.delta(z2, a), HallElement.delta(z2, b)
        if x.grades() and y.grades() and max(x.grades()) + max(y.grades()) <= 4:
            assert x * y == y * x


def test_pbw_grade_two_spot_value():
    rep = verify_pbw(FREE1, 3)
    grade2 = rep.data["grades"][1]
    assert grade2 == {"grade": 2, "classes": 6, "indecomposables": 3, "monomials": 6, "rank": 6}
    assert rep.passed


def test_pbw_group_with_zero():
    assert verify_pbw(parse_spec("gz:z2"), 4).passed


def test_pbw_nilpotent_part():
    rep = verify_pbw(FREE1, 4, "nilpotent")
    assert rep.passed
    assert [g["classes"] for g in rep.data["grades"]] == [1, 2, 4, 9]


# -- truncated K0 ---------------------------------------------------------------------------

@pytest.mark.parametrize("max_dim", [1, 2, 3, 4])
def test_k0_pointed_sets(max_dim):
    spec = parse_spec("tcong:1,0")
    rep = k0_truncated(spec, max_dim)
    assert rep.invariant_factors == [0]
    for key in rep.classes:
        assert rep.class_images[key] == [key_dim(key)]


def test_k0_nilpotent_free1():
    rep = k0_truncated(FREE1, 3, "nilpotent")
    assert rep.invariant_factors == [0]
    assert rep.class_images[K(DOT)] == [1]


def test_k0_zero_class_alone():
    rep = k0_truncated(FREE1, 0)
    assert rep.invariant_factors == [] and rep.classes == [ZERO_KEY]


def test_k0_report_is_labeled_truncation():
    assert "truncation" in k0_truncated(FREE1, 1).to_dict()["truncation"]
