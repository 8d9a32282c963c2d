import itertools

import pytest
from hypothesis import given, strategies as st

from f1hall.errors import SpecError
from f1hall.groups import cyclic_group, make_group, symmetric_group
from f1hall.semigroup import (
    FREE,
    GROUP,
    PATH,
    TCONG,
    Quiver,
    build_finite_table,
    build_free_monoid,
    build_group_with_zero,
    build_path_semigroup,
    build_t_congruence,
)

JORDAN = build_path_semigroup(Quiver(1, ((1, 1),)))
A2 = build_path_semigroup(Quiver(2, ((1, 2),), edge_names=("a",)))


def all_finite_specs():
    return [
        build_t_congruence(2),
        build_t_congruence(3),
        build_t_congruence(3, 1),
        build_t_congruence(4, 1),
        build_t_congruence(3, 0),
        build_t_congruence(1),
        build_group_with_zero(cyclic_group(2)),
        build_group_with_zero(symmetric_group(3)),
        A2,
    ]


# -- free monoids -----------------------------------------------------------------

def test_free_monoid_one_generator():
    s = build_free_monoid(1)
    assert s.kind == FREE
    assert s.generators == ("t",)
    assert s.relations == ()
    assert s.has_unit


def test_free_monoid_evaluates_powers():
    s = build_free_monoid(1)
    assert s.evaluate_word(["t", "t", "t"]) == "t^3"
    assert s.evaluate_word([]) == "1"


def test_free_monoid_two_generators_keeps_words():
    s = build_free_monoid(2)
    assert s.generators == ("x1", "x2")
    assert s.evaluate((0, 1)) != s.evaluate((1, 0))
    assert not s.is_commutative()


def test_free_monoid_rejects_zero_generators():
    with pytest.raises(SpecError):
        build_free_monoid(0)


# -- congruence quotients of <t> ----------------------------------------------------

def test_tcong_nilpotent_square():
    s = build_t_congruence(2)
    assert s.kind == TCONG
    assert set(s.elements) == {"0", "1", "t"}
    assert s.evaluate_word(["t", "t"]) == "0"


def test_tcong_cube_is_t():
    s = build_t_congruence(3, 1)
    assert set(s.elements) == {"0", "1", "t", "t^2"}
    assert s.evaluate_word(["t", "t", "t"]) == "t"


def test_tcong_table_is_associative_everywhere():
    s = build_t_congruence(3)
    n = len(s.elements)
    tab = s.table
    bad = [(a, b, c) for a, b, c in itertools.product(range(n), repeat=3)
           if tab[tab[a][b]][c] != tab[a][tab[b][c]]]
    assert n == 4 and bad == []


def test_tcong_rejects_identity_congruence():
    with pytest.raises(SpecError):
        build_t_congruence(3, 3)


def test_tcong_unit_variant():
    s = build_t_congruence(3, 0)
    assert s.evaluate_word(["t", "t", "t"]) == "1"
    assert s.text == "tcong:3,t0"


def test_tcong_reingested_table_keeps_fingerprint():
    s = build_t_congruence(3, 1)
    again = build_finite_table(s.elements, s.table, s.zero, s.unit, generators=[("t", "t")])
    assert again.fingerprint == s.fingerprint


# -- finite tables --------------------------------------------------------------------

def test_field_with_one_element():
    s = build_finite_table(["0", "1"], [[0, 0], [0, 1]], 0, 1)
    assert s.generators == ()
    assert s.has_unit


def test_non_associative_table_rejected():
    # a*a = b, b*a = 0 but a*b = a: (a a) a = 0 while a (a a) = a
    table = [[0, 0, 0], [0, 2, 1], [0, 0, 0]]
    with pytest.raises(SpecError, match="associative"):
        build_finite_table(["0", "a", "b"], table, 0)


def test_non_absorbing_zero_rejected():
    with pytest.raises(SpecError, match="absorbing"):
        build_finite_table(["0", "a"], [[0, 1], [0, 1]], 0)


def test_generators_must_generate():
    s = build_t_congruence(3)
    with pytest.raises(SpecError, match="generate"):
        build_finite_table(s.elements, s.table, s.zero, s.unit, generators=["t^2"])


def test_fingerprint_stable_across_rebuilds():
    assert build_t_congruence(4, 1).fingerprint == build_t_congruence(4, 1).fingerprint
    assert build_t_congruence(4, 1).fingerprint != build_t_congruence(4, 2).fingerprint


# -- path semigroups ---------------------------------------------------------------------

def test_jordan_powers():
    assert JORDAN.kind == PATH
    assert JORDAN.generators == ("v", "e")
    assert JORDAN.evaluate_word(["e", "e"]) == "e^2"
    assert not JORDAN.is_finite


def test_jordan_vertex_is_absorbed():
    assert JORDAN.evaluate_word(["e", "v", "e"]) == "e^2"


@pytest.mark.parametrize("a", range(1, 9))
def test_jordan_is_free_on_e(a):
    for b in range(1, 9):
        lhs = JORDAN.evaluate_word(["e"] * a + ["e"] * b)
        assert lhs == (f"e^{a + b}")


def test_a2_products():
    assert A2.is_finite
    assert A2.evaluate_word(["a", "a"]) == "0"
    assert A2.evaluate_word(["v1", "a"]) == "a"
    assert A2.evaluate_word(["a", "v1"]) == "0"
    assert A2.evaluate_word(["a", "v2"]) == "a"


def test_path_relations_have_four_families():
    q = Quiver(2, ((1, 2),), edge_names=("a",))
    s = build_path_semigroup(q)
    # v_i v_j for all ordered pairs, then e v_i and v_i e for each vertex
    assert len(s.relations) == 4 + 2 + 2


def test_quiver_endpoint_checked():
    with pytest.raises(SpecError):
        Quiver(1, ((1, 2),))


# -- groups with zero ---------------------------------------------------------------------

def test_z2_with_zero():
    s = build_group_with_zero(cyclic_group(2))
    assert s.kind == GROUP
    assert len(s.elements) == 3
    assert s.evaluate_word(["g", "g"]) == "e"


def test_s3_with_zero_has_seven_elements():
    assert len(build_group_with_zero(symmetric_group(3)).elements) == 7


def test_non_group_table_rejected():
    with pytest.raises(SpecError):
        make_group(["e", "a"], [[0, 1], [1, 1]])


# -- properties shared by all finite specs -----------------------------------------------------

@pytest.mark.parametrize("spec", all_finite_specs(), ids=lambda s: s.text)
def test_zero_absorbs_and_table_associates(spec):
    n = len(spec.elements)
    t, z = spec.table, spec.zero
    assert all(t[z][a] == z and t[a][z] == z for a in range(n))
    assert all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in itertools.product(range(n), repeat=3))


@pytest.mark.parametrize("spec", all_finite_specs(), ids=lambda s: s.text)
def test_witness_words_evaluate_to_their_element(spec):
    for element, word in spec.witnesses.items():
        value = spec.evaluate(word) if word else spec.unit
        assert spec.element_name(value) == spec.elements[element]


@given(st.lists(st.integers(0, 1), max_size=10))
def test_tcong_evaluation_matches_exponent_arithmetic(word):
    s = build_t_congruence(5, 2)
    k = len(word)
    # exponent k reduces to k when k < 5, otherwise to 2 + (k - 2) % 3
    expected = k if k < 5 else 2 + (k - 2) % 3
    name = s.evaluate_word(["t"] * k)
    assert name == ("1" if expected == 0 else "t" if expected == 1 else f"t^{expected}")
