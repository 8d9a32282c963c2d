import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from f1hall.encoding import parse_spec
from f1hall.module import AModule, validate_module
from f1hall.semigroup import build_free_monoid

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FREE1 = build_free_monoid(1)


@pytest.fixture(scope="session")
def free1():
    return FREE1


@pytest.fixture(scope="session")
def z2():
    return parse_spec("gz:z2")


def mod(text, spec=FREE1):
    """Shorthand: one-generator module from its row, e.g. mod([2, 0])."""
    if isinstance(text, (list, tuple)):
        return validate_module(spec, [list(text)])
    from f1hall.encoding import parse_operand
    return parse_operand(spec, text)


@st.composite
def free1_modules(draw, min_dim=0, max_dim=6):
    d = draw(st.integers(min_dim, max_dim))
    row = draw(st.lists(st.integers(0, d), min_size=d, max_size=d))
    return AModule(FREE1, d, ((0, *row),))


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(1, n + 1))))


def brute_force_key(m):
    """Independent class invariant: lexicographically least relabeled row tuple."""
    best = None
    for perm in itertools.permutations(range(1, m.dim + 1)):
        f = (0, *perm)
        inv = [0] * (m.dim + 1)
        for x in range(1, m.dim + 1):
            inv[f[x]] = x
        enc = tuple(tuple(f[row[inv[y]]] for y in range(1, m.dim + 1)) for row in m.rows)
        if best is None or enc < best:
            best = enc
    return best


# one invocation per command, shared by the CLI tests and the acceptance suite
CLI_INVOCATIONS = [
    ["enumerate", "--dim", "3"],
    ["enumerate", "--spec", "gz:z2", "--dim", "4", "--format", "csv"],
    ["decompose", "--module", "4; t:[0,1,4,3]"],
    ["submodules", "--module", "(()())", "--format", "md"],
    ["product", "--left", "1;t:[0]", "--right", "1;t:[0]"],
    ["coproduct", "--module", "2; t:[0,0]"],
    ["antipode", "--module", "2; t:[0,0]"],
    ["bracket", "--left", "1;t:[0]", "--right", "1;t:[1]"],
    ["table", "--max-dim", "2"],
    ["axioms", "--spec", "tcong:2,0", "--max-dim", "3"],
    ["pbw", "--max-dim", "3"],
    ["k0", "--spec", "tcong:1,0", "--max-dim", "3"],
    ["classify", "--module", "3; t:[1,1,2]"],
    ["cuts", "--forest", "((()))"],
    ["kreimer", "--forest", "(()())"],
    ["duality", "--max-vertices", "4"],
    ["smash", "--left", "(()())", "--right", "(()())"],
    ["tensor", "--left", "(()())", "--right", "((()))"],
    ["cartesian", "--left", "1;t:[0]", "--right", "1;t:[0]"],
    ["reptable", "--spec", "gz:z2", "--max-dim", "2"],
    ["burnside", "--group", "s3", "--format", "md"],
    ["paper-examples"],
]
