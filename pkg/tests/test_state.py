from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import monomials, small_rationals, states
from vsing.state import (
    FockState,
    ParseError,
    StateError,
    WhittakerParams,
    canonical,
    deserialize,
    parse_rational,
    serialize,
    state_add,
    state_scale,
)

M1 = WhittakerParams.vacuum(2)
WP = WhittakerParams(2, 1, (0, 2))


def test_additive_identity_and_inverse():
    x = FockState(WP, {(2, 1): Fraction(3, 2), (): 1})
    zero = FockState.zero(WP)
    assert state_add(x, zero) == x
    assert state_add(x, state_scale(-1, x)).is_zero()


def test_like_terms_merge():
    m = (3, 1, 1)
    a = FockState(M1, {m: Fraction(2, 3)})
    b = FockState(M1, {m: Fraction(1, 3)})
    assert state_add(a, b) == FockState(M1, {m: 1})


def test_scale():
    x = FockState(WP, {(1,): 1})
    assert state_scale(1, x) == x
    assert state_scale(0, x).is_zero()
    assert state_scale(Fraction(1, 2), x).coeff((1,)) == Fraction(1, 2)


def test_mismatch_is_a_domain_error():
    with pytest.raises(StateError):
        FockState.cyclic(M1) + FockState.cyclic(WP)
    with pytest.raises(StateError):
        FockState.cyclic(M1) + FockState.cyclic(M1, charge=-1)


def test_no_floats():
    with pytest.raises(TypeError):
        FockState(M1, {(): 0.5})


@given(st.permutations([3, 1, 2, 1, 5]))
def test_monomial_canonical_form(perm):
    assert canonical(perm) == (5, 3, 2, 1, 1)
    assert FockState(M1, {tuple(perm): 1}) == FockState(M1, {(5, 3, 2, 1, 1): 1})


@given(small_rationals, small_rationals, small_rationals)
def test_rational_arithmetic_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(states(WP), states(WP), states(WP), small_rationals)
def test_vector_space_laws(x, y, z, c):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert c * (x + y) == c * x + c * y
    assert all(v != 0 for _, v in (x + y).items())


def test_serialize_format_examples():
    zero = FockState.zero(M1)
    text = serialize(zero)
    assert "terms {}" in text
    assert deserialize(text) == zero
    vac = serialize(FockState.cyclic(M1))
    assert "[] 1/1" in vac
    s = serialize(FockState(M1, {(2, 1): Fraction(3, 2)}))
    assert s.splitlines() == [
        "vsing-state v1", "p 2", "r 0", "zeta 0/1", "charge 0", "terms {", "[2,1] 3/2", "}"]


def test_serialize_orders_terms_lexicographically():
    x = FockState(WP, {(3,): 1, (1, 1): 2, (): 5, (2, 1): -1}, charge=-1)
    lines = serialize(x).splitlines()
    body = lines[lines.index("terms {") + 1:-1]
    assert [ln.split()[0] for ln in body] == ["[]", "[1,1]", "[2,1]", "[3]"]
    assert "charge -1" in lines


@given(states(WhittakerParams(3, 2, (Fraction(1, 2), -1, 3)), max_weight=6, max_terms=6))
def test_roundtrip(x):
    text = serialize(x)
    assert deserialize(text) == x
    assert serialize(deserialize(text)) == text


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("vsing-state v2\n", 1),
    ("vsing-state v1\np x\n", 2),
    ("vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterms {\n[1,2] 1/1\n}\n", 7),
    ("vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterms {\n[2] 1/0\n}\n", 7),
    ("vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterms {\n[2] 1.5\n}\n", 7),
    ("vsing-state v1\np 2\nr 1\nzeta 0/1\ncharge 0\nterms {}\n", 2),
    ("vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterms {\n[2] 1/1\n", 8),
])
def test_parse_errors_carry_position(text, line):
    with pytest.raises(ParseError) as exc:
        deserialize(text)
    assert exc.value.line == line


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("4") == 4
    for bad in ("1.5", "1/0", "a"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_params_validation():
    with pytest.raises(ValueError):
        WhittakerParams(1, 0, (0,))
    with pytest.raises(ValueError):
        WhittakerParams(2, 2, (0, 1))
    with pytest.raises(ValueError):
        WhittakerParams(2, 1, (1, 0)).require_whittaker()


@given(monomials(8))
def test_monomial_weight(m):
    assert FockState(M1, {m: 1}).max_weight() == sum(m)
