from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import float_sign
from triet.errors import DivisionByZero, FieldMismatch, LiteralSyntaxError, MixedFields
from triet.qfield import (
    FieldTag,
    LatticeWitness,
    Q,
    QuadraticNumber,
    arith,
    galois_conjugate,
    lattice_membership,
    parse_exact,
    q_independent,
    render,
    sign,
    sqrt,
)

fractions = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 60))
small = st.builds(Fraction, st.integers(-18, 18), st.integers(1, 6))


@st.composite
def numbers(draw, d=None):
    d = d or draw(st.sampled_from([2, 3, 5, 6, 7]))
    return QuadraticNumber(draw(fractions), draw(fractions), d)


def test_golden_ratio_identity():
    phi = (1 + sqrt(5)) / 2
    assert arith(phi, (sqrt(5) - 1) / 2, "mul") == 1


def test_symmetric_sum_vanishes():
    x = parse_exact("2/3 - sqrt(5)/6")
    assert arith(x, parse_exact("sqrt(5)/6 - 2/3"), "add") == 0


@given(numbers())
def test_self_difference(x):
    assert arith(x, x, "sub") == 0


def test_sign_examples():
    assert sign(parse_exact("2/3 - sqrt(5)/6")) == 1
    assert sign(Q(0)) == 0
    assert sign(1 - sqrt(2)) == -1


@given(numbers())
def test_sign_agrees_with_128_bit_evaluation(x):
    reference = float_sign(x, 128)
    if reference is not None:
        assert sign(x) == reference


def test_sign_on_tight_values():
    # 99/70 is a convergent of sqrt(2); the difference is about 7e-5
    assert sign(Q(Fraction(99, 70)) - sqrt(2)) == 1
    assert sign(Q(Fraction(1393, 985)) - sqrt(2)) == -1
    assert sign(Q(Fraction(577, 408)) - sqrt(2)) == 1
    assert sign(Q(Fraction(239, 169)) - sqrt(2)) == -1


@given(numbers(d=5), numbers(d=5), numbers(d=5))
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        arith(sqrt(2), Q(0), "div")
    with pytest.raises(DivisionByZero):
        parse_exact("1/(sqrt(2) - sqrt(2))")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        sqrt(2) + sqrt(3)
    # rationals mix with any field
    assert (sqrt(2) + Q(1)).d == 2


def test_galois_conjugate():
    assert galois_conjugate(3 + 2 * sqrt(2)) == 3 - 2 * sqrt(2)
    assert galois_conjugate(Q(Fraction(7, 3))) == Fraction(7, 3)


@given(numbers())
def test_conjugation_is_an_involution(x):
    assert galois_conjugate(galois_conjugate(x)) == x


def test_parse_examples():
    alpha = parse_exact("1/5*sqrt(5) - 1/5")
    assert (alpha.a, alpha.b, alpha.d) == (Fraction(-1, 5), Fraction(1, 5), 5)
    x = parse_exact("sqrt(8)/2")
    assert (x.a, x.b, x.d) == (0, 1, 2)
    beta = parse_exact("2/3 - sqrt(5)/6")
    assert (beta.a, beta.b) == (Fraction(2, 3), Fraction(-1, 6))
    assert parse_exact("-(1/2)") == Fraction(-1, 2)
    assert parse_exact("sqrt(4)") == 2


@pytest.mark.parametrize("bad", ["", "1/", "sqrt(-2)", "sqrt 2", "1 + + ", "2**3", "1/0.5", "(1"])
def test_parse_syntax_errors(bad):
    with pytest.raises(LiteralSyntaxError):
        parse_exact(bad)


def test_parse_mixed_fields_and_expected():
    with pytest.raises(MixedFields):
        parse_exact("sqrt(2) + sqrt(3)")
    with pytest.raises(FieldMismatch):
        parse_exact("sqrt(2)", expected=FieldTag(5))
    assert parse_exact("1/3", expected=5).d == 5


@given(numbers())
def test_parse_render_round_trip(x):
    assert parse_exact(render(x)) == x


def test_render_examples():
    assert render(parse_exact("1/5*sqrt(5) - 1/5")) == "-1/5 + 1/5*sqrt(5)"
    assert render(sqrt(5)) == "sqrt(5)"
    assert render(Q(0)) == "0"


def test_field_tag_rejects_squares():
    with pytest.raises(ValueError):
        FieldTag(8)
    with pytest.raises(ValueError):
        FieldTag(0)


def test_lattice_examples():
    assert lattice_membership(Q(Fraction(1, 2)), (3 - sqrt(2)) / 2, Q(1)) == LatticeWitness(2, 0)
    assert lattice_membership(Q(1), sqrt(2), Q(1)) == LatticeWitness(1, 0)
    alpha = (sqrt(5) - 1) / 5
    assert lattice_membership(1 - alpha, parse_exact("2/3 - sqrt(5)/6"), Q(1)) is None


@given(numbers(d=2), numbers(d=2), st.integers(-6, 6), st.integers(-6, 6))
def test_lattice_witness_is_exact(u, v, m, n):
    t = m * u + n * v
    w = lattice_membership(u, v, t)
    assert w is not None
    assert w.m * u + w.n * v == t


@given(small, small, small, small, st.integers(-4, 4))
def test_lattice_absence_cross_checked_by_brute_force(a1, b1, a2, b2, k):
    u = QuadraticNumber(a1, b1, 3)
    v = QuadraticNumber(a2, b2, 3)
    t = QuadraticNumber(Fraction(k, 2), Fraction(k, 3), 3)
    w = lattice_membership(u, v, t)
    if w is None:
        assert not any(m * u + n * v == t for m in range(-50, 51) for n in range(-50, 51))
    else:
        assert w.m * u + w.n * v == t


def test_rank_one_and_rank_zero_lattices():
    assert lattice_membership(Q(2), Q(4), Q(6)) is not None
    assert lattice_membership(Q(2), Q(4), Q(3)) is None
    assert lattice_membership(Q(0), Q(0), Q(0)) == LatticeWitness(0, 0)
    assert lattice_membership(Q(0), Q(0), Q(1)) is None


def test_q_independent():
    assert q_independent(Q(1), sqrt(2))
    assert not q_independent(Q(Fraction(1, 2)), Q(Fraction(1, 3)))
    alpha = (sqrt(5) - 1) / 5
    assert q_independent(1 - alpha, parse_exact("2/3 - sqrt(5)/6"))


def test_values_are_hashable_and_ordered():
    xs = [sqrt(2), Q(1), Q(Fraction(3, 2)), Q(0)]
    assert sorted(xs) == [Q(0), Q(1), sqrt(2), Q(Fraction(3, 2))]
    assert len({sqrt(2), 2 * sqrt(2) / 2, Q(1)}) == 2
    assert hash(Q(1)) == hash(QuadraticNumber(1, 0, 5))


def test_floor():
    assert (sqrt(2) * 10).floor() == 14
    assert (-sqrt(2)).floor() == -2
    assert Q(3).floor() == 3


def test_decimal_rendering():
    assert str(sqrt(2).to_decimal(20)) == "1.4142135623730950488"
