import pytest
from hypothesis import given
from hypothesis import strategies as st

from triet.catalog import ETA_EXAMPLE, LABBE_XI
from triet.errors import (
    NotASubstitutionSeed,
    NotEndomorphism,
    PeriodicCycle,
    UnknownLetter,
)
from triet.morph import (
    ConjugacyCertificate,
    Morphism,
    apply,
    class_p,
    class_p_prime,
    compose,
    conjugate_chain,
    conjugate_step,
    extreme_conjugate,
    fixed_point_prefix,
    incidence,
    mirror,
    parse_morphism,
    power,
    primitive,
)

ETA = parse_morphism(ETA_EXAMPLE)
XI = parse_morphism(LABBE_XI)

words = st.text(alphabet="ABC", min_size=1, max_size=6)
morphisms = st.tuples(words, words, words).map(lambda t: Morphism(("A", "B", "C"), t))


def test_parse_and_print():
    assert str(ETA) == ETA_EXAMPLE
    assert ETA.alphabet == ("A", "B", "C")
    assert parse_morphism("0=0110101,1=01101").target == ("0", "1")
    sigma = parse_morphism("A=00,B=01,C=11")
    assert sigma.target == ("A", "B", "C", "0", "1")
    for bad in ("A", "A=", "AB=C", "A=B,A=C", "A=B-C"):
        with pytest.raises(ValueError):
            parse_morphism(bad)


def test_morphism_validation():
    with pytest.raises(ValueError):
        Morphism(("A", "B"), ("A", ""))
    with pytest.raises(UnknownLetter):
        Morphism(("A",), ("AB",))
    with pytest.raises(UnknownLetter):
        ETA["D"]


def test_apply():
    assert apply(Morphism(("A", "B"), ("A", "B")), "ABBA") == "ABBA"
    assert apply(XI, "A") == "ABA"
    assert apply(parse_morphism("A=00,B=01,C=11"), "ABC") == "000111"
    with pytest.raises(UnknownLetter):
        apply(XI, "AD")


def test_compose_and_power():
    assert power(XI, 2)["A"] == XI(XI("A"))
    assert compose(XI, ETA)["C"] == XI(ETA("C"))
    with pytest.raises(ValueError):
        power(XI, 0)


def test_incidence_and_primitivity():
    assert incidence(ETA) == [[2, 1, 3], [2, 3, 4], [1, 1, 2]]
    for row, img in zip(incidence(ETA), ETA.images):
        assert sum(row) == len(img)
    assert primitive(XI)
    assert not primitive(Morphism(("a", "b"), ("a", "b")))
    with pytest.raises(NotEndomorphism):
        primitive(parse_morphism("A=00,B=01,C=11"))


def test_conjugate_step_example():
    step = conjugate_step(ETA, "left")
    assert step is not None
    assert step.images == ("CACACB", "CACBBCACB", "CACB")
    assert conjugate_step(step, "right") == ETA
    assert conjugate_step(XI, "left") is None
    with pytest.raises(ValueError):
        conjugate_step(ETA, "up")


def test_extreme_conjugates_of_eta():
    left, cert = extreme_conjugate(ETA, "left")
    assert left.images == ("ACBCAC", "BBCACBCAC", "BCAC")
    assert cert == ConjugacyCertificate("BCAC", "left")
    assert cert.check(ETA, left)
    right, rcert = extreme_conjugate(ETA, "right")
    assert right == mirror(left)
    assert rcert.check(ETA, right)
    assert incidence(left) == incidence(ETA) == incidence(right)
    assert extreme_conjugate(left, "left") == (left, ConjugacyCertificate("", "left"))


def test_periodic_cycle():
    with pytest.raises(PeriodicCycle):
        extreme_conjugate(Morphism(("A", "B"), ("AB", "ABAB")), "left")


def test_mirror():
    assert mirror(ETA).images == ("CACACB", "CACBBCACB", "CACB")
    pal = Morphism(("A", "B"), ("ABA", "B"))
    assert mirror(pal) == pal


def test_class_p():
    one = class_p(Morphism(("a",), ("a",)))
    assert one is not None and one.p == "" and dict(one.parts) == {"a": "a"}
    cert = class_p(ETA)
    assert cert is not None and cert.p == "B" and cert.check(ETA)
    assert class_p(extreme_conjugate(ETA, "left")[0]) is None


def test_class_p_prime():
    assert class_p_prime(XI) is None
    cert = class_p_prime(ETA)
    assert cert is not None and cert.check(ETA, mirror(ETA))
    assert class_p_prime(power(ETA, 2)) is not None
    left = extreme_conjugate(ETA, "left")[0]
    assert class_p_prime(left).check(left, mirror(left))


def test_fixed_points_of_eta_left():
    left = extreme_conjugate(ETA, "left")[0]
    assert fixed_point_prefix(left, "A", 33) == "ACBCACBCACBBCACBCACBCACACBCACBCAC"
    assert fixed_point_prefix(left, "B", 32) == "BBCACBCACBBCACBCACBCACACBCACBCAC"
    with pytest.raises(NotASubstitutionSeed):
        fixed_point_prefix(left, "C", 10)
    with pytest.raises(NotASubstitutionSeed):
        fixed_point_prefix(Morphism(("A", "B"), ("A", "BA")), "A", 5)


@given(morphisms)
def test_mirror_is_involution_and_keeps_counts(phi):
    assert mirror(mirror(phi)) == phi
    assert incidence(mirror(phi)) == incidence(phi)
    assert primitive(mirror(phi)) == primitive(phi)


@given(morphisms, st.sampled_from(["left", "right"]))
def test_chain_certificates_hold(phi, side):
    try:
        for psi, cert in conjugate_chain(phi, side):
            assert cert.check(phi, psi)
            assert incidence(psi) == incidence(phi)
    except PeriodicCycle:
        pass


@given(morphisms)
def test_class_p_inside_class_p_prime(phi):
    if class_p(phi) is not None:
        try:
            assert class_p_prime(phi) is not None
        except PeriodicCycle:
            pytest.fail("a class P morphism has a mirror conjugate")


@given(morphisms, words)
def test_apply_is_a_monoid_morphism(phi, w):
    assert phi(w + w) == phi(w) + phi(w)
    assert phi("") == ""
