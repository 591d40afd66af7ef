from fractions import Fraction

import pytest

from helpers import instances, random_iet
from triet.catalog import example_iet
from triet.errors import NotAFactor, NotMinimal
from triet.iet import Interval, ThreeIET, code_prefix, cylinder
from triet.induct import omega_rewrite
from triet.qfield import Q, parse_exact, sqrt
from triet.wordstat import (
    GapReport,
    bispecials,
    complexity,
    factors,
    frequencies,
    iet_gaps,
    return_words,
    return_words_by_extension,
    rotation_distances,
    rotation_gaps,
    three_distance,
)

T = example_iet()
T2 = ThreeIET(sqrt(2) - 1, Fraction(1, 2) + sqrt(2) / 10)
LABBE = ThreeIET(Q(Fraction(1, 2), 2), (3 - sqrt(2)) / 2)
GOLD = (sqrt(5) - 1) / 2


def test_complexity_examples():
    assert complexity(T, 5) == 11
    assert complexity(T, 1) == 3
    assert any(complexity(LABBE, n) < 2 * n + 1 for n in range(1, 13))


@pytest.mark.parametrize("T_", [T, T2], ids=["sqrt5", "sqrt2"])
def test_complexity_grows_by_two(T_):
    values = [complexity(T_, n) for n in range(41)]
    assert all(b - a == 2 for a, b in zip(values[1:], values[2:]))
    assert values[40] == 81


def test_complexity_matches_factor_enumeration():
    for n in range(1, 12):
        words = factors(T2, n)
        assert len(set(words)) == complexity(T2, n)
        assert all(cylinder(T2, w) is not None for w in words)


def test_complexity_requires_minimality():
    with pytest.raises(NotMinimal):
        complexity(ThreeIET(Q(Fraction(1, 3)), Q(Fraction(1, 2))), 3)


def test_return_words_count_and_oracle():
    for n in range(1, 11):
        for w in factors(T2, n):
            rws = return_words(T2, w)
            assert len(rws) == 3
            assert rws == return_words_by_extension(T2, w)


def test_return_words_reconstruct_the_coding():
    rho = parse_exact("1/7")
    u = code_prefix(T, rho, 400)
    w = u[0]
    rws = set(return_words(T, w))
    pos, rebuilt = 0, ""
    while pos < 300:
        nxt = u.index(w, pos + 1)
        assert u[pos:nxt] in rws
        rebuilt += u[pos:nxt]
        pos = nxt
    assert u.startswith(rebuilt)


def test_return_words_errors_and_empty_word():
    with pytest.raises(NotAFactor):
        return_words(T, "AA")
    assert return_words(T, "") == ["A", "B", "C"]


def test_return_words_when_cylinder_reaches_one():
    # [C] = [beta, 1) needs the mirror interval
    assert cylinder(T, "C").delta == 1
    assert return_words(T, "C") == return_words_by_extension(T, "C")


NP_T = ThreeIET(parse_exact("99/61 - 61/89*sqrt(5)"), parse_exact("1/3 + 1/75*sqrt(5)"))


def test_bispecial_examples():
    found = bispecials(NP_T, 10)
    assert found[0].word == "" and found[0].palindromic
    for b in found:
        if b.palindromic:
            assert b.case in ("P-i", "P-ii")
        else:
            assert b.case in ("NP-iii", "NP-iv", "NP-v", "NP-vi")
        assert len(b.return_words) == 3
    assert any(not b.palindromic for b in found)
    # a non-palindromic bispecial and its reversal carry mirrored cases
    by_word = {b.word: b.case for b in found}
    flip = {"NP-iii": "NP-vi", "NP-vi": "NP-iii", "NP-iv": "NP-v", "NP-v": "NP-iv"}
    for b in found:
        if not b.palindromic:
            assert by_word[b.word[::-1]] == flip[b.case]


def test_palindromic_bispecials_have_case_shapes():
    for b in bispecials(T, 10)[1:]:
        r = list(return_words(T, b.word))
        assert len(r) == 3
        # the three return words are R1, R2 and a word built from R1 R2 by one omega move
        ok = False
        for x in r:
            for y in r:
                if x == y:
                    continue
                z = next(v for v in r if v not in (x, y))
                if b.case == "P-i" and (z in omega_rewrite(x + y, "B->CA")):
                    ok = True
                if b.case == "P-ii" and (z in omega_rewrite(x + y, "AC->B")):
                    ok = True
        assert ok, b


def test_bispecials_on_random_nondegenerate_instances():
    import random

    rng = random.Random(11)
    for d in (2, 3, 5):
        T_ = random_iet(rng, d, nondegenerate=True)
        for b in bispecials(T_, 10):
            assert b.case.startswith("P-") == b.palindromic


def test_frequencies():
    assert frequencies(T, 1) == sorted([T.alpha, T.beta - T.alpha, 1 - T.beta])
    for n in range(1, 21):
        f = frequencies(T, n)
        assert len(set(f)) <= 5
        assert all(x > 0 for x in f)
        assert sum(f, Q(0)) == 1


def test_three_distance():
    two = three_distance(T, Q(0, 5), 2)
    assert len(two.values) == 1
    rep = three_distance(T, Q(0, 5), 50)
    assert len(rep.values) <= 3 and rep.largest_is_sum
    for N in range(2, 101):
        r = three_distance(T2, parse_exact("1/3"), N)
        assert len(r.values) <= 3 and r.largest_is_sum


def test_rotation_three_distance():
    for N in range(2, 101):
        r = rotation_distances(GOLD, Q(0), N)
        assert len(r.values) <= 3 and r.largest_is_sum
    assert sum((v * c for v, c in zip(r.values, r.counts)), Q(0)) == 1


def test_rotation_gaps():
    everything = rotation_gaps(GOLD, Q(0), Interval(Q(0, 5), Q(1, 5)), 50)
    assert everything.values == (1,)
    r = rotation_gaps(GOLD, Q(0), Interval(Q(0, 5), Q(Fraction(1, 2), 5)), 200)
    assert len(r.values) <= 3 and r.largest_is_sum


def test_iet_gaps_fall_in_five_value_patterns():
    for T_, I in instances(5, 20):
        rep = iet_gaps(T_, Q(0), I, 600)
        r1, r2 = rep.basis
        pattern = ({r1, r1 + 1, r2, r1 + r2, r1 + r2 + 1} if rep.pattern == "P1"
                   else {r1, r1 + 1, r2, r2 + 1, r1 + r2 + 1})
        assert set(rep.values) <= pattern


def test_gap_report_validation():
    with pytest.raises(ValueError):
        GapReport((), ())
    with pytest.raises(ValueError):
        GapReport((1, 2, 5), (1, 1, 1), basis=(1, 2))
    assert GapReport((1, 2, 3), (1, 1, 1), basis=(1, 2)).to_dict()["values"] == [1, 2, 3]
