"""Random instances and independent floating-point oracles for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import mpmath

from triet.iet import Interval, ThreeIET
from triet.induct import InductionResult
from triet.qfield import QuadraticNumber

FIELDS = (2, 3, 5)

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def small_fraction(rng: random.Random, lo: Fraction, hi: Fraction, height: int = 100) -> Fraction:
    while True:
        den = rng.randint(1, height)
        num = rng.randint(-height, height)
        f = Fraction(num, den)
        if lo <= f < hi:
            return f


def random_iet(rng: random.Random, d: int, height: int = 100, nondegenerate: bool = False) -> ThreeIET:
    """``alpha, beta`` in Q(sqrt d) with rational parts of height at most ``height``."""
    while True:
        coeffs = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(4)]
        a = QuadraticNumber(coeffs[0], coeffs[1], d)
        b = QuadraticNumber(coeffs[2], coeffs[3], d)
        if a > b:
            a, b = b, a
        if not (0 < a < b < 1):
            continue
        T = ThreeIET(a, b)
        if not T.minimal or (nondegenerate and not T.nondegenerate):
            continue
        # keep the pieces wide enough that return times stay small
        if min(float(a), float(b - a), float(1 - b)) < 0.02:
            continue
        return T


def random_interval(rng: random.Random, min_len: Fraction = Fraction(1, 20), height: int = 100,
                    positive_gamma: bool = False) -> Interval:
    while True:
        g = small_fraction(rng, Fraction(0), Fraction(1), height)
        e = small_fraction(rng, Fraction(0), Fraction(1), height)
        if positive_gamma and g == 0:
            continue
        if e - g >= min_len:
            return Interval(QuadraticNumber(g), QuadraticNumber(e))


def instances(seed: int, count: int, positive_gamma: bool = False, **kw):
    rng = random.Random(seed)
    fields = itertools.cycle(FIELDS)
    for _ in range(count):
        yield random_iet(rng, next(fields), **kw), random_interval(rng, positive_gamma=positive_gamma)


# -- mpmath oracles ---------------------------------------------------------------


def mp_value(x: QuadraticNumber):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + (
        mpmath.mpf(x.b.numerator) / x.b.denominator
    ) * mpmath.sqrt(x.d)


def float_sign(x: QuadraticNumber, prec: int = 128) -> int | None:
    """Sign from a ``prec``-bit evaluation, or ``None`` when it is within the error bound."""
    with mpmath.workprec(prec):
        val = mp_value(x)
        scale = abs(mpmath.mpf(x.a.numerator) / x.a.denominator) + abs(
            mpmath.mpf(x.b.numerator) / x.b.denominator
        ) * mpmath.sqrt(x.d) + 1
        bound = scale * mpmath.mpf(2) ** (8 - prec)
        if abs(val) <= bound:
            return None
        return 1 if val > 0 else -1


class MarginTooSmall(Exception):
    pass


def float_itineraries(T: ThreeIET, I: Interval, prec: int = 256, cap: int = 100_000) -> list[str]:
    """Itineraries of ``I`` from a ``prec``-bit simulation that never touches exact arithmetic.

    Raises :class:`MarginTooSmall` when some comparison is closer than the
    accumulated rounding error could explain.
    """
    with mpmath.workprec(prec):
        a, b = mp_value(T.alpha), mp_value(T.beta)
        g, e = mp_value(I.gamma), mp_value(I.delta)
        eps = mpmath.mpf(2) ** (40 - prec)

        def check(x, *walls):
            if any(abs(x - w) < eps for w in walls):
                raise MarginTooSmall(f"point {x} within {eps} of a boundary")

        def fwd(x):
            check(x, a, b)
            if x < a:
                return x + 1 - a
            if x < b:
                return x + 1 - a - b
            return x - b

        def bwd(y):
            check(y, 1 - b, 1 - a)
            if y < 1 - b:
                return y + b
            if y < 1 - a:
                return y - (1 - a - b)
            return y - (1 - a)

        def landing(z, k0):
            x = z
            for _ in range(k0):
                x = bwd(x)
            for _ in range(cap):
                check(x, g, e)
                if g < x < e:
                    return x
                x = bwd(x)
            raise MarginTooSmall("cap")

        cuts = sorted({landing(a, 0), landing(b, 0), landing(g, 1), landing(e, 1)})
        # coinciding exact points may differ by rounding; merge near-equal cuts
        merged = []
        for c in cuts:
            if merged and abs(c - merged[-1]) < eps:
                continue
            merged.append(c)
        bounds = [g] + merged + [e]
        words = []
        for lo, hi in zip(bounds, bounds[1:]):
            x = (lo + hi) / 2
            out = []
            for _ in range(cap):
                check(x, a, b)
                out.append("A" if x < a else "B" if x < b else "C")
                x = fwd(x)
                check(x, g, e)
                if g <= x < e:
                    break
            else:
                raise MarginTooSmall("cap")
            if words and words[-1] == "".join(out):
                continue
            words.append("".join(out))
        return words


def brute_pattern(lengths, max_r: int | None = None) -> str | None:
    """Search all (r1, r2) for a pattern containing ``lengths``; independent of the case tables."""
    s = set(lengths)
    top = max_r or max(s)
    for r1 in range(1, top + 1):
        for r2 in range(1, top + 1):
            if s <= {r1, r1 + 1, r2, r1 + r2, r1 + r2 + 1}:
                return "P1"
            if s <= {r1, r1 + 1, r2, r2 + 1, r1 + r2 + 1}:
                return "P2"
    return None


def lengths_in_pattern(res: InductionResult) -> bool:
    if res.r1 is None or res.r2 is None:
        return False
    r1, r2 = res.r1, res.r2
    s = set(res.lengths)
    p1 = {r1, r1 + 1, r2, r1 + r2, r1 + r2 + 1}
    p2 = {r1, r1 + 1, r2, r2 + 1, r1 + r2 + 1}
    return s <= (p1 if res.pattern == "P1" else p2)


# Sturmian generators on {0, 1}, as (image of 0, image of 1)
STURMIAN = {"E": ("1", "0"), "G": ("0", "01"), "Gt": ("0", "10"), "F": ("01", "0"), "Ft": ("10", "0")}


def _compose_binary(a, b):
    return tuple("".join(a["01".index(c)] for c in img) for img in b)


def sturmian_pair_corpus(max_len: int = 4):
    """Distinct ternarizations of ordered pairs of right conjugates of Sturmian morphisms.

    Every product of at most ``max_len`` generators is conjugated to the
    right as far as possible; each pair of conjugates that ternarizes gives
    one substitution on ``A, B, C``.
    """
    import itertools

    from triet.bridge import ternarize_morphisms
    from triet.morph import Morphism

    seen, out = set(), []
    for n in range(1, max_len + 1):
        for seq in itertools.product(STURMIAN, repeat=n):
            f = ("0", "1")
            for g in seq:
                f = _compose_binary(f, STURMIAN[g])
            chain = [f]
            while len({img[-1] for img in chain[-1]}) == 1:
                z = chain[-1][0][-1]
                chain.append(tuple(z + img[:-1] for img in chain[-1]))
            for i, j in itertools.combinations(range(len(chain)), 2):
                for p, q in ((chain[j], chain[i]), (chain[i], chain[j])):
                    eta = ternarize_morphisms(Morphism(("0", "1"), p), Morphism(("0", "1"), q))
                    if eta is not None and str(eta) not in seen:
                        seen.add(str(eta))
                        out.append(eta)
    return out
