"""Sturmian pairs, ternary substitutions and the 3iet they fix.

``sigma01`` and ``sigma10`` send A, B, C to 0, 01 (resp. 10), 1.  An amicable
pair of Sturmian morphisms ternarizes to a substitution on {A, B, C}; a
primitive substitution fixing a non-degenerate 3iet word determines the
parameters, the intercept and the inducing interval exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Degenerate, FieldEscape, NotPrimitive, OutOfDomain
from .iet import LETTERS, Interval, ThreeIET, code_prefix
from .induct import DEFAULT_CAP, itineraries, omega_rewrite
from .morph import (
    Morphism,
    class_p_prime,
    count_vector,
    extreme_conjugate,
    power,
    primitive,
)
from .qfield import QuadraticNumber, squarefree_decomposition

__all__ = [
    "SIGMA",
    "sigma",
    "ternarize_words",
    "ternarize_morphisms",
    "split_ternary",
    "RecoveredParameters",
    "recover_parameters",
    "verify_invariance",
    "InvarianceReport",
    "structural_relation",
    "hks_check",
    "HKSReport",
    "characteristic_polynomial",
]

SIGMA = {
    "s01": {"A": "0", "B": "01", "C": "1"},
    "s10": {"A": "0", "B": "10", "C": "1"},
}


def sigma(w: str, variant: str = "s01") -> str:
    table = SIGMA[variant]
    return "".join(table[c] for c in w)


def ternarize_words(u: str, v: str) -> str | None:
    """The ternary ``w`` with ``sigma01(w) == u`` and ``sigma10(w) == v``, if any."""
    if len(u) != len(v):
        return None
    out = []
    i = 0
    while i < len(u):
        pair = u[i] + v[i]
        if pair == "00":
            out.append("A")
            i += 1
        elif pair == "11":
            out.append("C")
            i += 1
        elif pair == "01" and u[i:i + 2] == "01" and v[i:i + 2] == "10":
            out.append("B")
            i += 2
        else:
            return None
    return "".join(out)


def _binary(phi: Morphism) -> dict[str, str]:
    images = phi.as_dict()
    if set(images) != {"0", "1"}:
        raise ValueError(f"{phi} is not a morphism of {{0, 1}}")
    return images


def ternarize_morphisms(phi: Morphism, psi: Morphism) -> Morphism | None:
    p, q = _binary(phi), _binary(psi)
    a = ternarize_words(p["0"], q["0"])
    b = ternarize_words(p["0"] + p["1"], q["1"] + q["0"])
    c = ternarize_words(p["1"], q["1"])
    if a is None or b is None or c is None:
        return None
    return Morphism(tuple(LETTERS), (a, b, c))


def split_ternary(eta: Morphism) -> tuple[Morphism, Morphism] | None:
    """Inverse of :func:`ternarize_morphisms`."""
    a, b, c = eta["A"], eta["B"], eta["C"]
    phi = Morphism(("0", "1"), (sigma(a, "s01"), sigma(c, "s01")))
    psi = Morphism(("0", "1"), (sigma(a, "s10"), sigma(c, "s10")))
    if ternarize_words(phi["0"] + phi["1"], psi["1"] + psi["0"]) != b:
        return None
    return phi, psi


# -- linear algebra over Q(sqrt d) ----------------------------------------------


def _matrix(xi: Morphism) -> list[list[int]]:
    return [list(count_vector(xi[a], LETTERS)) for a in LETTERS]


def characteristic_polynomial(M: list[list[int]]) -> tuple[int, int, int]:
    """``(c2, c1, c0)`` with ``det(xI - M) = x^3 + c2 x^2 + c1 x + c0``."""
    tr = M[0][0] + M[1][1] + M[2][2]
    minors = (M[0][0] * M[1][1] - M[0][1] * M[1][0]
              + M[0][0] * M[2][2] - M[0][2] * M[2][0]
              + M[1][1] * M[2][2] - M[1][2] * M[2][1])
    det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
           - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
           + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    return -tr, minors, -det


def _quadratic_roots(p: Fraction, q: Fraction) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Roots of ``x^2 + p x + q``, larger first."""
    disc = p * p - 4 * q
    if disc < 0:
        raise FieldEscape(f"complex eigenvalues (discriminant {disc})")
    # sqrt(N/D) = sqrt(N*D)/D
    s, d = squarefree_decomposition(disc.numerator * disc.denominator)
    if d == 1:
        raise FieldEscape(f"eigenvalues are rational (discriminant {disc}); the fixed point is not a 3iet word")
    root = QuadraticNumber(0, Fraction(s, disc.denominator), d)
    half = QuadraticNumber(-p / 2, 0, d)
    return half + root / 2, half - root / 2


def _kernel(M: list[list[QuadraticNumber]]) -> list[QuadraticNumber]:
    """A nonzero vector annihilated by the rank-2 matrix ``M`` (cross product of two rows)."""
    for i in range(3):
        for j in range(i + 1, 3):
            r, s = M[i], M[j]
            v = [r[1] * s[2] - r[2] * s[1], r[2] * s[0] - r[0] * s[2], r[0] * s[1] - r[1] * s[0]]
            if any(v):
                return v
    raise FieldEscape("eigenspace is not one-dimensional")


@dataclass(frozen=True)
class _Spectrum:
    sign: int
    theta: QuadraticNumber
    lam: QuadraticNumber


def _spectrum(xi: Morphism) -> _Spectrum:
    M = _matrix(xi)
    rows = [count_vector(xi[a], LETTERS) for a in LETTERS]
    rel = tuple(rows[0][k] - rows[1][k] + rows[2][k] for k in range(3))
    if rel == (1, -1, 1):
        eps = 1
    elif rel == (-1, 1, -1):
        eps = -1
    else:
        raise Degenerate(
            f"(1,-1,1) is not an eigenvector of the transposed incidence matrix: image {rel}",
            witness=rel,
        )
    c2, c1, c0 = characteristic_polynomial(M)
    # x^3 + c2 x^2 + c1 x + c0 = (x - eps)(x^2 + p x + q)
    p = Fraction(c2 + eps)
    q = Fraction(c1) + eps * p
    if eps * q != -c0:
        raise Degenerate(f"{eps} is not a root of the characteristic polynomial")
    theta, other = _quadratic_roots(p, q)
    return _Spectrum(eps, theta, other)


@dataclass(frozen=True)
class RecoveredParameters:
    alpha: QuadraticNumber
    beta: QuadraticNumber
    rho: QuadraticNumber
    lam: QuadraticNumber
    eta_choice: str
    eta: Morphism
    eta_left: Morphism
    conjugacy_word: str
    interval: Interval

    @property
    def conjugacy_word_length(self) -> int:
        return len(self.conjugacy_word)

    @property
    def iet(self) -> ThreeIET:
        return ThreeIET(self.alpha, self.beta)

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "rho": str(self.rho),
            "lambda": str(self.lam),
            "etaChoice": self.eta_choice,
            "eta": str(self.eta),
            "etaLeft": str(self.eta_left),
            "conjugacyWord": self.conjugacy_word,
            "interval": self.interval.to_dict(),
            "decimal": {
                "alpha": str(self.alpha.to_decimal()),
                "beta": str(self.beta.to_decimal()),
                "rho": str(self.rho.to_decimal()),
                "lambda": str(self.lam.to_decimal()),
            },
        }


def recover_parameters(xi: Morphism) -> RecoveredParameters:
    if tuple(xi.alphabet) != tuple(LETTERS):
        raise ValueError(f"expected a substitution on A, B, C, got alphabet {xi.alphabet}")
    if not primitive(xi):
        raise NotPrimitive(f"{xi} is not primitive")
    eig = _spectrum(xi)
    lam = eig.lam
    if -1 < lam < 0:
        eta, choice = power(xi, 2), "xi_squared"
        eig = _spectrum(eta)
        lam = eig.lam
    else:
        eta, choice = xi, "xi"
    if not 0 < lam < 1:
        raise Degenerate(f"no eigenvalue in (0, 1); contracting root is {lam}")
    theta = eig.theta

    # letter frequencies: Perron eigenvector of the transpose
    M = _matrix(eta)
    shifted = [[QuadraticNumber(M[j][i]) - (theta if i == j else 0) for j in range(3)] for i in range(3)]
    f = _kernel(shifted)
    total = f[0] + f[1] + f[2]
    f = [x / total for x in f]
    alpha, beta = f[0], f[0] + f[1]
    if not (0 < alpha < beta < 1):
        raise Degenerate(f"frequencies {[str(x) for x in f]} are not all positive")
    T = ThreeIET(alpha, beta)
    if not T.nondegenerate:
        raise Degenerate(f"recovered 3iet T({alpha}, {beta}) is degenerate")

    eta_left, cert = extreme_conjugate(eta, "left")
    first = eta_left["A"][0]
    if first == "A":
        rho_left = alpha
    elif first == "B":
        rho_left = beta
    else:
        raise Degenerate(f"leftmost conjugate image of A starts with {first}")
    w = cert.word
    # (1 - lam) rho_L = T^|w|((1 - lam) rho)
    rho = rho_left - T.displacement(w) / (1 - lam)
    if not 0 <= rho < 1:
        # happens when the fixed point codes the left limit at 1 rather than a point
        raise OutOfDomain(f"intercept {rho} lies outside [0, 1); the fixed point is not the coding of a point")
    start = rho * (1 - lam)
    return RecoveredParameters(alpha, beta, rho, lam, choice, eta, eta_left, w,
                               Interval(start, start + lam))


@dataclass(frozen=True)
class InvarianceReport:
    prefix_fixed: bool
    itineraries_match: bool
    center_matches: bool

    def __bool__(self) -> bool:
        return self.prefix_fixed and self.itineraries_match and self.center_matches

    def to_dict(self) -> dict:
        return {
            "prefixFixed": self.prefix_fixed,
            "itinerariesMatch": self.itineraries_match,
            "centerMatches": self.center_matches,
        }


def verify_invariance(xi: Morphism, params: RecoveredParameters, n: int = 2000,
                      cap: int = DEFAULT_CAP) -> InvarianceReport:
    T = params.iet
    eta = params.eta
    u = code_prefix(T, params.rho, n)
    # eta is xi or xi^2; either way it is non-erasing, so eta(u) has length >= n
    prefix_fixed = eta(u)[:n] == u
    res = itineraries(T, params.interval, cap)
    words_ok = sorted(res.words) == sorted(eta[a] for a in LETTERS)
    center_ok = False
    if res.homothety is not None:
        h = res.homothety
        center_ok = h.lam == params.lam and h.center == params.rho
    return InvarianceReport(prefix_fixed, words_ok, center_ok)


def structural_relation(eta: Morphism) -> str:
    """Which shape ``eta(B)`` has in terms of ``eta(A)`` and ``eta(C)``.

    ``"ACtoB"``: ``eta(B)`` is ``eta(AC)`` with one ``AC`` rewritten to ``B``.
    ``"BtoCA"``: ``eta(B)`` is ``eta(AC)`` with one ``B`` rewritten to ``CA``.
    Only primitive substitutions are considered; anything else is ``"none"``.
    """
    if tuple(eta.alphabet) != tuple(LETTERS) or not primitive(eta):
        return "none"
    a, b, c = eta["A"], eta["B"], eta["C"]
    if b in omega_rewrite(a + c, "AC->B"):
        return "ACtoB"
    if b in omega_rewrite(a + c, "B->CA"):
        return "BtoCA"
    return "none"


@dataclass(frozen=True)
class HKSReport:
    xi_in_p_prime: bool
    xi2_in_p_prime: bool
    recovered: bool
    theorem_witness: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "xiInPPrime": self.xi_in_p_prime,
            "xi2InPPrime": self.xi2_in_p_prime,
            "recovered": self.recovered,
            "theoremWitness": self.theorem_witness,
            "detail": self.detail,
        }


def hks_check(xi: Morphism) -> HKSReport:
    one = class_p_prime(xi) is not None
    two = class_p_prime(power(xi, 2)) is not None
    detail = ""
    try:
        recover_parameters(xi)
        recovered = True
    except (Degenerate, NotPrimitive, FieldEscape, OutOfDomain, ValueError) as exc:
        recovered = False
        detail = f"{type(exc).__name__}: {exc}"
    return HKSReport(one, two, recovered, (not recovered) or one or two, detail)
