"""Symmetric exchange of three intervals on [0, 1).

    T(x) = x + 1 - alpha          on J_A = [0, alpha)
    T(x) = x + 1 - alpha - beta   on J_B = [alpha, beta)
    T(x) = x - beta               on J_C = [beta, 1)

All intervals are left-closed, right-open, and every membership decision is
exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import FieldMismatch, OrderViolation, OutOfDomain
from .qfield import QuadraticNumber, lattice_membership, q_independent

__all__ = [
    "LETTERS",
    "Interval",
    "ThreeIET",
    "make_3iet",
    "step",
    "orbit",
    "code_prefix",
    "cylinder",
    "mirror_word",
    "is_palindrome",
]

LETTERS = "ABC"


def mirror_word(w: str) -> str:
    return w[::-1]


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[gamma, delta)``."""

    gamma: QuadraticNumber
    delta: QuadraticNumber

    def __post_init__(self) -> None:
        if not self.gamma < self.delta:
            raise OrderViolation(f"empty interval [{self.gamma}, {self.delta})")

    def __contains__(self, x: QuadraticNumber) -> bool:
        return self.gamma <= x < self.delta

    def contains_open(self, x: QuadraticNumber) -> bool:
        return self.gamma < x < self.delta

    @property
    def length(self) -> QuadraticNumber:
        return self.delta - self.gamma

    @property
    def midpoint(self) -> QuadraticNumber:
        return (self.gamma + self.delta) / 2

    def mirror(self) -> Interval:
        """``[1 - delta, 1 - gamma)``."""
        return Interval(1 - self.delta, 1 - self.gamma)

    def shift(self, c: QuadraticNumber) -> Interval:
        return Interval(self.gamma + c, self.delta + c)

    def to_dict(self) -> dict:
        return {"gamma": str(self.gamma), "delta": str(self.delta)}

    def __str__(self) -> str:
        return f"[{self.gamma}, {self.delta})"


@dataclass(frozen=True)
class ThreeIET:
    alpha: QuadraticNumber
    beta: QuadraticNumber
    minimal: bool = field(init=False)
    nondegenerate: bool = field(init=False)

    def __post_init__(self) -> None:
        a, b = self.alpha, self.beta
        if a.d != b.d and not (a.is_rational() or b.is_rational()):
            raise FieldMismatch("alpha and beta live in different fields")
        if not (0 < a < b < 1):
            raise OrderViolation(f"need 0 < alpha < beta < 1, got alpha={a}, beta={b}")
        minimal = q_independent(1 - a, b)
        object.__setattr__(self, "minimal", minimal)
        object.__setattr__(
            self, "nondegenerate", minimal and lattice_membership(1 - a, b, a * 0 + 1) is None
        )

    # translation constants c_A, c_B, c_C
    @property
    def translations(self) -> dict[str, QuadraticNumber]:
        a, b = self.alpha, self.beta
        return {"A": 1 - a, "B": 1 - a - b, "C": -b}

    @property
    def intervals(self) -> dict[str, Interval]:
        zero = self.alpha * 0
        return {
            "A": Interval(zero, self.alpha),
            "B": Interval(self.alpha, self.beta),
            "C": Interval(self.beta, zero + 1),
        }

    @property
    def image_intervals(self) -> dict[str, Interval]:
        """``T(J_X)``, which equals the mirror of ``J_X``."""
        return {x: j.shift(self.translations[x]) for x, j in self.intervals.items()}

    def letter(self, x: QuadraticNumber) -> str:
        if x < self.alpha:
            return "A"
        if x < self.beta:
            return "B"
        return "C"

    def forward(self, x: QuadraticNumber) -> QuadraticNumber:
        a, b = self.alpha, self.beta
        if x < a:
            return x + 1 - a
        if x < b:
            return x + 1 - a - b
        return x - b

    def backward(self, y: QuadraticNumber) -> QuadraticNumber:
        a, b = self.alpha, self.beta
        # image intervals in order: T(J_C) < T(J_B) < T(J_A)
        if y < 1 - b:
            return y + b
        if y < 1 - a:
            return y - (1 - a - b)
        return y - (1 - a)

    def displacement(self, word: str) -> QuadraticNumber:
        """``T^|w|(x) - x`` for any ``x`` whose coding starts with ``word``."""
        c = self.translations
        return (word.count("A") * c["A"] + word.count("B") * c["B"] + word.count("C") * c["C"]
                + self.alpha * 0)

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "minimal": self.minimal,
            "nondegenerate": self.nondegenerate,
        }


def make_3iet(alpha: QuadraticNumber, beta: QuadraticNumber) -> ThreeIET:
    return ThreeIET(alpha, beta)


def _check_domain(x: QuadraticNumber) -> None:
    if not (0 <= x < 1):
        raise OutOfDomain(f"point {x} is outside [0, 1)")


def step(T: ThreeIET, x: QuadraticNumber, direction: str = "forward") -> QuadraticNumber:
    _check_domain(x)
    if direction == "forward":
        return T.forward(x)
    if direction == "backward":
        return T.backward(x)
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")


def iterate(T: ThreeIET, x: QuadraticNumber, direction: str = "forward") -> Iterator[QuadraticNumber]:
    """Endless orbit ``x, T(x), T^2(x), ...`` (or the backward orbit)."""
    _check_domain(x)
    fn = T.forward if direction == "forward" else T.backward
    while True:
        yield x
        x = fn(x)


def orbit(T: ThreeIET, x: QuadraticNumber, n: int, direction: str = "forward") -> list[QuadraticNumber]:
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")
    it = iterate(T, x, direction)
    return [next(it) for _ in range(n + 1)]


def code_prefix(T: ThreeIET, rho: QuadraticNumber, n: int) -> str:
    """First ``n`` letters of the coding of the orbit of ``rho``."""
    _check_domain(rho)
    out = []
    x = rho
    a, b = T.alpha, T.beta
    ca, cb, cc = 1 - a, 1 - a - b, -b
    for _ in range(n):
        if x < a:
            out.append("A")
            x = x + ca
        elif x < b:
            out.append("B")
            x = x + cb
        else:
            out.append("C")
            x = x + cc
    return "".join(out)


def cylinder(T: ThreeIET, w: str) -> Interval | None:
    """The interval of intercepts whose coding starts with ``w``; ``None`` if
    ``w`` is not a factor."""
    zero = T.alpha * 0
    lo, hi = zero, zero + 1  # current image T^i([w_0..w_{i-1}])
    offset = zero
    J = T.intervals
    c = T.translations
    for letter in w:
        if letter not in J:
            return None
        j = J[letter]
        lo = max(lo, j.gamma)
        hi = min(hi, j.delta)
        if not lo < hi:
            return None
        lo, hi = lo + c[letter], hi + c[letter]
        offset = offset + c[letter]
    return Interval(lo - offset, hi - offset)
