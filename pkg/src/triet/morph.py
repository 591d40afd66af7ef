"""Morphisms of free monoids over explicit, ordered alphabets.

Words are plain strings of one-character letters.  A :class:`Morphism` maps
each letter of its alphabet to a nonempty word over its target alphabet.

Conjugation follows the convention ``w*phi(a) = psi(a)*w`` for all ``a``:
``phi`` is then a *left* conjugate of ``psi``.  A single left step strips the
common first letter ``z`` and appends it, ``a -> z^-1 phi(a) z``; a right step
moves a common last letter to the front.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    NotASubstitutionSeed,
    NotEndomorphism,
    PeriodicCycle,
    UnknownLetter,
)

__all__ = [
    "Morphism",
    "ConjugacyCertificate",
    "ClassPCertificate",
    "parse_morphism",
    "apply",
    "compose",
    "power",
    "incidence",
    "primitive",
    "conjugate_step",
    "conjugate_chain",
    "extreme_conjugate",
    "mirror",
    "class_p",
    "class_p_prime",
    "fixed_point_prefix",
    "count_vector",
]


@dataclass(frozen=True)
class Morphism:
    alphabet: tuple[str, ...]
    images: tuple[str, ...]
    target: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        alphabet = tuple(self.alphabet)
        images = tuple(self.images)
        if len(alphabet) != len(images):
            raise ValueError("alphabet and images differ in length")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"repeated letter in alphabet {alphabet}")
        if any(len(a) != 1 for a in alphabet):
            raise ValueError("letters must be single characters")
        target = tuple(self.target) if self.target else alphabet
        for a, img in zip(alphabet, images):
            if not img:
                raise ValueError(f"image of {a!r} is empty (morphisms are non-erasing)")
            stray = set(img) - set(target)
            if stray:
                raise UnknownLetter(f"image of {a!r} uses letters {sorted(stray)} outside the target alphabet")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "target", target)

    @classmethod
    def from_dict(cls, images: Mapping[str, str], alphabet: Iterable[str] | None = None,
                  target: Iterable[str] | None = None) -> Morphism:
        alphabet = tuple(alphabet) if alphabet is not None else tuple(images)
        return cls(alphabet, tuple(images[a] for a in alphabet), tuple(target) if target else ())

    def __getitem__(self, letter: str) -> str:
        try:
            return self.images[self.alphabet.index(letter)]
        except ValueError:
            raise UnknownLetter(f"letter {letter!r} is not in the alphabet {''.join(self.alphabet)}") from None

    def __call__(self, w: str) -> str:
        return apply(self, w)

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.alphabet, self.images))

    @property
    def is_endomorphism(self) -> bool:
        return set(self.target) <= set(self.alphabet)

    def replace(self, images: Iterable[str]) -> Morphism:
        return Morphism(self.alphabet, tuple(images), self.target)

    def __str__(self) -> str:
        return ",".join(f"{a}={img}" for a, img in zip(self.alphabet, self.images))


@dataclass(frozen=True)
class ConjugacyCertificate:
    """Word ``w`` relating ``phi`` to a conjugate ``psi``.

    ``side == "left"``: ``w*psi(a) == phi(a)*w``; ``side == "right"``:
    ``psi(a)*w == w*phi(a)``.
    """

    word: str
    side: str

    def check(self, phi: Morphism, psi: Morphism) -> bool:
        w = self.word
        if self.side == "left":
            return all(w + psi[a] == phi[a] + w for a in phi.alphabet)
        return all(psi[a] + w == w + phi[a] for a in phi.alphabet)

    def to_dict(self) -> dict:
        return {"word": self.word, "side": self.side}


@dataclass(frozen=True)
class ClassPCertificate:
    p: str
    parts: tuple[tuple[str, str], ...]

    def check(self, phi: Morphism) -> bool:
        parts = dict(self.parts)
        return (self.p == self.p[::-1]
                and all(parts[a] == parts[a][::-1] and phi[a] == self.p + parts[a] for a in phi.alphabet))

    def to_dict(self) -> dict:
        return {"p": self.p, "parts": dict(self.parts)}


def parse_morphism(text: str) -> Morphism:
    """Parse ``"A=ABA,B=C,C=BAC"``.  Declaration order is the alphabet order."""
    images: dict[str, str] = {}
    for item in text.split(","):
        item = item.strip()
        if "=" not in item:
            raise ValueError(f"expected letter=image, got {item!r}")
        letter, img = (s.strip() for s in item.split("=", 1))
        if len(letter) != 1 or not letter.isalnum() or not letter.isascii():
            raise ValueError(f"bad letter {letter!r}")
        if not img or not (img.isalnum() and img.isascii()):
            raise ValueError(f"bad image {img!r} for letter {letter!r}")
        if letter in images:
            raise ValueError(f"letter {letter!r} defined twice")
        images[letter] = img
    alphabet = tuple(images)
    extra = sorted({c for img in images.values() for c in img} - set(alphabet))
    return Morphism(alphabet, tuple(images.values()), alphabet + tuple(extra))


def apply(phi: Morphism, w: str) -> str:
    table = phi.as_dict()
    try:
        return "".join(table[c] for c in w)
    except KeyError as exc:
        raise UnknownLetter(f"letter {exc.args[0]!r} is not in the alphabet {''.join(phi.alphabet)}") from None


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """``phi o psi``: first ``psi``, then ``phi``."""
    return Morphism(psi.alphabet, tuple(apply(phi, img) for img in psi.images), phi.target)


def power(phi: Morphism, n: int) -> Morphism:
    if n < 1:
        raise ValueError("power must be positive")
    result = phi
    for _ in range(n - 1):
        result = compose(phi, result)
    return result


def count_vector(w: str, alphabet: Iterable[str]) -> tuple[int, ...]:
    return tuple(w.count(a) for a in alphabet)


def incidence(phi: Morphism) -> list[list[int]]:
    """``M[i][j] = |phi(a_i)|_{b_j}`` (rows: source letters, columns: target letters)."""
    return [list(count_vector(img, phi.target)) for img in phi.images]


def _require_endo(phi: Morphism) -> None:
    if tuple(phi.target) != tuple(phi.alphabet):
        if not phi.is_endomorphism:
            raise NotEndomorphism(f"{phi} maps into a different alphabet")


def _square(phi: Morphism) -> list[list[int]]:
    return [list(count_vector(img, phi.alphabet)) for img in phi.images]


def primitive(phi: Morphism) -> bool:
    """Some power of the incidence matrix is positive (Wielandt bound ``(k-1)^2 + 1``)."""
    _require_endo(phi)
    k = len(phi.alphabet)
    pattern = [[x > 0 for x in row] for row in _square(phi)]
    e = (k - 1) ** 2 + 1
    acc = pattern
    for _ in range(e - 1):
        acc = [[any(acc[i][m] and pattern[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
    return all(all(row) for row in acc)


def conjugate_step(phi: Morphism, side: str = "left") -> Morphism | None:
    _require_endo(phi)
    if side == "left":
        firsts = {img[0] for img in phi.images}
        if len(firsts) != 1:
            return None
        z = firsts.pop()
        return phi.replace(img[1:] + z for img in phi.images)
    if side == "right":
        lasts = {img[-1] for img in phi.images}
        if len(lasts) != 1:
            return None
        z = lasts.pop()
        return phi.replace(z + img[:-1] for img in phi.images)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def conjugate_chain(phi: Morphism, side: str):
    """Yield ``(conjugate, certificate)`` pairs walking from ``phi`` towards ``side``.

    Stops when blocked; raises :class:`PeriodicCycle` if a morphism repeats.
    """
    bound = 1 + sum(len(img) for img in phi.images)
    seen = {phi.images}
    word = ""
    current = phi
    yield current, ConjugacyCertificate("", side)
    while True:
        nxt = conjugate_step(current, side)
        if nxt is None:
            return
        if side == "left":
            word = word + current.images[0][0]
        else:
            word = current.images[0][-1] + word
        if nxt.images in seen or len(seen) > bound:
            raise PeriodicCycle(f"conjugation of {phi} cycles; its fixed point is periodic")
        seen.add(nxt.images)
        current = nxt
        yield current, ConjugacyCertificate(word, side)


def extreme_conjugate(phi: Morphism, side: str = "left") -> tuple[Morphism, ConjugacyCertificate]:
    """Leftmost (or rightmost) conjugate and the word relating it to ``phi``."""
    last = None
    for last in conjugate_chain(phi, side):
        pass
    return last


def mirror(phi: Morphism) -> Morphism:
    return phi.replace(img[::-1] for img in phi.images)


def class_p(phi: Morphism) -> ClassPCertificate | None:
    """Find a palindrome ``p`` with every ``phi(a) = p*p_a``, ``p_a`` a palindrome."""
    shortest = min(len(img) for img in phi.images)
    for n in range(shortest + 1):
        p = phi.images[0][:n]
        if any(not img.startswith(p) for img in phi.images):
            break
        if p != p[::-1]:
            continue
        parts = tuple((a, img[n:]) for a, img in zip(phi.alphabet, phi.images))
        if all(part == part[::-1] for _, part in parts):
            return ClassPCertificate(p, parts)
    return None


def class_p_prime(phi: Morphism) -> ConjugacyCertificate | None:
    """Decide whether ``phi`` is conjugate to its mirror (equivalently, class P').

    Returns the certificate relating ``phi`` to ``mirror(phi)``.
    """
    target = mirror(phi)
    cycled = None
    for side in ("left", "right"):
        try:
            for psi, cert in conjugate_chain(phi, side):
                if psi == target:
                    return cert
        except PeriodicCycle as exc:
            cycled = exc
    if cycled is not None:
        raise cycled
    return None


def fixed_point_prefix(phi: Morphism, seed: str, n: int) -> str:
    img = phi[seed]
    if not img.startswith(seed) or len(img) < 2:
        raise NotASubstitutionSeed(f"{seed}->{img} does not start with {seed} or is too short")
    w = seed
    while len(w) < n:
        w = apply(phi, w[:n])
    return w[:n]
