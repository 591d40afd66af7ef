"""Language statistics of 3iet words.

Everything is computed from cylinders, so no factor is ever missed because a
prefix happened to be too short.  The cylinders of length-``n`` factors are
the pieces of ``[0, 1)`` cut at ``T^-i(alpha)`` and ``T^-i(beta)``, ``i < n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded, NotAFactor, NotMinimal
from .iet import LETTERS, Interval, ThreeIET, cylinder, orbit
from .induct import DEFAULT_CAP, itineraries, return_time_set
from .qfield import QuadraticNumber

__all__ = [
    "GapReport",
    "Bispecial",
    "cut_points",
    "factors",
    "complexity",
    "return_words",
    "return_words_by_extension",
    "bispecials",
    "frequencies",
    "three_distance",
    "rotation_distances",
    "rotation_gaps",
    "iet_gaps",
    "MIRROR_TAG",
]

# case tag of an interval in terms of the case tag of its mirror image
MIRROR_TAG = {
    "T3-i": "T3-i",
    "T3-ii": "T3-ii",
    "T3-iii": "T3-vi",
    "T3-vi": "T3-iii",
    "T3-iv": "T3-v",
    "T3-v": "T3-iv",
}


@dataclass(frozen=True)
class GapReport:
    """Distinct gap or distance values, their multiplicities and the basis
    ``(v1, v2)`` they are built from."""

    values: tuple
    counts: tuple[int, ...]
    basis: tuple | None = None
    pattern: str | None = None
    kind: str = "distances"

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("a gap report needs at least one value")
        if self.basis is not None and self.pattern is None:
            v1, v2 = self.basis
            if not set(self.values) <= {v1, v2, v1 + v2}:
                raise ValueError("values are not generated by the basis")

    @property
    def largest_is_sum(self) -> bool:
        """True unless exactly three values occur and the largest is not the sum of the others."""
        if len(self.values) != 3:
            return True
        return self.values[2] == self.values[0] + self.values[1]

    def to_dict(self) -> dict:
        def show(v):
            return v if isinstance(v, int) else str(v)

        out = {
            "kind": self.kind,
            "values": [show(v) for v in self.values],
            "counts": list(self.counts),
            "basis": [show(v) for v in self.basis] if self.basis else None,
            "pattern": self.pattern,
        }
        if self.values and not isinstance(self.values[0], int):
            out["decimal"] = [str(v.to_decimal()) for v in self.values]
        return out


@dataclass(frozen=True)
class Bispecial:
    word: str
    palindromic: bool
    case: str
    return_words: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "palindromic": self.palindromic,
            "case": self.case,
            "returnWords": list(self.return_words),
        }


def _require_minimal(T: ThreeIET) -> None:
    if not T.minimal:
        raise NotMinimal(f"T({T.alpha}, {T.beta}) is not minimal")


def cut_points(T: ThreeIET, n: int) -> list[QuadraticNumber]:
    """Sorted distinct points of ``(0, 1)`` that bound length-``n`` cylinders."""
    pts = set()
    for z in (T.alpha, T.beta):
        x = z
        for _ in range(n):
            if x != 0:
                pts.add(x)
            x = T.backward(x)
    return sorted(pts)


def _pieces(T: ThreeIET, n: int) -> list[QuadraticNumber]:
    zero = T.alpha * 0
    return [zero] + cut_points(T, n) + [zero + 1]


def factors(T: ThreeIET, n: int) -> list[str]:
    """All length-``n`` factors, in the order of their cylinders."""
    from .iet import code_prefix

    pts = _pieces(T, n)
    return [code_prefix(T, lo, n) for lo in pts[:-1]]


def complexity(T: ThreeIET, n: int) -> int:
    _require_minimal(T)
    if n == 0:
        return 1
    return len(cut_points(T, n)) + 1


def frequencies(T: ThreeIET, n: int) -> list[QuadraticNumber]:
    """Cylinder lengths of the length-``n`` factors (a sorted multiset)."""
    _require_minimal(T)
    pts = _pieces(T, n)
    return sorted(b - a for a, b in zip(pts, pts[1:]))


def _return_itineraries(T: ThreeIET, I: Interval, cap: int):
    """Itinerary words of ``I`` and the case tag, using the mirror interval when ``I`` reaches 1."""
    if I.delta < 1:
        res = itineraries(T, I, cap)
        return res.words, res.case_tag
    res = itineraries(T, I.mirror(), cap)
    return [w[::-1] for w in res.words], MIRROR_TAG.get(res.case_tag, res.case_tag)


def return_words(T: ThreeIET, w: str, cap: int = DEFAULT_CAP) -> list[str]:
    """Return words of the factor ``w``: the itineraries of its cylinder."""
    _require_minimal(T)
    if w == "":
        return list(LETTERS)
    I = cylinder(T, w)
    if I is None:
        raise NotAFactor(f"{w!r} is not a factor")
    words, _ = _return_itineraries(T, I, cap)
    return sorted(words)


def return_words_by_extension(T: ThreeIET, w: str, cap: int = 10_000) -> list[str]:
    """Independent check: grow right extensions of ``w`` until ``w`` reappears."""
    if cylinder(T, w) is None:
        raise NotAFactor(f"{w!r} is not a factor")
    if w == "":
        return list(LETTERS)
    J, c = T.intervals, T.translations
    start = cylinder(T, w)
    # state: word, current image interval T^|u| [u]
    shift = T.displacement(w)
    found = set()
    frontier = [(w, start.gamma + shift, start.delta + shift)]
    steps = 0
    while frontier:
        u, lo, hi = frontier.pop()
        for letter in LETTERS:
            j = J[letter]
            a, b = max(lo, j.gamma), min(hi, j.delta)
            if not a < b:
                continue
            v = u + letter
            if v.endswith(w):
                found.add(v[: -len(w)])
            else:
                frontier.append((v, a + c[letter], b + c[letter]))
        steps += 1
        if steps > cap:
            raise CapExceeded(cap, {"word": w, "found": len(found)})
    return sorted(found)


def _extensions(T: ThreeIET, w: str) -> tuple[int, int]:
    left = sum(cylinder(T, a + w) is not None for a in LETTERS)
    right = sum(cylinder(T, w + b) is not None for b in LETTERS)
    return left, right


def bispecials(T: ThreeIET, max_len: int, cap: int = DEFAULT_CAP) -> list[Bispecial]:
    """Bispecial factors of length ``<= max_len`` with their return-word case.

    The empty word's return words ``A, B, C`` are the pieces of ``[0, 1)``
    in the palindromic shape ``R1, omega_AC->B(R1 R2), R2``, so it is tagged P-ii.
    """
    _require_minimal(T)
    out = [Bispecial("", True, "P-ii", tuple(LETTERS))]
    level = [""]
    for _ in range(max_len):
        level = [u + c for u in level for c in LETTERS if cylinder(T, u + c) is not None]
        for w in level:
            left, right = _extensions(T, w)
            if left < 2 or right < 2:
                continue
            words, tag = _return_itineraries(T, cylinder(T, w), cap)
            pal = w == w[::-1]
            roman = tag.split("-", 1)[1] if tag.startswith("T3-") else tag
            case = ("P-" if roman in ("i", "ii") else "NP-") + roman
            out.append(Bispecial(w, pal, case, tuple(sorted(words))))
    return out


def _report(values: list, kind: str) -> GapReport:
    distinct = sorted(set(values))
    counts = tuple(values.count(v) for v in distinct)
    basis = None
    if len(distinct) == 1:
        basis = None
    elif len(distinct) == 2:
        basis = (distinct[0], distinct[1])
    elif len(distinct) == 3 and distinct[2] == distinct[0] + distinct[1]:
        basis = (distinct[0], distinct[1])
    return GapReport(tuple(distinct), counts, basis, None, kind)


def three_distance(T: ThreeIET, rho: QuadraticNumber, N: int) -> GapReport:
    """Distances between neighbours among ``T^k(rho)``, ``k < N``, sorted on the line."""
    _require_minimal(T)
    if N < 2:
        raise ValueError("need at least two orbit points")
    pts = sorted(orbit(T, rho, N - 1))
    return _report([b - a for a, b in zip(pts, pts[1:])], "distances")


def rotation_distances(alpha: QuadraticNumber, rho: QuadraticNumber, N: int) -> GapReport:
    """Classical three-distance: neighbour arcs of ``{rho + k alpha}``, ``k < N``, on the circle."""
    if N < 2:
        raise ValueError("need at least two orbit points")
    pts = sorted(_frac(rho + k * alpha) for k in range(N))
    arcs = [b - a for a, b in zip(pts, pts[1:])] + [1 - pts[-1] + pts[0]]
    return _report(arcs, "distances")


def _frac(x: QuadraticNumber) -> QuadraticNumber:
    return x - x.floor()


def rotation_gaps(alpha: QuadraticNumber, rho: QuadraticNumber, I: Interval, N: int) -> GapReport:
    """Gaps between successive ``n <= N`` with ``{rho + n alpha}`` in ``I``."""
    visits = [n for n in range(N + 1) if _frac(rho + n * alpha) in I]
    if len(visits) < 2:
        raise ValueError(f"orbit visits {I} fewer than twice up to N={N}")
    gaps = [b - a for a, b in zip(visits, visits[1:])]
    report = _report(gaps, "gaps")
    if len(report.values) > 3 or not report.largest_is_sum:
        raise AssertionError(f"three gap property fails: {report.values}")
    return report


def iet_gaps(T: ThreeIET, rho: QuadraticNumber, I: Interval, N: int,
             cap: int = DEFAULT_CAP) -> GapReport:
    """Gaps between visits of the ``T``-orbit of ``rho`` to ``I``; the basis is
    ``(r1, r2)`` of the return-time pattern."""
    visits = [n for n, x in enumerate(orbit(T, rho, N)) if x in I]
    if len(visits) < 2:
        raise ValueError(f"orbit visits {I} fewer than twice up to N={N}")
    gaps = [b - a for a, b in zip(visits, visits[1:])]
    rt = return_time_set(T, I, cap)
    distinct = sorted(set(gaps))
    basis = (rt.r1, rt.r2) if rt.r1 is not None else None
    return GapReport(tuple(distinct), tuple(gaps.count(v) for v in distinct), basis, rt.pattern, "gaps")
