"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A :class:`QuadraticNumber` is stored as ``(p + q*sqrt(d)) / den`` with
integers ``p, q, den``, ``den > 0`` and ``gcd(p, q, den) == 1``.  The rational
views ``a = p/den`` and ``b = q/den`` are exposed as properties.

Rational numbers (``b == 0``) are treated as members of every field, so they
combine freely with numbers of any ``d``; two irrational numbers must share
their radicand.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, LiteralSyntaxError, MixedFields

__all__ = [
    "FieldTag",
    "QuadraticNumber",
    "LatticeWitness",
    "Q",
    "sqrt",
    "squarefree_decomposition",
    "arith",
    "sign",
    "galois_conjugate",
    "parse_exact",
    "render",
    "lattice_membership",
    "q_independent",
]

Rational = Union[int, Fraction]


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, d = 1, 1
    m = n
    f = 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        s *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1 if f == 2 else 2
    d *= m
    return s, d


@dataclass(frozen=True)
class FieldTag:
    """The ambient field Q(sqrt(d)); ``d == 1`` is the rationals."""

    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"radicand must be a positive integer, got {self.d!r}")
        if squarefree_decomposition(self.d)[0] != 1:
            raise ValueError(f"radicand {self.d} is not square-free")

    def __str__(self) -> str:
        return "Q" if self.d == 1 else f"Q(sqrt({self.d}))"


class QuadraticNumber:
    __slots__ = ("_p", "_q", "_den", "_d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int | FieldTag = 1):
        if isinstance(d, FieldTag):
            d = d.d
        else:
            FieldTag(d)
        a = Fraction(a)
        b = Fraction(b)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, d)

    def _set(self, p: int, q: int, den: int, d: int) -> None:
        if d == 1 and q:
            p, q = p + q, 0
        if den < 0:
            p, q, den = -p, -q, -den
        g = math.gcd(math.gcd(p, q), den)
        if g > 1:
            p //= g
            q //= g
            den //= g
        self._p, self._q, self._den, self._d = p, q, den, d

    @classmethod
    def _raw(cls, p: int, q: int, den: int, d: int) -> QuadraticNumber:
        obj = cls.__new__(cls)
        obj._set(p, q, den, d)
        return obj

    # -- views ---------------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def d(self) -> int:
        return self._d

    @property
    def field(self) -> FieldTag:
        return FieldTag(self._d)

    def is_rational(self) -> bool:
        return self._q == 0

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self._d)
        return NotImplemented

    def _common_d(self, other: QuadraticNumber) -> int:
        if self._d == other._d:
            return self._d
        if other._q == 0:
            return self._d
        if self._q == 0:
            return other._d
        raise FieldMismatch(f"cannot combine numbers of {self.field} and {other.field}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._common_d(o)
        den = self._den * o._den
        return QuadraticNumber._raw(self._p * o._den + o._p * self._den,
                                    self._q * o._den + o._q * self._den, den, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._raw(-self._p, -self._q, self._den, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._common_d(o)
        p = self._p * o._p + self._q * o._q * d
        q = self._p * o._q + self._q * o._p
        return QuadraticNumber._raw(p, q, self._den * o._den, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        # 1/(p + q r) = (p - q r) / (p^2 - q^2 d), scaled by den
        norm = self._p * self._p - self._q * self._q * self._d
        if norm == 0:
            raise DivisionByZero("division by zero")
        return QuadraticNumber._raw(self._p * self._den, -self._q * self._den, norm, self._d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._common_d(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticNumber(1, 0, self._d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        p, q = self._p, self._q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        diff = p * p - q * q * self._d
        s = (diff > 0) - (diff < 0)
        return s if p > 0 else -s

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadraticNumber with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._q == 0 and Fraction(self._p, self._den) == other
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        if self._p != other._p or self._q != other._q or self._den != other._den:
            return False
        return self._q == 0 or self._d == other._d

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._den))
        return hash((self._p, self._q, self._den, self._d))

    def __bool__(self):
        return self._p != 0 or self._q != 0

    # -- misc ----------------------------------------------------------------

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber._raw(self._p, -self._q, self._den, self._d)

    def __abs__(self) -> QuadraticNumber:
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        k = int(self.to_decimal(30).to_integral_value(rounding="ROUND_FLOOR"))
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def __float__(self) -> float:
        return (self._p + self._q * math.sqrt(self._d)) / self._den

    def to_decimal(self, digits: int = 50) -> Decimal:
        """Decimal approximation with ``digits`` significant digits."""
        with localcontext() as ctx:
            # guard digits absorb cancellation between the two parts
            extra = len(str(abs(self._p))) + len(str(abs(self._q))) + 20
            ctx.prec = digits + extra
            val = (Decimal(self._p) + Decimal(self._q) * Decimal(self._d).sqrt()) / Decimal(self._den)
            ctx.prec = digits
            return +val

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"QuadraticNumber({render(self)!r})"

    def __reduce__(self):
        return (QuadraticNumber, (self.a, self.b, self._d))


@dataclass(frozen=True)
class LatticeWitness:
    m: int
    n: int


def Q(value: Rational | str, d: int = 1) -> QuadraticNumber:
    """Shorthand constructor: ``Q(3)``, ``Q(Fraction(1, 2))`` or ``Q("1/2 + sqrt(5)")``."""
    if isinstance(value, str):
        x = parse_exact(value)
        if x.is_rational() and d != 1:
            return QuadraticNumber(x.a, 0, d)
        return x
    return QuadraticNumber(value, 0, d)


def sqrt(n: int) -> QuadraticNumber:
    """``sqrt(n)`` with square factors extracted."""
    s, d = squarefree_decomposition(n)
    if d == 1:
        return QuadraticNumber(s, 0, 1)
    return QuadraticNumber(0, s, d)


# -- functional surface -------------------------------------------------------

_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def arith(x: QuadraticNumber, y: QuadraticNumber, op: str) -> QuadraticNumber:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(x, y)


def sign(x: QuadraticNumber) -> int:
    return x.sign()


def galois_conjugate(x: QuadraticNumber) -> QuadraticNumber:
    return x.conjugate()


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render(x: QuadraticNumber) -> str:
    """Canonical literal ``a + b*sqrt(d)``; zero parts omitted."""
    a, b = x.a, x.b
    if b == 0:
        return _frac_str(a)
    mag = abs(b)
    rad = f"sqrt({x.d})" if mag == 1 else f"{_frac_str(mag)}*sqrt({x.d})"
    if a == 0:
        return rad if b > 0 else "-" + rad
    return f"{_frac_str(a)} {'+' if b > 0 else '-'} {rad}"


# -- literal parser -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LiteralSyntaxError(f"unexpected character at position {pos} in {text!r}")
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("sqrt", "sqrt"))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    return tokens


class _Parser:
    # expr := term (("+"|"-") term)* ; term := factor (("*"|"/") factor)*
    # factor := int | "sqrt" "(" uint ")" | "(" expr ")" | "-" factor

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.radicands: set[int] = set()

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise LiteralSyntaxError(f"expected {want!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> QuadraticNumber:
        if not self.tokens:
            raise LiteralSyntaxError("empty literal")
        value = self.expr()
        if self.i != len(self.tokens):
            raise LiteralSyntaxError(f"trailing input in {self.text!r}")
        return value

    def expr(self) -> QuadraticNumber:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QuadraticNumber:
        value = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivisionByZero(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def factor(self) -> QuadraticNumber:
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return QuadraticNumber(int(val))
        if kind == "sqrt":
            self.take()
            self.take("op", "(")
            n = int(self.take("int")[1])
            self.take("op", ")")
            s, d = squarefree_decomposition(n)
            if d > 1:
                self.radicands.add(d)
                if len(self.radicands) > 1:
                    raise MixedFields(f"radicands {sorted(self.radicands)} in {self.text!r}")
            return sqrt(n)
        if (kind, val) == ("op", "("):
            self.take()
            value = self.expr()
            self.take("op", ")")
            return value
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.factor()
        raise LiteralSyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_exact(text: str, expected: FieldTag | int | None = None) -> QuadraticNumber:
    """Parse an exact literal such as ``"1/5*sqrt(5) - 1/5"``."""
    if not isinstance(text, str):
        raise LiteralSyntaxError(f"literal must be a string, got {type(text).__name__}")
    value = _Parser(text).parse()
    if expected is not None:
        d = expected.d if isinstance(expected, FieldTag) else FieldTag(expected).d
        if value.is_rational():
            return QuadraticNumber(value.a, 0, d)
        if value.d != d:
            raise FieldMismatch(f"{text!r} lives in Q(sqrt({value.d})), expected Q(sqrt({d}))")
    return value


# -- lattice questions --------------------------------------------------------


def _rows(*xs: QuadraticNumber) -> tuple[list[Fraction], list[Fraction]]:
    d = 1
    for x in xs:
        if not x.is_rational():
            if d not in (1, x.d):
                raise FieldMismatch("arguments live in different fields")
            d = x.d
    return [x.a for x in xs], [x.b for x in xs]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def _integer_point(p: Fraction, q: Fraction, r: Fraction) -> tuple[int, int] | None:
    """Integer (m, n) with p*m + q*n == r, (p, q) != (0, 0)."""
    scale = math.lcm(p.denominator, q.denominator, r.denominator)
    P, Qn, R = int(p * scale), int(q * scale), int(r * scale)
    g, x, y = _ext_gcd(abs(P), abs(Qn))
    if R % g:
        return None
    k = R // g
    m = x * k * (1 if P >= 0 else -1)
    n = y * k * (1 if Qn >= 0 else -1)
    # shrink along the kernel direction (Qn/g, -P/g) towards the origin
    if P and Qn:
        step_m, step_n = Qn // g, -P // g
        t = round(Fraction(-m * step_m - n * step_n, step_m * step_m + step_n * step_n))
        m, n = m + t * step_m, n + t * step_n
    return m, n


def lattice_membership(u: QuadraticNumber, v: QuadraticNumber, t: QuadraticNumber) -> LatticeWitness | None:
    """Decide ``t in u*Z + v*Z``; return a witness ``(m, n)`` or ``None``."""
    (ua, va, ta), (ub, vb, tb) = _rows(u, v, t)
    det = ua * vb - va * ub
    if det != 0:
        m = (ta * vb - va * tb) / det
        n = (ua * tb - ta * ub) / det
        if m.denominator == 1 and n.denominator == 1:
            return LatticeWitness(int(m), int(n))
        return None
    rows = [(ua, va, ta), (ub, vb, tb)]
    nonzero = [row for row in rows if row[0] or row[1]]
    if not nonzero:
        return LatticeWitness(0, 0) if ta == 0 and tb == 0 else None
    p, q, r = nonzero[0]
    # rank one: every other row must be a multiple of the pivot row
    for row in rows:
        if not (row[0] or row[1]):
            if row[2]:
                return None
            continue
        ratio = row[0] / p if p else row[1] / q
        if row[0] != ratio * p or row[1] != ratio * q or row[2] != ratio * r:
            return None
    point = _integer_point(p, q, r)
    return LatticeWitness(*point) if point else None


def q_independent(u: QuadraticNumber, v: QuadraticNumber) -> bool:
    """True iff ``u`` and ``v`` are linearly independent over Q."""
    (ua, va), (ub, vb) = _rows(u, v)
    return ua * vb - va * ub != 0
