"""Exact coefficient fields: the rationals and rational functions in ``q``.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions
are :class:`RatFunc` values with coprime numerator/denominator and a monic
denominator, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "FieldMismatchError",
    "RatFunc",
    "Field",
    "QQ",
    "QQ_q",
    "field_of",
    "field_add",
    "field_mul",
    "field_neg",
    "field_inv",
    "upoly_str",
]


class FieldMismatchError(TypeError):
    """Raised when elements of different coefficient fields are combined."""


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q: tuples of Fractions, lowest degree first
# ---------------------------------------------------------------------------

UPoly = tuple


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return (), _trim(r)
    qt = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = c / lb
        qt[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return _trim(qt), _trim(r[:db])


def _pmonic(a):
    if not a:
        return a
    lc = a[-1]
    return a if lc == 1 else tuple(x / lc for x in a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def upoly_str(c, var="q"):
    """Print a dense polynomial in descending powers, e.g. ``q^2 - 1``."""
    if not c:
        return "0"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        x = c[k]
        if x == 0:
            continue
        neg = x < 0
        ax = -x if neg else x
        if k == 0:
            body = str(ax)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if ax == 1 else f"{ax}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Element of Q(q) in canonical form: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(Fraction(1),), _canonical=False):
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not _canonical:
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = (Fraction(1),)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    num = tuple(x / lc for x in num)
                    den = tuple(x / lc for x in den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def constant(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c,) if c else (), (Fraction(1),), _canonical=True)

    @classmethod
    def q(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)), (Fraction(1),), _canonical=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.constant(other)
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot mix Q and Q(q) elements")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RatFunc(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc()
        if len(self.den) == 1 and len(other.den) == 1 and (
            len(self.num) == 1 or len(other.num) == 1
        ):
            return RatFunc(_pmul(self.num, other.num), (Fraction(1),), _canonical=True)
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self == RatFunc.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        num = upoly_str(self.num)
        if len(self.den) == 1:
            return num
        return f"({num})/({upoly_str(self.den)})"


FieldElem = Union[Fraction, RatFunc]


class Field:
    """A coefficient field tag: ``QQ`` or ``QQ_q``."""

    def __init__(self, name: str, one):
        self.name = name
        self.one = one
        self.zero = one - one

    def __call__(self, x) -> FieldElem:
        if self is QQ:
            if isinstance(x, RatFunc):
                raise FieldMismatchError("cannot convert a Q(q) element into Q")
            return Fraction(x)
        if isinstance(x, RatFunc):
            return x
        return RatFunc.constant(x)

    def contains(self, x) -> bool:
        if self is QQ:
            return isinstance(x, (Fraction, int))
        return isinstance(x, RatFunc)

    def __repr__(self):
        return self.name


QQ = Field("QQ", Fraction(1))
QQ_q = Field("QQ(q)", RatFunc.constant(1))


def field_of(x) -> Field:
    if isinstance(x, RatFunc):
        return QQ_q
    if isinstance(x, (Fraction, int)):
        return QQ
    raise TypeError(f"not a field element: {x!r}")


def _same(a, b):
    fa, fb = field_of(a), field_of(b)
    if fa is not fb:
        raise FieldMismatchError(f"field mismatch: {fa} vs {fb}")
    return fa


def field_add(a, b):
    f = _same(a, b)
    return f(a) + f(b)


def field_mul(a, b):
    f = _same(a, b)
    return f(a) * f(b)


def field_neg(a):
    return -field_of(a)(a)


def field_inv(a):
    f = field_of(a)
    a = f(a)
    if not a:
        raise ZeroDivisionError("inversion of zero")
    return 1 / a if f is QQ else a.inverse()
