"""Text form of operators: ``2*t1*d1 + 3*t2*d2 - 6``.

Terms appear in descending order of the given monomial order (default
degrevlex with operators above variables).  Rational-function coefficients
are parenthesized unless they are rational constants.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import RatFunc, upoly_str


def _mono_str(names, mono) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _coeff_parts(c):
    """Split a coefficient into ``(negative, body)``; body ``''`` means 1."""
    if isinstance(c, RatFunc):
        if c.is_constant():
            c = c.num[0] if c.num else Fraction(0)
        else:
            if c.is_polynomial() and sum(1 for x in c.num if x) == 1:
                lead = c.num[-1]
                neg = lead < 0
                body = upoly_str(tuple(-x for x in c.num) if neg else c.num)
                return neg, body
            return False, f"({c})" if c.is_polynomial() else str(c)
    neg = c < 0
    a = -c if neg else c
    return neg, "" if a == 1 else str(a)


def format_poly(a, order=None) -> str:
    if a.is_zero():
        return "0"
    from .gb import MonomialOrder

    spec = a.spec
    order = order or MonomialOrder.for_spec(spec)
    names = spec.var_names()
    monos = sorted(a.terms, key=order.key, reverse=True)
    out = []
    for i, m in enumerate(monos):
        neg, body = _coeff_parts(a.terms[m])
        mono = _mono_str(names, m)
        if mono and body:
            term = f"{body}*{mono}"
        else:
            term = mono or body or "1"
        if i == 0:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)
