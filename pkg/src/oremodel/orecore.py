"""Polynomial Ore algebras over K[t_1..t_n] and their action on signals.

Every element is kept in normal form ``sum c * t^alpha * d^beta`` with all
``t``'s to the left.  A monomial is one flat exponent tuple of length
``n + s``: the first ``n`` entries are the exponents of ``t`` and the last
``s`` those of the operators.

Supported operator kinds, each acting on one variable ``t_v``:

========== ================================ ===========================
kind        commutation with ``t_v``          action on ``p``
========== ================================ ===========================
weyl        ``d t = t d + 1``                 ``dp/dt_v``
shift       ``s t = t s + s``                 ``p(t + e_v)``
difference  ``D t = t D + D + 1``             ``p(t + e_v) - p(t)``
qdiff       ``d t = q t d + (q - 1) t``       ``p(.., q t_v, ..) - p``
========== ================================ ===========================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .coeffs import QQ, QQ_q, Field, FieldMismatchError, RatFunc, field_of

__all__ = [
    "KINDS",
    "AlgebraSpec",
    "OrePoly",
    "PolySignal",
    "SignalDomainError",
    "weyl",
    "shift",
    "difference",
    "qdiff",
    "sw",
    "commutative",
    "mul",
    "act",
    "substitute_operators",
    "rebase",
    "rebased_spec",
    "action_axioms_check",
]

KINDS = ("weyl", "shift", "difference", "qdiff")
_PREFIX = {"weyl": "d", "qdiff": "d", "difference": "D", "shift": "s"}
_DISCRETE = ("shift", "difference")


class SignalDomainError(ValueError):
    """An exponential signal is incompatible with the algebra."""


@dataclass(frozen=True)
class AlgebraSpec:
    """Commutation table: operator ``i`` has kind ``kinds[i]`` and acts on
    variable ``acts_on[i]``."""

    n: int
    kinds: tuple
    acts_on: tuple
    name: str = ""
    field: Field = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0 or len(self.kinds) != len(self.acts_on):
            raise ValueError("malformed algebra spec")
        for k, v in zip(self.kinds, self.acts_on):
            if k not in KINDS:
                raise ValueError(f"unknown operator kind {k!r}")
            if not 0 <= v < self.n:
                raise ValueError(f"operator acts on missing variable t{v + 1}")
        object.__setattr__(self, "field", QQ_q if "qdiff" in self.kinds else QQ)

    @property
    def s(self) -> int:
        return len(self.kinds)

    @property
    def nvars(self) -> int:
        return self.n + len(self.kinds)

    def var_names(self) -> tuple:
        names = [f"t{j + 1}" for j in range(self.n)]
        names += [f"{_PREFIX[k]}{v + 1}" for k, v in zip(self.kinds, self.acts_on)]
        return tuple(names)

    def is_commutative(self) -> bool:
        return not self.kinds

    # -- element constructors -------------------------------------------
    def zero(self) -> "OrePoly":
        return OrePoly(self, {})

    def one(self) -> "OrePoly":
        return self.const(1)

    def const(self, c) -> "OrePoly":
        c = self.field(c)
        return OrePoly(self, {(0,) * self.nvars: c} if c else {})

    def t(self, j: int) -> "OrePoly":
        """The variable ``t_{j+1}`` (0-based index)."""
        e = [0] * self.nvars
        e[j] = 1
        return OrePoly(self, {tuple(e): self.field.one})

    def op(self, i: int) -> "OrePoly":
        """The operator with 0-based index ``i``."""
        e = [0] * self.nvars
        e[self.n + i] = 1
        return OrePoly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.t(j) for j in range(self.n)] + [self.op(i) for i in range(self.s)]

    def q(self) -> "OrePoly":
        if self.field is not QQ_q:
            raise FieldMismatchError("q is only available over Q(q)")
        return self.const(RatFunc.q())

    def __repr__(self):
        return self.name or f"AlgebraSpec(n={self.n}, kinds={self.kinds})"


def weyl(n: int) -> AlgebraSpec:
    return AlgebraSpec(n, ("weyl",) * n, tuple(range(n)), f"W{n}")


def shift(n: int) -> AlgebraSpec:
    return AlgebraSpec(n, ("shift",) * n, tuple(range(n)), f"Shift{n}")


def difference(n: int) -> AlgebraSpec:
    return AlgebraSpec(n, ("difference",) * n, tuple(range(n)), f"S{n}")


def qdiff(n: int) -> AlgebraSpec:
    return AlgebraSpec(n, ("qdiff",) * n, tuple(range(n)), f"Q{n}")


def sw(n: int) -> AlgebraSpec:
    """Mixed algebra: ``D_1..D_n`` (difference) followed by ``d_1..d_n`` (weyl)."""
    kinds = ("difference",) * n + ("weyl",) * n
    return AlgebraSpec(n, kinds, tuple(range(n)) * 2, f"SW{n}")


def commutative(n: int, fld: Field = QQ) -> AlgebraSpec:
    """K[t_1..t_n] with no operators; used for commutative syzygies."""
    spec = AlgebraSpec(n, (), (), f"K[t]{n}" if fld is QQ else f"K(q)[t]{n}")
    if fld is not QQ:
        object.__setattr__(spec, "field", fld)
    return spec


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class OrePoly:
    """Element of an Ore algebra in normal form.

    ``terms`` maps exponent tuples (length ``spec.nvars``) to nonzero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec: AlgebraSpec, terms: Mapping):
        self.spec = spec
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, spec: AlgebraSpec, items: Iterable) -> "OrePoly":
        out: dict = {}
        f = spec.field
        for mono, c in items:
            c = f(c)
            v = out.get(mono)
            v = c if v is None else v + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return cls(spec, out)

    def _check(self, other: "OrePoly"):
        if other.spec != self.spec:
            raise FieldMismatchError(f"algebra mismatch: {self.spec!r} vs {other.spec!r}")

    def _lift(self, other):
        if isinstance(other, OrePoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.spec.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return OrePoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "OrePoly":
        c = self.spec.field(c)
        if not c:
            return self.spec.zero()
        return OrePoly(self.spec, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if not isinstance(other, OrePoly):
            return NotImplemented
        return mul(self.spec, self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.spec.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.spec == other.spec and self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            return self == self.spec.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        """True when no operator occurs (an element of K[t])."""
        n = self.spec.n
        return all(not any(m[n:]) for m in self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def coeff(self, mono) -> object:
        return self.terms.get(tuple(mono), self.spec.field.zero)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, j: int) -> int:
        return max((m[j] for m in self.terms), default=-1)

    def to_string(self, order=None) -> str:
        from .printing import format_poly

        return format_poly(self, order)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"OrePoly({self.spec!r}, {self})"


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------


def _sigma_t_power(kind: str, e: int, fld: Field):
    """sigma(t^e) as ``{exponent: coeff}``."""
    if kind == "weyl":
        return {e: fld.one}
    if kind in _DISCRETE:
        return {r: fld(comb(e, r)) for r in range(e + 1)}
    return {e: RatFunc.q() ** e}


def _delta_t_power(kind: str, e: int, fld: Field):
    """delta(t^e) as ``{exponent: coeff}``."""
    if kind == "weyl":
        return {e - 1: fld(e)} if e else {}
    if kind == "shift":
        return {}
    if kind == "difference":
        return {r: fld(comb(e, r)) for r in range(e)}
    c = RatFunc.q() ** e - 1
    return {e: c} if c else {}


@lru_cache(maxsize=None)
def _op_power_past_t(kind: str, fld: Field, k: int, c: int):
    """Normal form of ``d^k * t^c`` for one operator acting on its own
    variable: a tuple of ``(t exponent, d exponent, coeff)``."""
    state = {(c, 0): fld.one}
    for _ in range(k):
        nxt: dict = {}
        for (e, j), v in state.items():
            for r, w in _sigma_t_power(kind, e, fld).items():
                key = (r, j + 1)
                nxt[key] = nxt.get(key, fld.zero) + v * w
            for r, w in _delta_t_power(kind, e, fld).items():
                key = (r, j)
                nxt[key] = nxt.get(key, fld.zero) + v * w
        state = {key: v for key, v in nxt.items() if v}
    return tuple((e, j, v) for (e, j), v in state.items())


@lru_cache(maxsize=1 << 18)
def _mono_mul(spec: AlgebraSpec, m1: tuple, m2: tuple):
    """Product of two monomials as a tuple of ``(monomial, coeff)``."""
    n = spec.n
    beta = m1[n:]
    fld = spec.field
    if not any(beta) or not any(m2[:n]):
        return ((tuple(a + b for a, b in zip(m1, m2)), fld.one),)
    # d^beta * t^gamma, pushing operators right-to-left
    state = {m2: fld.one}
    for i in range(spec.s - 1, -1, -1):
        k = beta[i]
        if not k:
            continue
        v = spec.acts_on[i]
        kind = spec.kinds[i]
        nxt: dict = {}
        for mono, coef in state.items():
            c = mono[v]
            if c == 0:
                lst = list(mono)
                lst[n + i] += k
                key = tuple(lst)
                nxt[key] = nxt.get(key, fld.zero) + coef
                continue
            for e, j, w in _op_power_past_t(kind, fld, k, c):
                lst = list(mono)
                lst[v] = e
                lst[n + i] += j
                key = tuple(lst)
                nxt[key] = nxt.get(key, fld.zero) + coef * w
        state = {key: c for key, c in nxt.items() if c}
    alpha = m1[:n]
    out = []
    for mono, coef in state.items():
        lst = list(mono)
        for j in range(n):
            lst[j] += alpha[j]
        out.append((tuple(lst), coef))
    return tuple(out)


def mul_term(spec: AlgebraSpec, mono: tuple, c, b_terms: Mapping) -> dict:
    """``(c * mono) * b`` as a term dict."""
    out: dict = {}
    for m2, c2 in b_terms.items():
        cc = c * c2
        for m, w in _mono_mul(spec, mono, m2):
            v = out.get(m)
            v = cc * w if v is None else v + cc * w
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def mul(spec: AlgebraSpec, a: OrePoly, b: OrePoly) -> OrePoly:
    """Product ``a * b`` in normal form."""
    if a.spec != spec or b.spec != spec:
        raise FieldMismatchError("operands belong to a different algebra")
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m, v in mul_term(spec, m1, c1, b.terms).items():
            w = out.get(m)
            w = v if w is None else w + v
            if w:
                out[m] = w
            else:
                del out[m]
    return OrePoly(spec, out)


# ---------------------------------------------------------------------------
# signals and the action
# ---------------------------------------------------------------------------


class PolySignal:
    """A polynomial ``poly`` in ``t`` times an optional exponential ``exp_lam``.

    For continuous operators ``exp_lam = exp(lam . t)``; for discrete ones
    ``exp_lam = lam^t``.  Only the polynomial factor is ever manipulated.
    """

    __slots__ = ("poly", "lam")

    def __init__(self, poly: OrePoly, lam: Optional[Sequence] = None):
        if not poly.is_polynomial():
            raise ValueError("signal polynomial must not contain operators")
        self.poly = poly
        if lam is not None:
            lam = tuple(poly.spec.field(x) for x in lam)
            if len(lam) != poly.spec.n:
                raise ValueError("frequency vector has wrong length")
        self.lam = lam

    @property
    def spec(self) -> AlgebraSpec:
        return self.poly.spec

    def frequency(self) -> tuple:
        """The frequency, with an absent one read as the zero vector."""
        if self.lam is None:
            return (self.spec.field.zero,) * self.spec.n
        return self.lam

    def with_poly(self, poly: OrePoly) -> "PolySignal":
        out = PolySignal.__new__(PolySignal)
        out.poly = poly
        out.lam = self.lam
        return out

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "PolySignal") -> "PolySignal":
        if self.lam != other.lam and not (self.is_zero() or other.is_zero()):
            if self.frequency() != other.frequency():
                raise ValueError("cannot add signals with different frequencies")
        if self.is_zero():
            return other
        return self.with_poly(self.poly + other.poly)

    def scale(self, c) -> "PolySignal":
        return self.with_poly(self.poly.scale(c))

    def __eq__(self, other):
        if not isinstance(other, PolySignal):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.poly == other.poly and self.frequency() == other.frequency()

    def __hash__(self):
        return hash((self.poly, self.frequency()))

    def __str__(self):
        if self.lam is None:
            return str(self.poly)
        return f"({self.poly})*exp({list(map(str, self.lam))})"

    __repr__ = __str__


def check_signal(spec: AlgebraSpec, p: PolySignal) -> None:
    if p.spec != spec:
        raise FieldMismatchError("signal belongs to a different algebra")
    if p.lam is None:
        return
    kinds = set(spec.kinds)
    if "qdiff" in kinds:
        raise SignalDomainError("exponential signals are not supported for q-difference operators")
    for k, v in zip(spec.kinds, spec.acts_on):
        if k in _DISCRETE and p.lam[v] == 0:
            raise SignalDomainError(
                f"frequency component {v + 1} is zero but a discrete operator acts on t{v + 1}"
            )


def _shift_var(terms: Mapping, v: int, fld: Field) -> dict:
    """p(t + e_v)."""
    out: dict = {}
    for m, c in terms.items():
        e = m[v]
        for r in range(e + 1):
            lst = list(m)
            lst[v] = r
            key = tuple(lst)
            w = out.get(key)
            add = c * comb(e, r)
            w = add if w is None else w + add
            if w:
                out[key] = w
            else:
                del out[key]
    return out


def _apply_op(spec: AlgebraSpec, i: int, terms: Mapping, lam) -> dict:
    """Polynomial part of ``op_i . (p exp_lam)`` divided by ``exp_lam``."""
    kind = spec.kinds[i]
    v = spec.acts_on[i]
    fld = spec.field
    lv = fld.zero if lam is None else lam[v]
    out: dict = {}

    def add(key, val):
        w = out.get(key)
        w = val if w is None else w + val
        if w:
            out[key] = w
        else:
            del out[key]

    if kind == "weyl":
        for m, c in terms.items():
            if m[v]:
                lst = list(m)
                lst[v] -= 1
                add(tuple(lst), c * m[v])
            if lv:
                add(m, c * lv)
        return out
    if kind == "qdiff":
        qq = RatFunc.q()
        for m, c in terms.items():
            if m[v]:
                add(m, c * (qq ** m[v] - 1))
        return out
    lam_v = fld.one if lam is None else lv
    shifted = _shift_var(terms, v, fld)
    for m, c in shifted.items():
        add(m, c * lam_v)
    if kind == "difference":
        for m, c in terms.items():
            add(m, -c)
    return out


def act(spec: AlgebraSpec, a: OrePoly, p: PolySignal) -> PolySignal:
    """The signal ``a . p``; the exponential factor is carried along."""
    check_signal(spec, p)
    if a.spec != spec:
        raise FieldMismatchError("operator belongs to a different algebra")
    n = spec.n
    cache: dict = {(0,) * spec.s: p.poly.terms}

    def op_power(beta: tuple) -> Mapping:
        hit = cache.get(beta)
        if hit is not None:
            return hit
        i = max(k for k, b in enumerate(beta) if b)
        prev = list(beta)
        prev[i] -= 1
        res = _apply_op(spec, i, op_power(tuple(prev)), p.lam)
        cache[beta] = res
        return res

    out: dict = {}
    for m, c in a.terms.items():
        alpha, beta = m[:n], m[n:]
        for pm, pc in op_power(beta).items():
            key = tuple(x + y for x, y in zip(pm[:n], alpha)) + pm[n:]
            w = out.get(key)
            w = c * pc if w is None else w + c * pc
            if w:
                out[key] = w
            else:
                del out[key]
    return p.with_poly(OrePoly(spec, out))


# ---------------------------------------------------------------------------
# operator substitutions
# ---------------------------------------------------------------------------


def substitute_operators(a: OrePoly, subs: Mapping, target: Optional[AlgebraSpec] = None) -> OrePoly:
    """Apply ``op_i -> scale * op_i + offset`` for ``subs[i] = (scale, offset)``.

    Constants commute with everything and the operators commute with each
    other, so the expansion is already in normal form.
    """
    spec = a.spec
    target = target or spec
    fld = spec.field
    n = spec.n
    out: dict = {}
    for m, c in a.terms.items():
        partial = {m: c}
        for i, (scale, offset) in subs.items():
            k = m[n + i]
            if not k:
                continue
            scale, offset = fld(scale), fld(offset)
            nxt: dict = {}
            for mono, cc in partial.items():
                for j in range(k + 1):
                    w = cc * comb(k, j) * scale**j * offset ** (k - j)
                    if not w:
                        continue
                    lst = list(mono)
                    lst[n + i] = j
                    key = tuple(lst)
                    nxt[key] = nxt.get(key, fld.zero) + w
            partial = nxt
        for mono, cc in partial.items():
            w = out.get(mono, fld.zero) + cc
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
    return OrePoly(target, out)


def rebased_spec(spec: AlgebraSpec, i: int, alpha) -> AlgebraSpec:
    """The algebra generated by ``op_i - alpha`` in place of ``op_i``."""
    alpha = spec.field(alpha)
    kind = spec.kinds[i]
    if kind == "weyl" or alpha == 0:
        return spec
    if kind == "shift" and alpha == 1:
        new = "difference"
    elif kind == "difference" and alpha == -1:
        new = "shift"
    else:
        raise ValueError(f"rebasing a {kind} operator by {alpha} leaves the supported kinds")
    kinds = list(spec.kinds)
    kinds[i] = new
    kinds = tuple(kinds)
    for maker in (weyl, shift, difference, qdiff, sw):
        cand = maker(spec.n)
        if cand.kinds == kinds and cand.acts_on == spec.acts_on:
            return cand
    return AlgebraSpec(spec.n, kinds, spec.acts_on)


def rebase(spec: AlgebraSpec, a: OrePoly, i: int, alpha) -> OrePoly:
    """Rewrite ``a`` in the generator ``D = op_i - alpha``.

    Each ``op_i`` is replaced by ``D + alpha`` and the result lives in
    :func:`rebased_spec`.  For a shift operator and ``alpha = 1`` this is the
    passage ``s = D + 1`` to the difference operator; rebasing back by
    ``-alpha`` is the identity.
    """
    if a.spec != spec:
        raise FieldMismatchError("element belongs to a different algebra")
    target = rebased_spec(spec, i, alpha)
    return substitute_operators(a, {i: (1, alpha)}, target)


def action_axioms_check(spec: AlgebraSpec, o1: OrePoly, o2: OrePoly, p: PolySignal, q: PolySignal) -> bool:
    """Check the three module-action identities for the given operands."""
    lhs1 = act(spec, mul(spec, o1, o2), p)
    rhs1 = act(spec, o1, act(spec, o2, p))
    lhs2 = act(spec, o1 + o2, p)
    rhs2 = act(spec, o1, p) + act(spec, o2, p)
    lhs3 = act(spec, o1, p + q)
    rhs3 = act(spec, o1, p) + act(spec, o1, q)
    return lhs1 == rhs1 and lhs2 == rhs2 and lhs3 == rhs3
