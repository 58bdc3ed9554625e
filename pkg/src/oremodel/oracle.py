"""Commutative routes to ``ker(kappa_p)`` used to cross-check the Ore engine.

Weyl route: list all partial derivatives ``d^alpha p_i`` over a box one
larger than the degrees of ``p_i``, compute their syzygies over ``K[t]`` and
map a syzygy ``(q_k)`` to ``sum q_k d^{alpha_k} e_{i_k}``.

Difference route: the same with forward differences, computed in the
binomial basis ``p_nu(t) = prod C(t_i, nu_i)`` where differencing is an
index shift.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .gb import ModuleVector, Submodule
from .modops import left_syzygy
from .orecore import AlgebraSpec, OrePoly, commutative

__all__ = [
    "BinomialPoly",
    "DerivativeFamily",
    "falling_factorial_coeffs",
    "to_binomial",
    "to_binomial_recursive",
    "from_binomial",
    "delta_action_binomial",
    "derivative_family",
    "shift_family",
    "weyl_oracle_kernel",
    "difference_oracle_kernel",
]


@dataclass(frozen=True)
class BinomialPoly:
    """``sum c_nu p_nu`` with ``coeffs = {nu: c_nu}`` (no zero entries)."""

    n: int
    coeffs: Mapping

    def __eq__(self, other):
        return isinstance(other, BinomialPoly) and self.n == other.n and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def dense(self, bound: int) -> list:
        """Univariate coefficients ``[c_bound, ..., c_0]``."""
        return [self.coeffs.get((k,), 0) for k in range(bound, -1, -1)]


def _t_terms(p: OrePoly) -> dict:
    """Polynomial part as ``{alpha: c}``; rejects operators."""
    if not p.is_polynomial():
        raise ValueError("expected a polynomial in t")
    n = p.spec.n
    return {m[:n]: c for m, c in p.terms.items()}


def _from_t_terms(spec: AlgebraSpec, terms: Mapping) -> OrePoly:
    pad = (0,) * spec.s
    return OrePoly(spec, {a + pad: c for a, c in terms.items() if c})


def falling_factorial_coeffs(nu: int) -> list:
    """Coefficients ``g_j`` of ``t (t-1) ... (t-nu+1)``, index ``j`` = power of t."""
    g = [Fraction(1)]
    for k in range(nu):
        nxt = [Fraction(0)] * (len(g) + 1)
        for j, c in enumerate(g):
            nxt[j + 1] += c
            nxt[j] -= k * c
        g = nxt
    return g


def to_binomial(p: OrePoly) -> BinomialPoly:
    """Triangular change of basis: repeatedly peel off the greatest monomial
    ``d t^nu`` as ``d nu! p_nu``."""
    n = p.spec.n
    work = dict(_t_terms(p))
    out: dict = {}
    ff = [falling_factorial_coeffs(k) for k in range(max((max(a) for a in work), default=0) + 1)]
    while work:
        nu = max(work, key=lambda a: (sum(a), a))
        d = work[nu]
        scale = 1
        for x in nu:
            scale *= factorial(x)
        out[nu] = out.get(nu, 0) + d * scale
        # subtract d * prod_i (t_i)_{nu_i}
        for idx in itertools.product(*[range(x + 1) for x in nu]):
            c = d
            for i, j in enumerate(idx):
                c *= ff[nu[i]][j]
            if not c:
                continue
            w = work.get(idx, 0) - c
            if w:
                work[idx] = w
            else:
                work.pop(idx, None)
    return BinomialPoly(n, {k: v for k, v in out.items() if v})


def _g_table(vmax: int) -> dict:
    """``g[(j, nu)]``: coefficient of ``t^j`` in ``t (t-1) ... (t-nu+1)``,
    filled by ``g_j^(nu) = g_{j-1}^(nu-1) - (nu-1) g_j^(nu-1)``."""
    g = {(0, 0): 1}
    for nu in range(1, vmax + 1):
        for j in range(0, nu + 1):
            g[(j, nu)] = g.get((j - 1, nu - 1), 0) - (nu - 1) * g.get((j, nu - 1), 0)
    return g


def _k_coeffs(v: int, g: dict) -> dict:
    """``k_v(l)`` with ``t^v = sum_{l=0}^{v-1} k_v(l) g^(v-l)``, ``k_v(0) = 1``."""
    k = {0: 1}
    for l in range(1, v):
        k[l] = -g.get((v - l, v), 0) - sum(k[i] * g.get((v - l, v - i), 0) for i in range(1, l))
    return k


def to_binomial_recursive(p: OrePoly) -> BinomialPoly:
    """Binomial coefficients via the ``g``/``k`` recursions, one variable at a
    time: ``t^v = sum_l k_v(l) (v-l)! p_{v-l}``."""
    n = p.spec.n
    terms = _t_terms(p)
    vmax = max((max(a) for a in terms), default=0)
    g = _g_table(vmax)
    uni: dict = {}
    for v in range(vmax + 1):
        if v == 0:
            uni[0] = {0: Fraction(1)}
            continue
        k = _k_coeffs(v, g)
        uni[v] = {v - l: Fraction(k[l] * factorial(v - l)) for l in range(v) if k[l]}
    out: dict = {}
    for alpha, c in terms.items():
        for combo in itertools.product(*[uni[a].items() for a in alpha]):
            nu = tuple(x for x, _ in combo)
            w = c
            for _, y in combo:
                w *= y
            out[nu] = out.get(nu, 0) + w
    return BinomialPoly(n, {k: v for k, v in out.items() if v})


def from_binomial(b: BinomialPoly, spec: AlgebraSpec) -> OrePoly:
    """Expand ``sum c_nu p_nu`` back into monomials."""
    if spec.n != b.n:
        raise ValueError("variable count mismatch")
    vmax = max((max(nu) for nu in b.coeffs), default=0)
    ff = [falling_factorial_coeffs(k) for k in range(vmax + 1)]
    out: dict = {}
    for nu, c in b.coeffs.items():
        scale = 1
        for x in nu:
            scale *= factorial(x)
        base = spec.field(c) / scale
        for idx in itertools.product(*[range(x + 1) for x in nu]):
            w = base
            for i, j in enumerate(idx):
                w *= ff[nu[i]][j]
            if w:
                out[idx] = out.get(idx, 0) + w
    return _from_t_terms(spec, out)


def delta_action_binomial(mu: Sequence[int], b: BinomialPoly) -> BinomialPoly:
    """``Delta^mu`` on the binomial basis: ``p_nu -> p_{nu - mu}`` or 0."""
    mu = tuple(mu)
    out = {}
    for nu, c in b.coeffs.items():
        if all(m <= x for m, x in zip(mu, nu)):
            out[tuple(x - m for m, x in zip(mu, nu))] = c
    return BinomialPoly(b.n, out)


@dataclass
class DerivativeFamily:
    """Stacked derivatives (or differences) of a signal vector.

    ``entries[k] = (i, alpha, value)`` says ``value = op^alpha . p_i``; the
    exponents run over the box ``alpha_j <= bounds[i][j] + 1`` in
    lexicographic order.  ``tags`` is the matrix sending a syzygy to its
    operator row.
    """

    spec: AlgebraSpec
    bounds: list
    entries: list

    @property
    def values(self) -> list:
        return [v for _, _, v in self.entries]

    def tag_row(self, k: int, m: int) -> ModuleVector:
        i, alpha, _ = self.entries[k]
        return _op_unit(self.spec, m, i, alpha)

    def lift(self, syzygy: ModuleVector, m: int) -> ModuleVector:
        """``(q_1, ..., q_l) -> sum q_k op^{alpha_k} e_{i_k}``."""
        spec = self.spec
        n = spec.n
        parts = [dict() for _ in range(m)]
        for (i, alpha, _), q in zip(self.entries, syzygy.entries):
            for mono, c in q.terms.items():
                key = mono[:n] + tuple(alpha)
                w = parts[i].get(key, 0) + spec.field(c)
                if w:
                    parts[i][key] = w
                else:
                    parts[i].pop(key, None)
        return ModuleVector([OrePoly(spec, p) for p in parts], spec)


def _op_unit(spec, m, i, alpha):
    ent = [spec.zero()] * m
    ent[i] = OrePoly(spec, {(0,) * spec.n + tuple(alpha): spec.field.one})
    return ModuleVector(ent, spec)


def _partial(terms: Mapping, alpha: tuple) -> dict:
    out = {}
    for a, c in terms.items():
        if any(x < y for x, y in zip(a, alpha)):
            continue
        w = c
        for x, y in zip(a, alpha):
            for k in range(y):
                w *= x - k
        key = tuple(x - y for x, y in zip(a, alpha))
        out[key] = out.get(key, 0) + w
    return {k: v for k, v in out.items() if v}


def _box(bound: Sequence[int]):
    return itertools.product(*[range(b + 2) for b in bound])


def _check_ops(spec: AlgebraSpec, kind: str):
    if spec.s != spec.n or any(k != kind for k in spec.kinds) or spec.acts_on != tuple(range(spec.n)):
        raise ValueError(f"oracle route needs the pure {kind} algebra, got {spec!r}")


def _polys(p, spec):
    out = []
    for x in p:
        x = getattr(x, "poly", x)
        if x.spec != spec:
            raise ValueError("signal belongs to a different algebra")
        out.append(x)
    return out


def derivative_family(p: Sequence[OrePoly], spec: AlgebraSpec) -> DerivativeFamily:
    _check_ops(spec, "weyl")
    polys = _polys(p, spec)
    n = spec.n
    bounds, entries = [], []
    for i, x in enumerate(polys):
        terms = _t_terms(x)
        d = [max((a[j] for a in terms), default=-1) for j in range(n)]
        bounds.append(d)
        for alpha in _box(d):
            entries.append((i, alpha, _from_t_terms(spec, _partial(terms, alpha))))
    return DerivativeFamily(spec, bounds, entries)


def shift_family(p: Sequence[OrePoly], spec: AlgebraSpec) -> DerivativeFamily:
    """Forward differences ``Delta^mu p_i`` for ``mu`` up to one past the
    bounding index of ``p_i``, computed in the binomial basis."""
    _check_ops(spec, "difference")
    polys = _polys(p, spec)
    bounds, entries = [], []
    for i, x in enumerate(polys):
        b = to_binomial(x)
        rho = [max((nu[j] for nu in b.coeffs), default=-1) for j in range(spec.n)]
        bounds.append(rho)
        for mu in _box(rho):
            entries.append((i, mu, from_binomial(delta_action_binomial(mu, b), spec)))
    return DerivativeFamily(spec, bounds, entries)


def _oracle_kernel(fam: DerivativeFamily, m: int) -> Submodule:
    spec = fam.spec
    C = commutative(spec.n, spec.field)
    vals = fam.values
    # Lower-degree entries go to the smaller tag components, so the constant
    # in the family lands in the least one and the syzygy basis stays small.
    perm = sorted(range(len(vals)), key=lambda k: (-vals[k].total_degree() if not vals[k].is_zero() else 1, k))
    vecs = [ModuleVector([_from_t_terms(C, _t_terms(vals[k]))], C) for k in perm]
    syz = left_syzygy(vecs, C)
    rows = []
    for g in syz.gens:
        ent = [None] * len(vals)
        for pos, k in enumerate(perm):
            ent[k] = OrePoly(spec, {m_ + (0,) * spec.s: c for m_, c in g[pos].terms.items()})
        rows.append(fam.lift(ModuleVector(ent, spec), m))
    return Submodule(spec, m, [r for r in rows if not r.is_zero()])


def weyl_oracle_kernel(p: Sequence[OrePoly], spec: AlgebraSpec) -> Submodule:
    """``ker(kappa_p)`` over the Weyl algebra from commutative syzygies of all
    partial derivatives."""
    polys = _polys(p, spec)
    if all(x.is_zero() for x in polys):
        raise ValueError("the oracle needs a nonzero signal")
    return _oracle_kernel(derivative_family(polys, spec), len(polys))


def difference_oracle_kernel(p: Sequence[OrePoly], spec: AlgebraSpec) -> Submodule:
    """``ker(kappa_p)`` over the difference algebra from commutative syzygies
    of all forward differences."""
    polys = _polys(p, spec)
    if all(x.is_zero() for x in polys):
        raise ValueError("the oracle needs a nonzero signal")
    return _oracle_kernel(shift_family(polys, spec), len(polys))
