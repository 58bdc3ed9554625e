"""Left Groebner bases of submodules of free modules over Ore algebras.

Module elements are row vectors; inside the engine they are flattened to
dicts ``{(component, monomial): coeff}`` with 0-based components.  The
module ordering is always position-over-term with ``e_1 > e_2 > ...``.
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

from .coeffs import FieldMismatchError
from .orecore import AlgebraSpec, OrePoly, _mono_mul

log = logging.getLogger(__name__)

__all__ = [
    "MonomialOrder",
    "ModuleOrder",
    "ModuleVector",
    "Submodule",
    "GroebnerDegreeError",
    "leading_term",
    "left_normal_form",
    "left_groebner",
    "module_equal",
    "DEFAULT_DEGREE_CAP",
]

DEFAULT_DEGREE_CAP = 40


class GroebnerDegreeError(RuntimeError):
    """Buchberger's algorithm produced an element beyond the degree cap."""


class MonomialOrder:
    """Degree ordering on the combined exponents of ``t`` and the operators.

    ``precedence`` lists variable indices from most to least significant.
    The default makes every operator greater than every ``t``, operators in
    their spec order (so for the mixed algebra the ``D``'s beat the ``d``'s).
    """

    def __init__(self, spec: AlgebraSpec, base: str = "degrevlex", precedence: Optional[Sequence[int]] = None):
        if base not in ("degrevlex", "deglex"):
            raise ValueError(f"unknown monomial order {base!r}")
        if precedence is None:
            precedence = tuple(range(spec.n, spec.nvars)) + tuple(range(spec.n))
        precedence = tuple(precedence)
        if sorted(precedence) != list(range(spec.nvars)):
            raise ValueError("precedence must be a permutation of the variables")
        self.spec = spec
        self.base = base
        self.precedence = precedence
        self._cache: dict = {}

    @classmethod
    def for_spec(cls, spec: AlgebraSpec, base: str = "degrevlex", opvars_first: bool = True) -> "MonomialOrder":
        ops = list(range(spec.n, spec.nvars))
        if not opvars_first:
            # mixed algebra: the continuous operators beat the discrete ones
            cont = [spec.n + i for i, k in enumerate(spec.kinds) if k == "weyl"]
            disc = [x for x in ops if x not in cont]
            ops = cont + disc
        return cls(spec, base, tuple(ops) + tuple(range(spec.n)))

    def key(self, mono: tuple):
        k = self._cache.get(mono)
        if k is None:
            e = [mono[i] for i in self.precedence]
            if self.base == "deglex":
                k = (sum(e), tuple(e))
            else:
                k = (sum(e), tuple(-x for x in reversed(e)))
            self._cache[mono] = k
        return k

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.spec == other.spec
            and self.base == other.base
            and self.precedence == other.precedence
        )

    def __hash__(self):
        return hash((self.spec, self.base, self.precedence))

    def __repr__(self):
        return f"MonomialOrder({self.base}, {self.precedence})"


class ModuleOrder:
    """Position over term: ``a e_i < b e_j`` iff ``j < i`` or (``i == j`` and ``a < b``)."""

    def __init__(self, mono_order: MonomialOrder):
        self.mono = mono_order
        self.spec = mono_order.spec

    @classmethod
    def default(cls, spec: AlgebraSpec, base: str = "degrevlex", opvars_first: bool = True) -> "ModuleOrder":
        return cls(MonomialOrder.for_spec(spec, base, opvars_first))

    def key(self, term_key: tuple):
        comp, mono = term_key
        return (-comp, self.mono.key(mono))

    def __eq__(self, other):
        return isinstance(other, ModuleOrder) and self.mono == other.mono

    def __hash__(self):
        return hash(self.mono)

    def __repr__(self):
        return f"POT({self.mono.base})"


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


class ModuleVector:
    """A row vector in ``O^{1 x l}``."""

    __slots__ = ("spec", "entries")

    def __init__(self, entries: Iterable[OrePoly], spec: Optional[AlgebraSpec] = None):
        entries = tuple(entries)
        if spec is None:
            if not entries:
                raise ValueError("spec required for an empty vector")
            spec = entries[0].spec
        for e in entries:
            if e.spec != spec:
                raise FieldMismatchError("vector entries belong to different algebras")
        self.spec = spec
        self.entries = entries

    @classmethod
    def zero(cls, spec: AlgebraSpec, rank: int) -> "ModuleVector":
        return cls([spec.zero()] * rank, spec)

    @classmethod
    def unit(cls, spec: AlgebraSpec, rank: int, i: int) -> "ModuleVector":
        ent = [spec.zero()] * rank
        ent[i] = spec.one()
        return cls(ent, spec)

    @classmethod
    def from_terms(cls, spec: AlgebraSpec, rank: int, terms: dict) -> "ModuleVector":
        parts: list = [dict() for _ in range(rank)]
        for (comp, mono), c in terms.items():
            parts[comp][mono] = c
        return cls([OrePoly(spec, p) for p in parts], spec)

    def to_terms(self) -> dict:
        out = {}
        for i, e in enumerate(self.entries):
            for m, c in e.terms.items():
                out[(i, m)] = c
        return out

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __bool__(self):
        return not self.is_zero()

    def _same(self, other: "ModuleVector"):
        if other.spec != self.spec or other.rank != self.rank:
            raise FieldMismatchError("vectors of different algebras or ranks")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._same(other)
        return ModuleVector([a + b for a, b in zip(self.entries, other.entries)], self.spec)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        self._same(other)
        return ModuleVector([a - b for a, b in zip(self.entries, other.entries)], self.spec)

    def __neg__(self):
        return ModuleVector([-a for a in self.entries], self.spec)

    def scale(self, c) -> "ModuleVector":
        return ModuleVector([a.scale(c) for a in self.entries], self.spec)

    def lmul(self, a: OrePoly) -> "ModuleVector":
        """Left multiplication ``a * v``."""
        return ModuleVector([a * e for e in self.entries], self.spec)

    def __rmul__(self, a):
        if isinstance(a, OrePoly):
            return self.lmul(a)
        return self.scale(a)

    def total_degree(self) -> int:
        return max((e.total_degree() for e in self.entries), default=-1)

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.spec == other.spec and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def to_strings(self, order: Optional[MonomialOrder] = None) -> list:
        return [e.to_string(order) for e in self.entries]

    def __str__(self):
        return "[" + ", ".join(self.to_strings()) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# low-level operations on flattened vectors
# ---------------------------------------------------------------------------


def _lead(vec: dict, ordr: ModuleOrder):
    return max(vec, key=ordr.key)


def _lmul_mono(spec: AlgebraSpec, u: tuple, c, vec: dict) -> dict:
    """``(c * u) * vec`` for a monomial ``u``."""
    out: dict = {}
    for (comp, m2), c2 in vec.items():
        cc = c * c2
        for m, w in _mono_mul(spec, u, m2):
            key = (comp, m)
            v = out.get(key)
            v = cc * w if v is None else v + cc * w
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def _axpy(vec: dict, c, other: dict) -> None:
    """In place ``vec += c * other``."""
    for k, v in other.items():
        w = vec.get(k)
        w = c * v if w is None else w + c * v
        if w:
            vec[k] = w
        else:
            del vec[k]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _vec_degree(vec: dict) -> int:
    return max((sum(m) for (_, m) in vec), default=-1)


class _Basis:
    """Working basis: vectors plus cached leading data."""

    def __init__(self, spec: AlgebraSpec, ordr: ModuleOrder):
        self.spec = spec
        self.ordr = ordr
        self.vecs: list = []
        self.leads: list = []  # (comp, mono)
        self.alive: list = []
        self.sugar: list = []

    def add(self, vec: dict, sugar: int = 0) -> int:
        lt = _lead(vec, self.ordr)
        lc = vec[lt]
        if lc != 1:
            inv = 1 / lc
            vec = {k: v * inv for k, v in vec.items()}
        self.vecs.append(vec)
        self.leads.append(lt)
        self.alive.append(True)
        self.sugar.append(max(sugar, _vec_degree(vec)))
        return len(self.vecs) - 1

    def find_reducer(self, lt) -> int:
        comp, mono = lt
        for i, (c2, m2) in enumerate(self.leads):
            if self.alive[i] and c2 == comp and _divides(m2, mono):
                return i
        return -1

    def reduce_step(self, vec: dict, lt, idx: int) -> None:
        """Cancel the term ``lt`` of ``vec`` using basis element ``idx``."""
        g = self.vecs[idx]
        u = _quotient(lt[1], self.leads[idx][1])
        if any(u):
            prod = _lmul_mono(self.spec, u, self.spec.field.one, g)
        else:
            prod = g
        _axpy(vec, -(vec[lt] / prod[lt]), prod)

    def top_reduce(self, vec: dict) -> dict:
        while vec:
            lt = _lead(vec, self.ordr)
            idx = self.find_reducer(lt)
            if idx < 0:
                return vec
            self.reduce_step(vec, lt, idx)
        return vec

    def full_reduce(self, vec: dict, skip: int = -1) -> dict:
        vec = dict(vec)
        rem: dict = {}
        while vec:
            lt = _lead(vec, self.ordr)
            idx = -1
            comp, mono = lt
            for i, (c2, m2) in enumerate(self.leads):
                if i != skip and self.alive[i] and c2 == comp and _divides(m2, mono):
                    idx = i
                    break
            if idx < 0:
                rem[lt] = vec.pop(lt)
            else:
                self.reduce_step(vec, lt, idx)
        return rem


def _spoly(spec: AlgebraSpec, basis: _Basis, i: int, j: int, lcm: tuple) -> dict:
    out: dict = {}
    one = spec.field.one
    for idx, sign in ((i, 1), (j, -1)):
        g = basis.vecs[idx]
        comp, m = basis.leads[idx]
        u = _quotient(lcm, m)
        prod = _lmul_mono(spec, u, one, g) if any(u) else g
        _axpy(out, sign / prod[(comp, lcm)], prod)
    return out


def _buchberger(spec: AlgebraSpec, gens: Sequence[dict], ordr: ModuleOrder, degree_cap: int, rank1: bool) -> _Basis:
    basis = _Basis(spec, ordr)
    pairs: dict = {}  # (i, j) -> ((sugar, order key), lcm)
    product_criterion = spec.is_commutative() and rank1

    def insert(vec: dict, sugar: int = 0):
        deg = _vec_degree(vec)
        if deg > degree_cap:
            raise GroebnerDegreeError(
                f"Groebner basis element of total degree {deg} exceeds the cap {degree_cap}"
            )
        k = basis.add(vec, sugar)
        comp, mk = basis.leads[k]
        for i in range(k):
            if not basis.alive[i]:
                continue
            ci, mi = basis.leads[i]
            if ci != comp:
                continue
            lcm = _lcm(mi, mk)
            if product_criterion and all(a == 0 or b == 0 for a, b in zip(mi, mk)):
                continue
            sug = max(basis.sugar[i] + sum(lcm) - sum(mi), basis.sugar[k] + sum(lcm) - sum(mk))
            pairs[(i, k)] = ((sug, ordr.key((comp, lcm))), lcm)

    for g in gens:
        g = basis.top_reduce(dict(g))
        if g:
            insert(g)

    while pairs:
        # sugar strategy: lowest sugar first, ties broken by the order
        (i, j), ((sug, _), lcm) = min(pairs.items(), key=lambda kv: (kv[1][0][0], kv[1][0][1], kv[0]))
        del pairs[(i, j)]
        comp = basis.leads[i][0]
        # chain criterion
        skip = False
        for k in range(len(basis.vecs)):
            if k in (i, j) or not basis.alive[k]:
                continue
            ck, mk = basis.leads[k]
            if ck != comp or not _divides(mk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _spoly(spec, basis, i, j, lcm)
        s = basis.top_reduce(s)
        if s:
            insert(s, sug)
    return basis


def _reduced(basis: _Basis) -> list:
    """Minimal, tail-reduced, monic basis sorted by descending leading term."""
    n = len(basis.vecs)
    for i in range(n):
        if not basis.alive[i]:
            continue
        ci, mi = basis.leads[i]
        for j in range(n):
            if i == j or not basis.alive[j]:
                continue
            cj, mj = basis.leads[j]
            if cj == ci and _divides(mj, mi) and (mj != mi or j < i):
                basis.alive[i] = False
                break
    for i in range(n):
        if basis.alive[i]:
            lt = basis.leads[i]
            head = basis.vecs[i][lt]
            rest = {k: v for k, v in basis.vecs[i].items() if k != lt}
            rest = basis.full_reduce(rest, skip=i)
            rest[lt] = head
            basis.vecs[i] = rest
    out = [(basis.leads[i], basis.vecs[i]) for i in range(n) if basis.alive[i]]
    out.sort(key=lambda x: basis.ordr.key(x[0]), reverse=True)
    return [v for _, v in out]


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------


class Submodule:
    """A finitely generated left submodule of ``O^{1 x rank}``."""

    def __init__(self, spec: AlgebraSpec, rank: int, gens: Iterable[ModuleVector] = ()):
        self.spec = spec
        self.rank = rank
        gl = []
        for g in gens:
            if not isinstance(g, ModuleVector):
                g = ModuleVector(g, spec)
            if g.spec != spec or g.rank != rank:
                raise FieldMismatchError("generator does not live in the ambient free module")
            gl.append(g)
        self.gens = tuple(gl)
        self._gb: dict = {}

    @classmethod
    def free(cls, spec: AlgebraSpec, rank: int) -> "Submodule":
        return cls(spec, rank, [ModuleVector.unit(spec, rank, i) for i in range(rank)])

    def nonzero_gens(self) -> list:
        return [g for g in self.gens if not g.is_zero()]

    def groebner_basis(self, order: Optional[ModuleOrder] = None, degree_cap: int = DEFAULT_DEGREE_CAP) -> list:
        order = order or ModuleOrder.default(self.spec)
        hit = self._gb.get(order)
        if hit is None:
            basis = _buchberger(
                self.spec, [g.to_terms() for g in self.nonzero_gens()], order, degree_cap, self.rank == 1
            )
            vecs = _reduced(basis)
            hit = [ModuleVector.from_terms(self.spec, self.rank, v) for v in vecs]
            self._gb[order] = hit
            self._gb[("terms", order)] = vecs
            log.debug("groebner basis of %d generators: %d elements", len(self.gens), len(vecs))
        return hit

    def _work_basis(self, order: ModuleOrder) -> _Basis:
        self.groebner_basis(order)
        basis = _Basis(self.spec, order)
        for v in self._gb[("terms", order)]:
            basis.add(v)
        return basis

    def normal_form(self, v: ModuleVector, order: Optional[ModuleOrder] = None) -> ModuleVector:
        order = order or ModuleOrder.default(self.spec)
        rem = self._work_basis(order).full_reduce(v.to_terms())
        return ModuleVector.from_terms(self.spec, self.rank, rem)

    def contains(self, v: ModuleVector, order: Optional[ModuleOrder] = None) -> bool:
        if v.is_zero():
            return True
        order = order or ModuleOrder.default(self.spec)
        basis = self._work_basis(order)
        return not basis.top_reduce(v.to_terms())

    def __contains__(self, v):
        return self.contains(v)

    def contains_module(self, other: "Submodule", order: Optional[ModuleOrder] = None) -> bool:
        order = order or ModuleOrder.default(self.spec)
        basis = self._work_basis(order)
        return all(not basis.top_reduce(g.to_terms()) for g in other.nonzero_gens())

    def is_zero(self) -> bool:
        return not self.nonzero_gens()

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens)
        return f"<{body}> in {self.spec!r}^{self.rank}"


def leading_term(v: ModuleVector, ordr: Optional[ModuleOrder] = None):
    """``(component, monomial, coeff)`` of the greatest term; components are 1-based."""
    if v.is_zero():
        raise ValueError("the zero vector has no leading term")
    ordr = ordr or ModuleOrder.default(v.spec)
    terms = v.to_terms()
    comp, mono = _lead(terms, ordr)
    return comp + 1, mono, terms[(comp, mono)]


def left_groebner(S: Submodule, ordr: Optional[ModuleOrder] = None, degree_cap: int = DEFAULT_DEGREE_CAP) -> Submodule:
    """A new submodule whose generators are the reduced left Groebner basis of ``S``."""
    ordr = ordr or ModuleOrder.default(S.spec)
    gb = S.groebner_basis(ordr, degree_cap)
    out = Submodule(S.spec, S.rank, gb)
    out._gb[ordr] = gb
    out._gb[("terms", ordr)] = S._gb[("terms", ordr)]
    return out


def left_normal_form(v: ModuleVector, G: Submodule, ordr: Optional[ModuleOrder] = None) -> ModuleVector:
    return G.normal_form(v, ordr)


def module_equal(S1: Submodule, S2: Submodule, ordr: Optional[ModuleOrder] = None) -> bool:
    """Equality of generated modules by mutual reduction to zero."""
    if S1.spec != S2.spec or S1.rank != S2.rank:
        raise FieldMismatchError("submodules of different free modules")
    return S2.contains_module(S1, ordr) and S1.contains_module(S2, ordr)
