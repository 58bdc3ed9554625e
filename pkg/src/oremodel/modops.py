"""Syzygies, component elimination, kernels, annihilators and intersections.

Everything reduces to one Groebner basis computation of a tagged module
under a position-over-term ordering: rows ``(f_i | e_i)`` are stacked with
the original components ranked above the tag components, and the basis
elements whose original part vanished are the syzygies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coeffs import FieldMismatchError
from .gb import DEFAULT_DEGREE_CAP, ModuleOrder, ModuleVector, MonomialOrder, Submodule
from .orecore import AlgebraSpec

__all__ = [
    "Homomorphism",
    "left_syzygy",
    "eliminate_components",
    "kernel_of_hom",
    "annihilator",
    "intersect",
]


def _module_order(spec: AlgebraSpec, order) -> ModuleOrder:
    if order is None:
        return ModuleOrder.default(spec)
    if isinstance(order, MonomialOrder):
        return ModuleOrder(order)
    return order


def eliminate_components(S: Submodule, k: int, order=None) -> Submodule:
    """Generators of ``S`` intersected with ``e_k, ..., e_l`` (``k`` is 1-based).

    The result keeps the ambient rank; the eliminated entries are zero.
    """
    if not 1 <= k <= S.rank:
        raise ValueError(f"component index {k} out of range 1..{S.rank}")
    ordr = _module_order(S.spec, order)
    gb = S.groebner_basis(ordr)
    keep = [g for g in gb if all(g[i].is_zero() for i in range(k - 1))]
    return Submodule(S.spec, S.rank, keep)


def left_syzygy(F: Sequence[ModuleVector], spec: Optional[AlgebraSpec] = None, order=None) -> Submodule:
    """``{a : sum a_i f_i = 0}`` as a submodule of ``O^{1 x len(F)}``."""
    F = list(F)
    if spec is None:
        if not F:
            raise ValueError("spec required for an empty family")
        spec = F[0].spec
    s = len(F)
    if s == 0:
        return Submodule(spec, 0, [])
    n = F[0].rank
    for f in F:
        if f.spec != spec or f.rank != n:
            raise FieldMismatchError("syzygy family must live in one free module")
    zero = spec.zero()
    rows = []
    for i, f in enumerate(F):
        tag = [zero] * s
        tag[i] = spec.one()
        rows.append(ModuleVector(list(f.entries) + tag, spec))
    big = Submodule(spec, n + s, rows)
    elim = eliminate_components(big, n + 1, order)
    gens = [ModuleVector(g.entries[n:], spec) for g in elim.gens]
    return Submodule(spec, s, gens)


@dataclass
class Homomorphism:
    """``O^{1 x s} -> O^{1 x n} / O^{1 x m} P`` sending ``e_i`` to ``[images[i]]``.

    ``source_relations`` optionally presents the source as a quotient
    ``O^{1 x s} / O^{1 x r} Q``.
    """

    spec: AlgebraSpec
    images: Sequence[ModuleVector]
    relations: Sequence[ModuleVector] = ()
    target_rank: Optional[int] = None
    source_relations: Sequence[ModuleVector] = ()

    def __post_init__(self):
        if self.target_rank is None:
            src = list(self.images) + list(self.relations)
            if not src:
                raise ValueError("target rank cannot be inferred")
            self.target_rank = src[0].rank

    @property
    def source_rank(self) -> int:
        return len(self.images)


def kernel_of_hom(h: Homomorphism, order=None) -> Submodule:
    """Generators of ``ker h`` in ``O^{1 x s}``.

    With ``source_relations`` present the result is the kernel of the
    induced map on the quotient: a basis of ``ker + O Q`` reduced modulo
    ``O Q`` (nonzero remainders only).
    """
    spec, s = h.spec, h.source_rank
    fam = list(h.images) + list(h.relations)
    if not fam:
        return Submodule(spec, 0, [])
    syz = left_syzygy(fam, spec, order)
    gens = [ModuleVector(g.entries[:s], spec) for g in syz.gens]
    ker = Submodule(spec, s, [g for g in gens if not g.is_zero()])
    if not h.source_relations:
        return ker
    ordr = _module_order(spec, order)
    Q = Submodule(spec, s, h.source_relations)
    total = Submodule(spec, s, list(ker.gens) + list(Q.gens))
    out = []
    for g in total.groebner_basis(ordr):
        r = Q.normal_form(g, ordr)
        if not r.is_zero():
            out.append(r)
    return Submodule(spec, s, out)


def annihilator(v: ModuleVector, P: Sequence[ModuleVector] = (), order=None) -> Submodule:
    """The left ideal ``{a : a [v] = 0}`` in ``O^{1 x n} / O^{1 x m} P``."""
    spec = v.spec
    if v.is_zero():
        return Submodule(spec, 1, [ModuleVector([spec.one()], spec)])
    return kernel_of_hom(Homomorphism(spec, [v], list(P), v.rank), order)


def intersect(modules: Sequence[Submodule], order=None) -> Submodule:
    """Intersection of submodules of a common free module ``O^{1 x r}``.

    One kernel computation of ``e_j -> ([e_j], ..., [e_j])`` into the
    direct sum of the quotients.
    """
    modules = list(modules)
    if not modules:
        raise ValueError("need at least one module")
    spec, r = modules[0].spec, modules[0].rank
    for N in modules:
        if N.spec != spec or N.rank != r:
            raise FieldMismatchError("modules live in different free modules")
    if len(modules) == 1:
        return Submodule(spec, r, modules[0].nonzero_gens())
    m = len(modules)
    zero = spec.zero()
    images = []
    for j in range(r):
        ent = [zero] * (r * m)
        for b in range(m):
            ent[b * r + j] = spec.one()
        images.append(ModuleVector(ent, spec))
    relations = []
    for b, N in enumerate(modules):
        for g in N.nonzero_gens():
            ent = [zero] * (r * m)
            ent[b * r:(b + 1) * r] = g.entries
            relations.append(ModuleVector(ent, spec))
    return kernel_of_hom(Homomorphism(spec, images, relations, r * m), order)
