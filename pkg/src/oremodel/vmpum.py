"""Kernel representations of the variant most powerful unfalsified model.

For a polynomial signal vector ``p`` the model is cut out by
``ker(kappa_p) = {o : o . p = 0}``, computed as the kernel of
``e_i -> [p_i]`` into ``O / O<d_1, ..., d_s>``.  Several signals are handled
by intersecting their kernels; polynomial-exponential signals are grouped by
frequency, each group's kernel is twisted (``d -> d - lam`` for derivatives,
``D -> (D - lam + 1)/lam`` for differences) and the groups are summed
directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coeffs import FieldMismatchError
from .gb import ModuleOrder, ModuleVector, MonomialOrder, Submodule
from .modops import Homomorphism, intersect, kernel_of_hom, left_syzygy
from .orecore import (
    AlgebraSpec,
    OrePoly,
    PolySignal,
    SignalDomainError,
    check_signal,
    rebase,
    rebased_spec,
    substitute_operators,
)

log = logging.getLogger(__name__)

__all__ = [
    "Signal",
    "SignalSet",
    "KernelRepresentation",
    "kernel_kappa",
    "sigma_lambda",
    "chi_lambda",
    "sigma_lambda_inverse",
    "chi_lambda_inverse",
    "vmpum_of",
    "minimize_generators",
]


class Signal(tuple):
    """An ``m``-vector of :class:`PolySignal` entries."""

    def __new__(cls, entries):
        entries = [e if isinstance(e, PolySignal) else PolySignal(e) for e in entries]
        if not entries:
            raise ValueError("a signal needs at least one component")
        spec = entries[0].spec
        for e in entries:
            if e.spec != spec:
                raise FieldMismatchError("signal components belong to different algebras")
        return super().__new__(cls, entries)

    @property
    def spec(self) -> AlgebraSpec:
        return self[0].spec

    @property
    def m(self) -> int:
        return len(self)

    def is_polynomial(self) -> bool:
        return all(e.lam is None for e in self)


class SignalSet(tuple):
    """A nonempty list of signals sharing one dimension and one algebra."""

    def __new__(cls, signals):
        signals = [s if isinstance(s, Signal) else Signal(s) for s in signals]
        if not signals:
            raise ValueError("empty signal set")
        spec, m = signals[0].spec, signals[0].m
        for s in signals:
            if s.spec != spec:
                raise FieldMismatchError("signals belong to different algebras")
            if s.m != m:
                raise ValueError("signals have different dimensions")
            for e in s:
                check_signal(spec, e)
        return super().__new__(cls, signals)

    @property
    def spec(self) -> AlgebraSpec:
        return self[0].spec

    @property
    def m(self) -> int:
        return self[0].m


@dataclass
class KernelRepresentation:
    """Rows ``R`` with ``R . w = 0`` describing the model."""

    spec: AlgebraSpec
    rows: list
    order: ModuleOrder
    m: int
    notes: list = field(default_factory=list)

    def module(self) -> Submodule:
        return Submodule(self.spec, self.m, self.rows)

    def __len__(self):
        return len(self.rows)

    def to_strings(self) -> list:
        return [r.to_strings(self.order.mono) for r in self.rows]


def _order(spec: AlgebraSpec, order) -> ModuleOrder:
    if order is None:
        return ModuleOrder.default(spec)
    if isinstance(order, str):
        return ModuleOrder.default(spec, order)
    if isinstance(order, MonomialOrder):
        return ModuleOrder(order)
    return order


def _as_polys(p, spec: Optional[AlgebraSpec]) -> list:
    out = []
    for x in p:
        if isinstance(x, PolySignal):
            if x.lam is not None:
                raise ValueError("kernel_kappa expects pure polynomials")
            x = x.poly
        out.append(x)
    if spec is not None:
        for x in out:
            if x.spec != spec:
                raise FieldMismatchError("polynomial belongs to a different algebra")
    for x in out:
        if not x.is_polynomial():
            raise ValueError("signal entries must be polynomials in t")
    return out


def kernel_kappa(p: Sequence, spec: Optional[AlgebraSpec] = None, order=None) -> Submodule:
    """``{o in O^{1 x m} : sum o_i . p_i = 0}`` for polynomials ``p_i``."""
    polys = _as_polys(p, spec)
    spec = spec or polys[0].spec
    if "shift" in spec.kinds:
        # shifts act with trivial kernel; compute over the difference
        # presentation and rewrite s = D + 1 back
        target = spec
        idx = [i for i, k in enumerate(spec.kinds) if k == "shift"]
        for i in idx:
            target = rebased_spec(target, i, 1)
        moved = [_retag(x, target) for x in polys]
        ker = kernel_kappa(moved, target, None)
        back = []
        for g in ker.gens:
            ent = []
            for e in g.entries:
                for i in idx:
                    e = rebase(e.spec, e, i, -1)
                ent.append(e)
            back.append(ModuleVector(ent, spec))
        return Submodule(spec, len(polys), back)
    images = [ModuleVector([x], spec) for x in polys]
    rels = [ModuleVector([spec.op(i)], spec) for i in range(spec.s)]
    return kernel_of_hom(Homomorphism(spec, images, rels, 1), _order(spec, order))


def _retag(x: OrePoly, spec: AlgebraSpec) -> OrePoly:
    return OrePoly(spec, dict(x.terms))


def _check_kind(spec: AlgebraSpec, kind: str, what: str):
    if not spec.kinds or any(k != kind for k in spec.kinds):
        raise ValueError(f"{what} needs a pure {kind} algebra, got {spec!r}")


def sigma_lambda(a: OrePoly, lam: Sequence) -> OrePoly:
    """Weyl twist ``d_i -> d_i - lam_i``; turns annihilators of ``p`` into
    annihilators of ``p exp(lam . t)``."""
    spec = a.spec
    _check_kind(spec, "weyl", "sigma_lambda")
    lam = [spec.field(x) for x in lam]
    return substitute_operators(a, {i: (1, -lam[spec.acts_on[i]]) for i in range(spec.s)})


def sigma_lambda_inverse(a: OrePoly, lam: Sequence) -> OrePoly:
    return sigma_lambda(a, [-a.spec.field(x) for x in lam])


def chi_lambda(a: OrePoly, lam: Sequence) -> OrePoly:
    """Difference twist ``D_i -> (D_i - lam_i + 1) / lam_i``; turns annihilators
    of ``p`` into annihilators of ``p lam^t``."""
    spec = a.spec
    _check_kind(spec, "difference", "chi_lambda")
    lam = [spec.field(x) for x in lam]
    if any(x == 0 for x in lam):
        raise SignalDomainError("chi_lambda is undefined for a zero frequency component")
    subs = {}
    for i in range(spec.s):
        lv = lam[spec.acts_on[i]]
        subs[i] = (1 / lv, (1 - lv) / lv)
    return substitute_operators(a, subs)


def chi_lambda_inverse(a: OrePoly, lam: Sequence) -> OrePoly:
    """Inverse twist ``D_i -> lam_i D_i + lam_i - 1``."""
    spec = a.spec
    _check_kind(spec, "difference", "chi_lambda_inverse")
    lam = [spec.field(x) for x in lam]
    if any(x == 0 for x in lam):
        raise SignalDomainError("chi_lambda is undefined for a zero frequency component")
    return substitute_operators(a, {i: (lam[spec.acts_on[i]], lam[spec.acts_on[i]] - 1) for i in range(spec.s)})


def _twist(spec: AlgebraSpec, a: OrePoly, lam: tuple) -> OrePoly:
    if all(x == 0 for x in lam):
        return a
    if all(k == "weyl" for k in spec.kinds):
        return sigma_lambda(a, lam)
    if all(k == "difference" for k in spec.kinds):
        return chi_lambda(a, lam)
    if all(k == "shift" for k in spec.kinds):
        # s -> s / lam on p lam^t
        return substitute_operators(a, {i: (1 / lam[spec.acts_on[i]], 0) for i in range(spec.s)})
    raise SignalDomainError(f"exponential signals are not supported over {spec!r}")


def _signal_kernel(sig: Signal, ordr: ModuleOrder) -> Submodule:
    spec, m = sig.spec, sig.m
    if sig.is_polynomial():
        return kernel_kappa([e.poly for e in sig], spec, ordr)
    discrete = any(k in ("shift", "difference") for k in spec.kinds)
    if discrete and any(e.lam is None for e in sig):
        raise SignalDomainError("discrete algebras need a nonzero frequency on every component")
    groups: dict = {}
    for j, e in enumerate(sig):
        groups.setdefault(e.frequency(), []).append(j)
    zero = spec.zero()
    rows = []
    for lam, idx in groups.items():
        block = kernel_kappa([sig[j].poly for j in idx], spec, ordr)
        for g in block.groebner_basis(ordr):
            ent = [zero] * m
            for pos, j in enumerate(idx):
                ent[j] = _twist(spec, g[pos], lam)
            rows.append(ModuleVector(ent, spec))
    return Submodule(spec, m, rows)


def vmpum_of(signals, order=None, minimize: bool = False) -> KernelRepresentation:
    """Kernel representation of the model of a signal set.

    The rows are the reduced Groebner basis of the intersection of the
    per-signal kernels under ``order`` (default degrevlex, POT), optionally
    thinned by :func:`minimize_generators`.
    """
    if not isinstance(signals, SignalSet):
        signals = SignalSet(signals)
    spec, m = signals.spec, signals.m
    ordr = _order(spec, order)
    kernels = [_signal_kernel(s, ordr) for s in signals]
    notes = []
    if len(kernels) == 1:
        mod = kernels[0]
        notes.append("kernel of kappa_p")
    else:
        mod = intersect(kernels, ordr)
        notes.append(f"intersection of {len(kernels)} signal kernels")
    if any(not s.is_polynomial() for s in signals):
        notes.append("frequency blocks twisted and summed directly")
    rows = mod.groebner_basis(ordr)
    rep = KernelRepresentation(spec, list(rows), ordr, m, notes)
    if minimize:
        rep = minimize_generators(rep)
    return rep


def minimize_generators(R: KernelRepresentation, method: str = "greedy") -> KernelRepresentation:
    """Drop rows that the remaining rows already generate.

    ``greedy`` tests each row (in input order) for membership in the module
    of the others; ``syzygy`` repeatedly removes a row that carries a
    nonzero constant in some syzygy of the current rows.
    """
    spec, m = R.spec, R.m
    rows = []
    for r in R.rows:
        if r.is_zero() or r in rows:
            continue
        rows.append(r)
    if method == "greedy":
        i = 0
        while i < len(rows):
            others = rows[:i] + rows[i + 1:]
            if others and Submodule(spec, m, others).contains(rows[i], R.order):
                rows = others
            else:
                i += 1
    elif method == "syzygy":
        while len(rows) > 1:
            syz = left_syzygy(rows, spec, R.order)
            drop = None
            for g in syz.gens:
                for i, e in enumerate(g.entries):
                    if e.is_constant() and not e.is_zero():
                        drop = i
                        break
                if drop is not None:
                    break
            if drop is None:
                break
            rows = rows[:drop] + rows[drop + 1:]
    else:
        raise ValueError(f"unknown minimization method {method!r}")
    notes = list(R.notes) + [f"minimized ({method}) from {len(R.rows)} rows"]
    return KernelRepresentation(spec, rows, R.order, m, notes)
