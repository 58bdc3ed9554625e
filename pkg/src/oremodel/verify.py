"""Apply a kernel representation to signals and report exact residuals."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .gb import ModuleVector
from .orecore import OrePoly, PolySignal, act
from .vmpum import KernelRepresentation, Signal, SignalSet

__all__ = [
    "row_residual",
    "AnnihilationReport",
    "check_annihilation",
    "ProbeReport",
    "falsifiability_probe",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 20240601


def row_residual(row: ModuleVector, signal: Signal) -> PolySignal:
    """``sum_i row_i . signal_i``; every component must share one frequency."""
    if row.rank != signal.m:
        raise ValueError(f"row of length {row.rank} applied to a signal of dimension {signal.m}")
    spec = row.spec
    groups: dict = {}
    for a, p in zip(row.entries, signal):
        r = act(spec, a, p)
        key = r.frequency()
        groups[key] = r if key not in groups else groups[key] + r
    # exponentials of distinct frequencies are independent: the residual
    # vanishes iff every frequency group does; report the first nonzero one
    for r in groups.values():
        if not r.is_zero():
            return r
    return next(iter(groups.values()))


@dataclass
class AnnihilationReport:
    residuals: list  # (row index, signal index, PolySignal)
    passed: bool

    def failures(self) -> list:
        return [(i, j, r) for i, j, r in self.residuals if not r.is_zero()]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failures": [{"row": i, "signal": j, "residual": str(r.poly)} for i, j, r in self.failures()],
        }


def check_annihilation(R: KernelRepresentation, signals) -> AnnihilationReport:
    if not isinstance(signals, SignalSet):
        signals = SignalSet(signals)
    if R.m != signals.m:
        raise ValueError(f"kernel has {R.m} columns but signals have dimension {signals.m}")
    res = []
    for i, row in enumerate(R.rows):
        for j, sig in enumerate(signals):
            res.append((i, j, row_residual(row, sig)))
    return AnnihilationReport(res, all(r.is_zero() for _, _, r in res))


@dataclass
class ProbeReport:
    seed: int
    trials: list = field(default_factory=list)  # (candidate, falsified)
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": len(self.trials),
            "falsified": sum(1 for _, f in self.trials if f),
            "passed": self.passed,
        }


def _proportional(a: OrePoly, b: OrePoly) -> bool:
    if set(a.terms) != set(b.terms):
        return False
    m = next(iter(a.terms))
    r = b.terms[m] / a.terms[m]
    return all(b.terms[k] == r * v for k, v in a.terms.items())


def falsifiability_probe(
    R: KernelRepresentation,
    p: PolySignal,
    trials: int = 20,
    degree_bound: Optional[int] = None,
    seed: int = DEFAULT_SEED,
) -> ProbeReport:
    """Check that random polynomials not proportional to ``p`` violate ``R``.

    Candidates have coefficients in ``{-3, ..., 3}`` on all monomials of total
    degree at most ``degree_bound`` (default: the degree of ``p``).
    """
    if isinstance(p, OrePoly):
        p = PolySignal(p)
    if p.lam is not None or p.is_zero():
        raise ValueError("the probe needs a nonzero pure polynomial signal")
    if R.m != 1:
        raise ValueError("the probe handles scalar signals only")
    spec = p.spec
    n = spec.n
    deg = max(p.poly.total_degree(), 1) if degree_bound is None else degree_bound
    monos = [a for a in itertools.product(range(deg + 1), repeat=n) if sum(a) <= deg]
    if len(monos) < 2:
        raise ValueError("degree bound leaves no candidate that is not proportional to p")
    rng = random.Random(seed)
    pad = (0,) * spec.s
    report = ProbeReport(seed)
    attempts = 0
    while len(report.trials) < trials:
        attempts += 1
        if attempts > 1000 * trials:
            raise RuntimeError("could not draw enough non-proportional candidates")
        terms = {a + pad: spec.field(c) for a in monos if (c := rng.randint(-3, 3))}
        cand = OrePoly(spec, terms)
        if cand.is_zero() or _proportional(p.poly, cand):
            continue
        sig = Signal([PolySignal(cand)])
        falsified = any(not row_residual(r, sig).is_zero() for r in R.rows)
        report.trials.append((cand, falsified))
    report.passed = all(f for _, f in report.trials)
    return report
