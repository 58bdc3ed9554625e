"""Shared builders for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

from oremodel.gb import ModuleVector, Submodule
from oremodel.orecore import OrePoly
from oremodel.problem import parse_operator

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
GOLDEN = Path(__file__).resolve().parent / "golden"


def rows(spec, matrix):
    """Parse a list of rows of operator strings into module vectors."""
    return [ModuleVector([parse_operator(e, spec) for e in r], spec) for r in matrix]


def module(spec, matrix):
    return Submodule(spec, len(matrix[0]), rows(spec, matrix))


def random_poly(spec, rng: random.Random, deg: int, density: float = 0.6, lo: int = -3, hi: int = 3) -> OrePoly:
    """Random polynomial in t of total degree at most ``deg``; never zero."""
    n, pad = spec.n, (0,) * spec.s
    monos = [a for a in _exps(n, deg)]
    while True:
        terms = {}
        for a in monos:
            if rng.random() < density:
                c = rng.randint(lo, hi)
                if c:
                    terms[a + pad] = spec.field(c)
        if terms:
            return OrePoly(spec, terms)


def random_operator(spec, rng: random.Random, tdeg: int = 2, odeg: int = 2, nterms: int = 3) -> OrePoly:
    n, s = spec.n, spec.s
    terms = {}
    for _ in range(nterms):
        m = tuple(rng.randint(0, tdeg) for _ in range(n)) + tuple(rng.randint(0, odeg) for _ in range(s))
        c = rng.randint(-3, 3)
        if c:
            terms[m] = spec.field(c)
    return OrePoly(spec, terms)


def _exps(n, deg):
    if n == 0:
        yield ()
        return
    for k in range(deg + 1):
        for rest in _exps(n - 1, deg - k):
            yield (k,) + rest
