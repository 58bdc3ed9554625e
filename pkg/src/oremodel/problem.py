"""Problem files and operator expressions.

A problem file is line oriented::

    # the cuspidal cubic
    algebra weyl
    nvars 2
    order degrevlex
    minimize true
    signal [t1^3 - t2^2]

``signal`` may repeat; each gives one vector ``[e_1, ..., e_m]`` whose
entries are polynomials in ``t1..tn``, optionally times ``exp(c1*t1 + ...)``.
For discrete algebras ``exp(c.t)`` denotes ``c^t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coeffs import RatFunc
from .orecore import AlgebraSpec, OrePoly, PolySignal, SignalDomainError, difference, qdiff, shift, sw, weyl
from .vmpum import Signal, SignalSet

__all__ = ["ProblemError", "ProblemFile", "parse_problem", "parse_expression", "parse_operator", "make_spec", "ALGEBRAS"]

ALGEBRAS = {"weyl": weyl, "shift": shift, "difference": difference, "sw": sw, "qdiff": qdiff}
_BOOL = {"true": True, "yes": True, "on": True, "1": True, "false": False, "no": False, "off": False, "0": False}


class ProblemError(ValueError):
    """Malformed input, annotated with a 1-based line and column when known."""

    def __init__(self, msg: str, line: Optional[int] = None, col: Optional[int] = None):
        self.msg = msg
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)


def make_spec(algebra: str, n: int) -> AlgebraSpec:
    try:
        maker = ALGEBRAS[algebra]
    except KeyError:
        raise ProblemError(f"unknown algebra {algebra!r} (expected one of {', '.join(ALGEBRAS)})") from None
    if n < 1:
        raise ProblemError("nvars must be at least 1")
    return maker(n)


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_]\w*)|(?P<op>[-+*/^(),\[\]]))")


def _tokenize(text: str, base_col: int, line: Optional[int]):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + base_col
            raise ProblemError(f"unexpected character {text[pos:].lstrip()[0]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start + base_col))
        pos = m.end()
    toks.append(("end", "", len(text) + base_col))
    return toks


class _Value:
    """Sum of ``poly * exp_lam`` pieces keyed by frequency (``None`` = none)."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @staticmethod
    def of(p: OrePoly) -> "_Value":
        return _Value({None: p})

    def add(self, other: "_Value", sign: int = 1) -> "_Value":
        out = dict(self.parts)
        for k, v in other.parts.items():
            v = v if sign > 0 else -v
            out[k] = out[k] + v if k in out else v
        return _Value(out)

    def mul(self, other: "_Value", discrete: bool = False) -> "_Value":
        out: dict = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                if k1 is None:
                    k = k2
                elif k2 is None:
                    k = k1
                elif discrete:
                    k = tuple(a * b for a, b in zip(k1, k2))
                else:
                    k = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                out[k] = out[k] + prod if k in out else prod
        return _Value(out)

    def constant(self):
        """The field element this value equals, or ``None``."""
        if not self.parts:
            return 0
        if set(self.parts) != {None}:
            return None
        p = self.parts[None]
        if not p.is_constant():
            return None
        return next(iter(p.terms.values()))


class _Parser:
    def __init__(self, text, spec: AlgebraSpec, allow_ops: bool, line: Optional[int], base_col: int):
        self.toks = _tokenize(text, base_col, line)
        self.i = 0
        self.spec = spec
        self.allow_ops = allow_ops
        self.line = line
        self.discrete = any(k in ("shift", "difference") for k in spec.kinds)
        names = spec.var_names()
        self.vars = {name: k for k, name in enumerate(names)}
        if spec.n == 1:
            self.vars.setdefault("t", 0)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ProblemError(msg, self.line, tok[2] + 1)

    def expect(self, val):
        tok = self.next()
        if tok[1] != val:
            raise self.error(f"expected {val!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self) -> _Value:
        v = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self) -> _Value:
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.next()[1] == "+" else -1
            v = v.add(self.term(), sign)
        return v

    def term(self) -> _Value:
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.next()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op[1] == "*":
                v = v.mul(rhs, self.discrete)
            else:
                c = rhs.constant()
                if c is None:
                    raise self.error("can only divide by a nonzero constant", rhs_tok)
                if not c:
                    raise self.error("division by zero", rhs_tok)
                v = v.mul(_Value.of(self.spec.const(1 / c)))
        return v

    def unary(self) -> _Value:
        if self.peek()[1] == "-":
            self.next()
            return _Value.of(self.spec.const(-1)).mul(self.unary())
        if self.peek()[1] == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> _Value:
        base = self.atom()
        if self.peek()[1] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "num":
                raise self.error("exponent must be a nonnegative integer", tok)
            out = _Value.of(self.spec.one())
            for _ in range(int(tok[1])):
                out = out.mul(base, self.discrete)
            return out
        return base

    def atom(self) -> _Value:
        tok = self.next()
        kind, val = tok[0], tok[1]
        spec = self.spec
        if kind == "num":
            return _Value.of(spec.const(int(val)))
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "id":
            if val == "exp":
                self.expect("(")
                arg_tok = self.peek()
                arg = self.expr()
                self.expect(")")
                return _Value({self._frequency(arg, arg_tok): spec.one()})
            if val == "q":
                if "qdiff" not in spec.kinds:
                    raise self.error("the parameter q is only allowed for the qdiff algebra", tok)
                return _Value.of(spec.const(RatFunc.q()))
            k = self.vars.get(val)
            if k is None:
                raise self.error(f"unknown variable {val!r}", tok)
            if k >= spec.n and not self.allow_ops:
                raise self.error(f"operator {val!r} is not allowed in a signal", tok)
            return _Value.of(spec.t(k) if k < spec.n else spec.op(k - spec.n))
        raise self.error(f"unexpected {val or 'end of input'!r}", tok)

    def _frequency(self, arg: _Value, tok) -> tuple:
        if set(arg.parts) - {None}:
            raise self.error("nested exponentials are not supported", tok)
        p = arg.parts.get(None, self.spec.zero())
        n = self.spec.n
        lam = [self.spec.field.zero] * n
        for m, c in p.terms.items():
            if any(m[n:]) or sum(m) != 1:
                raise self.error("exp() needs a linear form c1*t1 + ... + cn*tn", tok)
            lam[m.index(1)] = c
        return tuple(lam)


def parse_expression(text: str, spec: AlgebraSpec, line: Optional[int] = None, col: int = 0) -> PolySignal:
    """Parse one signal entry: a polynomial, optionally times ``exp(...)``."""
    val = _Parser(text, spec, False, line, col).parse()
    if not val.parts:
        return PolySignal(spec.zero())
    if len(val.parts) > 1:
        raise ProblemError("one signal component mixes several exponentials", line, col + 1)
    lam, poly = next(iter(val.parts.items()))
    return PolySignal(poly, lam)


def parse_operator(text: str, spec: AlgebraSpec) -> OrePoly:
    """Parse an operator such as ``2*t1*d1 + 3*t2*d2 - 6``."""
    val = _Parser(text, spec, True, None, 0).parse()
    if set(val.parts) - {None}:
        raise ProblemError("operators cannot contain exponentials")
    return val.parts.get(None, spec.zero())


# ---------------------------------------------------------------------------
# problem files
# ---------------------------------------------------------------------------


@dataclass
class ProblemFile:
    algebra: str
    nvars: int
    signals: SignalSet
    options: dict = field(default_factory=dict)

    @property
    def spec(self) -> AlgebraSpec:
        return self.signals.spec


def _split_vector(body: str, line: int, col0: int):
    """Split ``[a, b, c]`` at top-level commas; returns ``(text, column)`` pairs."""
    s = body.strip()
    lead = len(body) - len(body.lstrip())
    col = col0 + lead
    if s.startswith("["):
        if not s.endswith("]"):
            raise ProblemError("unterminated signal vector", line, col + len(s))
        s = s[1:-1]
        col += 1
    out, depth, start = [], 0, 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((s[start:k], col + start))
            start = k + 1
    out.append((s[start:], col + start))
    return out


def parse_problem(text: str) -> ProblemFile:
    algebra = None
    nvars = None
    options: dict = {}
    raw_signals = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        key, _, rest = stripped.partition(" ")
        rest_col = indent + len(key) + 1
        key = key.lower()
        value = rest.strip()
        if key == "algebra":
            algebra = value.lower()
            if algebra not in ALGEBRAS:
                raise ProblemError(f"unknown algebra {value!r}", lineno, rest_col + 1)
        elif key == "nvars":
            try:
                nvars = int(value)
            except ValueError:
                raise ProblemError(f"nvars must be an integer, got {value!r}", lineno, rest_col + 1) from None
            if nvars < 1:
                raise ProblemError("nvars must be at least 1", lineno, rest_col + 1)
        elif key == "signal":
            raw_signals.append((lineno, rest, rest_col))
        elif key == "order":
            if value not in ("deglex", "degrevlex"):
                raise ProblemError(f"unknown order {value!r}", lineno, rest_col + 1)
            options["order"] = value
        elif key in ("minimize", "verify", "oracle"):
            if value.lower() not in _BOOL:
                raise ProblemError(f"{key} expects true or false", lineno, rest_col + 1)
            options[key] = _BOOL[value.lower()]
        else:
            raise ProblemError(f"unknown directive {key!r}", lineno, indent + 1)
    if algebra is None:
        raise ProblemError("missing 'algebra' line")
    if nvars is None:
        raise ProblemError("missing 'nvars' line")
    if not raw_signals:
        raise ProblemError("no signals given")
    spec = make_spec(algebra, nvars)
    signals = []
    for lineno, body, col in raw_signals:
        entries = []
        for part, pcol in _split_vector(body, lineno, col):
            if not part.strip():
                raise ProblemError("empty signal component", lineno, pcol + 1)
            entries.append(parse_expression(part, spec, lineno, pcol))
        signals.append((lineno, entries))
    m = len(signals[0][1])
    for lineno, entries in signals:
        if len(entries) != m:
            raise ProblemError(f"signal has {len(entries)} components, expected {m}", lineno)
    try:
        sset = SignalSet([Signal(e) for _, e in signals])
    except SignalDomainError as exc:
        raise ProblemError(str(exc)) from exc
    return ProblemFile(algebra, nvars, sset, options)
