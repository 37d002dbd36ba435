"""Closed-form time signals for voltage and current sources.

A waveform is an expression in the single symbol ``t`` built from real
constants and the operations ``+``, ``-``, ``*``, ``sin``, ``cos``.  The
grammar is deliberately tiny: it is closed under differentiation, which the
index-reduction step relies on (reducing the circuit equations to an explicit
ODE brings in the first and second time derivatives of the sources).

Waveforms are immutable.  Evaluate one by calling it; take exact time
derivatives with :meth:`Waveform.derivative`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


class WaveformError(ValueError):
    """Raised for text that does not belong to the waveform grammar."""


# --- expression nodes -------------------------------------------------------

@dataclass(frozen=True)
class _Node:
    def eval(self, t):
        raise NotImplementedError

    def diff(self) -> "_Node":
        raise NotImplementedError

    # prec: 1 = additive, 2 = multiplicative, 3 = atom
    def render(self) -> tuple[str, int]:
        raise NotImplementedError


@dataclass(frozen=True)
class _Const(_Node):
    value: float

    def eval(self, t):
        return self.value if np.isscalar(t) else np.full_like(np.asarray(t, dtype=float), self.value)

    def diff(self):
        return _Const(0.0)

    def render(self):
        v = self.value
        if v < 0:
            return f"-{_fmt(-v)}", 2  # binds like a product, e.g. -2*t
        return _fmt(v), 3


@dataclass(frozen=True)
class _Time(_Node):
    def eval(self, t):
        return t

    def diff(self):
        return _Const(1.0)

    def render(self):
        return "t", 3


@dataclass(frozen=True)
class _Add(_Node):
    a: _Node
    b: _Node

    def eval(self, t):
        return self.a.eval(t) + self.b.eval(t)

    def diff(self):
        return _add(self.a.diff(), self.b.diff())

    def render(self):
        sa, _ = self.a.render()
        sb, pb = self.b.render()
        if sb.startswith("-"):
            return f"{sa}+({sb})", 1
        return f"{sa}+{sb}", 1


@dataclass(frozen=True)
class _Sub(_Node):
    a: _Node
    b: _Node

    def eval(self, t):
        return self.a.eval(t) - self.b.eval(t)

    def diff(self):
        return _sub(self.a.diff(), self.b.diff())

    def render(self):
        sa, _ = self.a.render()
        sb, pb = self.b.render()
        if pb <= 1 or sb.startswith("-"):
            sb = f"({sb})"
        return f"{sa}-{sb}", 1


@dataclass(frozen=True)
class _Mul(_Node):
    a: _Node
    b: _Node

    def eval(self, t):
        return self.a.eval(t) * self.b.eval(t)

    def diff(self):
        return _add(_mul(self.a.diff(), self.b), _mul(self.a, self.b.diff()))

    def render(self):
        sa, pa = self.a.render()
        sb, pb = self.b.render()
        if pa < 2:
            sa = f"({sa})"
        if pb < 2 or sb.startswith("-"):
            sb = f"({sb})"
        return f"{sa}*{sb}", 2


@dataclass(frozen=True)
class _Sin(_Node):
    a: _Node

    def eval(self, t):
        return np.sin(self.a.eval(t))

    def diff(self):
        return _mul(_Cos(self.a), self.a.diff())

    def render(self):
        return f"sin({self.a.render()[0]})", 3


@dataclass(frozen=True)
class _Cos(_Node):
    a: _Node

    def eval(self, t):
        return np.cos(self.a.eval(t))

    def diff(self):
        return _mul(_Const(-1.0), _mul(_Sin(self.a), self.a.diff()))

    def render(self):
        return f"cos({self.a.render()[0]})", 3


def _fmt(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


# Smart constructors fold constants so derivatives stay readable.

def _add(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const) and a.value == 0.0:
        return b
    if isinstance(b, _Const) and b.value == 0.0:
        return a
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value + b.value)
    return _Add(a, b)


def _sub(a: _Node, b: _Node) -> _Node:
    if isinstance(b, _Const) and b.value == 0.0:
        return a
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value - b.value)
    return _Sub(a, b)


def _mul(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const):
        if a.value == 0.0:
            return _Const(0.0)
        if a.value == 1.0:
            return b
    if isinstance(b, _Const):
        if b.value == 0.0:
            return _Const(0.0)
        if b.value == 1.0:
            return a
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value * b.value)
    return _Mul(a, b)


# --- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)|(sin|cos|t)|([()+\-*]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                rest = text[pos:].lstrip()
                if not rest:
                    break
                raise WaveformError(f"bad waveform token at column {pos + 1}: {rest[:10]!r}")
            num, word, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num, m.start()))
            elif word is not None:
                self.tokens.append(("word", word, m.start()))
            else:
                self.tokens.append(("op", op, m.start()))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise WaveformError(f"expected {op!r} at column {col + 1}")

    def parse(self) -> _Node:
        node = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise WaveformError(f"unexpected {val!r} at column {col + 1}")
        return node

    def expr(self) -> _Node:
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                node = _Add(node, rhs) if val == "+" else _Sub(node, rhs)
            else:
                return node

    def term(self) -> _Node:
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                node = _Mul(node, self.factor())
            else:
                return node

    def factor(self) -> _Node:
        kind, val, col = self.peek()
        if kind == "op" and val == "-":
            self.take()
            inner = self.factor()
            if isinstance(inner, _Const):
                return _Const(-inner.value)
            return _Mul(_Const(-1.0), inner)
        return self.atom()

    def atom(self) -> _Node:
        kind, val, col = self.take()
        if kind == "num":
            return _Const(float(val))
        if kind == "word":
            if val == "t":
                return _Time()
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            return _Sin(arg) if val == "sin" else _Cos(arg)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise WaveformError(f"unexpected {val!r} at column {col + 1}")


# --- public wrapper ---------------------------------------------------------

@dataclass(frozen=True)
class Waveform:
    """An immutable time signal; call it at any finite ``t`` (scalar or array)."""

    root: _Node

    @staticmethod
    def parse(text: str) -> "Waveform":
        return Waveform(_Parser(text).parse())

    @staticmethod
    def constant(value: float) -> "Waveform":
        return Waveform(_Const(float(value)))

    def __call__(self, t):
        return self.root.eval(t)

    def derivative(self) -> "Waveform":
        return Waveform(self.root.diff())

    def to_text(self) -> str:
        return self.root.render()[0]

    @property
    def is_constant(self) -> bool:
        return isinstance(self.root, _Const)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.to_text()


def parse_waveform(text: str) -> Waveform:
    """Parse waveform text; raises :class:`WaveformError` on bad syntax."""
    return Waveform.parse(text)
