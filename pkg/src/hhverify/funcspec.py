"""Positive-function specifications.

A function under test is either parsed from a tiny expression language or
instantiated from a registered parametric family. Either way it becomes an
immutable :class:`FunctionExpr` whose ``evaluate`` returns a strictly
positive finite float or raises a typed error.

Expression grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("-" factor) | power
    power  := atom ("^" factor)?          # right-associative
    atom   := NUMBER | "x" | "e" | "pi" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := "exp" | "ln" | "sqrt"

NUMBER is a decimal literal with optional exponent. Positivity is a
property of evaluation, not of the syntax: "x-5" parses fine and fails
only when evaluated at a point where it is not strictly positive.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Union

import numpy as np

__all__ = [
    "Const",
    "Var",
    "Unary",
    "Binary",
    "FunctionExpr",
    "FamilySpec",
    "ExpressionError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "EvaluationError",
    "DomainError",
    "PositivityError",
    "FamilyError",
    "parse",
    "unparse",
    "evaluate",
    "family_instantiate",
    "registered_families",
]


# ---------------------------------------------------------------------------
# errors


class ExpressionError(Exception):
    """Base class for expression parsing and evaluation failures."""


class ExprSyntaxError(ExpressionError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r}", offset)
        self.name = name


class EvaluationError(ExpressionError):
    """Evaluation failed; ``x`` is the abscissa that triggered it."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} at x={x!r}")
        self.x = x


class DomainError(EvaluationError):
    """ln/sqrt of a negative quantity, division by zero, or 0^negative."""


class PositivityError(EvaluationError):
    """The final value was not a strictly positive finite real."""


class FamilyError(Exception):
    """Unknown family name or parameter outside its legal range."""


# ---------------------------------------------------------------------------
# expression nodes


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" | "exp" | "ln" | "sqrt"
    arg: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # "+" | "-" | "*" | "/" | "^"
    left: "Node"
    right: "Node"


Node = Union[Const, Var, Unary, Binary]

_FUNCS = ("exp", "ln", "sqrt")
_CONSTANTS = {"e": math.e, "pi": math.pi}


# ---------------------------------------------------------------------------
# tokenizer / parser

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_OPS = "+-*/^()"


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(_Token("num", m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), i))
            i = m.end()
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tok
        self.i += 1
        return t

    def expect_op(self, op: str) -> None:
        if self.tok.kind == "op" and self.tok.text == op:
            self.advance()
            return
        raise ExprSyntaxError(f"expected {op!r}", self.tok.pos)

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            return Binary("^", node, self.factor())
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = float(t.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"numeric literal {t.text!r} overflows", t.pos)
            return Const(value)
        if t.kind == "ident":
            self.advance()
            if t.text == "x":
                return Var()
            if t.text in _CONSTANTS:
                return Const(_CONSTANTS[t.text])
            if t.text in _FUNCS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Unary(t.text, arg)
            raise UnknownIdentifierError(t.text, t.pos)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError("expected a number, name, or '('", t.pos)


def parse(text: str) -> "FunctionExpr":
    """Parse expression text into a FunctionExpr.

    Raises:
        ExprSyntaxError: malformed input, with the byte offset of the problem.
        UnknownIdentifierError: for names outside {x, e, pi, exp, ln, sqrt}.
    """
    return FunctionExpr(_Parser(text).parse())


# ---------------------------------------------------------------------------
# unparsing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM_PREC = 5


def _prec(node: Node) -> int:
    if isinstance(node, (Const, Var)):
        return _ATOM_PREC
    if isinstance(node, Unary):
        return _ATOM_PREC if node.op in _FUNCS else _PREC["neg"]
    return _PREC[node.op]


def _to_text(node: Node) -> str:
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Unary):
        if node.op == "neg":
            arg = _to_text(node.arg)
            if _prec(node.arg) < _PREC["neg"]:
                arg = f"({arg})"
            return f"-{arg}"
        return f"{node.op}({_to_text(node.arg)})"
    p = _PREC[node.op]
    left, right = _to_text(node.left), _to_text(node.right)
    if node.op == "^":
        # right-associative: parenthesize the left operand on ties
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < p:
            right = f"({right})"
    else:
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
    return f"{left}{node.op}{right}"


def unparse(f: "FunctionExpr") -> str:
    """Render ``f`` back to expression text that re-parses to the same tree."""
    return _to_text(f.root)


# ---------------------------------------------------------------------------
# compilation and evaluation


def _compile_scalar(node: Node) -> Callable[[float], float]:
    if isinstance(node, Const):
        c = node.value
        return lambda x: c
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, Unary):
        arg = _compile_scalar(node.arg)
        if node.op == "neg":
            return lambda x: -arg(x)
        if node.op == "exp":
            return lambda x: math.exp(arg(x))
        if node.op == "ln":
            return lambda x: math.log(arg(x))
        return lambda x: math.sqrt(arg(x))
    left = _compile_scalar(node.left)
    right = _compile_scalar(node.right)
    op = node.op
    if op == "+":
        return lambda x: left(x) + right(x)
    if op == "-":
        return lambda x: left(x) - right(x)
    if op == "*":
        return lambda x: left(x) * right(x)
    if op == "/":
        return lambda x: left(x) / right(x)
    return lambda x: math.pow(left(x), right(x))


def _compile_vector(node: Node) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(node, Const):
        c = node.value
        return lambda x: c
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, Unary):
        arg = _compile_vector(node.arg)
        fn = {"neg": np.negative, "exp": np.exp, "ln": np.log, "sqrt": np.sqrt}[node.op]
        return lambda x: fn(arg(x))
    left = _compile_vector(node.left)
    right = _compile_vector(node.right)
    fn = {"+": np.add, "-": np.subtract, "*": np.multiply, "/": np.divide, "^": np.power}[node.op]
    return lambda x: fn(left(x), right(x))


@dataclass(frozen=True)
class FunctionExpr:
    """An immutable specification of a function meant to map [0, B] to (0, inf).

    Equality and hashing are structural (on the expression tree). Compiled
    evaluators are cached per instance.
    """

    root: Node

    @cached_property
    def _scalar(self) -> Callable[[float], float]:
        return _compile_scalar(self.root)

    @cached_property
    def _vector(self) -> Callable[[np.ndarray], np.ndarray]:
        return _compile_vector(self.root)

    def evaluate(self, x: float) -> float:
        """Evaluate at ``x``; the result is a strictly positive finite float.

        Node semantics are plain IEEE round-to-nearest arithmetic.

        Raises:
            DomainError: ln or sqrt of an out-of-domain quantity, division
                by zero, or 0 raised to a negative power.
            PositivityError: the final value is <= 0, or overflowed.
        """
        try:
            y = self._scalar(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(str(exc) or "math domain error", x) from exc
        except OverflowError as exc:
            raise PositivityError("value overflowed to non-finite", x) from exc
        if not (math.isfinite(y) and y > 0.0):
            raise PositivityError(f"value {y!r} is not strictly positive", x)
        return y

    def evaluate_array(self, xs) -> np.ndarray:
        """Vectorized evaluation with no positivity policing.

        Out-of-domain points come back as nan or +-inf instead of raising;
        callers that need the strict contract must mask for finiteness and
        positivity themselves (the grid classifier does exactly that).
        """
        xs = np.asarray(xs, dtype=float)
        with np.errstate(all="ignore"):
            ys = self._vector(xs)
        if np.ndim(ys) == 0:
            return np.full(xs.shape, float(ys))
        return ys

    def __str__(self) -> str:
        return unparse(self)


def evaluate(f: FunctionExpr, x: float) -> float:
    """Module-level alias for :meth:`FunctionExpr.evaluate`."""
    return f.evaluate(x)


# ---------------------------------------------------------------------------
# registered families


@dataclass(frozen=True)
class FamilySpec:
    """A point in a named parametric family, e.g. FamilySpec("exp_linear", {"k": 2.0})."""

    name: str
    params: Mapping[str, float]


def _build_const(c: float) -> Node:
    return Const(c)


def _build_exp_linear(k: float) -> Node:
    return Unary("exp", Binary("*", Const(k), Var()))


def _build_exp_affine(c: float, k: float) -> Node:
    return Binary("*", Const(c), Unary("exp", Binary("*", Const(k), Var())))


def _build_poly_shift(p: float, q: float) -> Node:
    return Binary("+", Binary("^", Var(), Const(p)), Const(q))


def _positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise FamilyError(f"parameter {name!r} must be > 0, got {value!r}")


# name -> (ordered parameter names, builder, range check)
_FAMILIES: dict[str, tuple[tuple[str, ...], Callable[..., Node], Callable[..., None]]] = {
    "const": (("c",), _build_const, lambda c: _positive("c", c)),
    "exp_linear": (("k",), _build_exp_linear, lambda k: None),
    "exp_affine": (("c", "k"), _build_exp_affine, lambda c, k: _positive("c", c)),
    "poly_shift": (("p", "q"), _build_poly_shift, lambda p, q: _positive("q", q)),
}


def registered_families() -> dict[str, tuple[str, ...]]:
    """Return {family name: ordered parameter names} for all registered families."""
    return {name: entry[0] for name, entry in _FAMILIES.items()}


def family_instantiate(spec: FamilySpec) -> FunctionExpr:
    """Instantiate a family member as a FunctionExpr.

    Raises:
        FamilyError: unknown family, missing/unexpected parameter names,
            a non-finite parameter value, or a value outside its range.
    """
    if spec.name not in _FAMILIES:
        known = ", ".join(sorted(_FAMILIES))
        raise FamilyError(f"unknown family {spec.name!r} (known: {known})")
    param_names, builder, check = _FAMILIES[spec.name]
    given = set(spec.params)
    expected = set(param_names)
    if given != expected:
        missing = sorted(expected - given)
        extra = sorted(given - expected)
        parts = []
        if missing:
            parts.append(f"missing {missing}")
        if extra:
            parts.append(f"unexpected {extra}")
        raise FamilyError(f"family {spec.name!r}: " + ", ".join(parts))
    values = []
    for name in param_names:
        v = float(spec.params[name])
        if not math.isfinite(v):
            raise FamilyError(f"parameter {name!r} must be finite, got {v!r}")
        values.append(v)
    check(*values)
    return FunctionExpr(builder(*values))
