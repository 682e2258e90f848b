"""Scalar expressions f(x, y) with exact derivatives up to order three.

Expressions are parsed from text into an immutable AST.  For evaluation an
expression is compiled, with its parameter values bound, into a flat tape
that the kernel backend runs in order-3 bivariate Taylor arithmetic.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | power
    power    := base ('^' exponent)?
    exponent := '-' exponent | base
    base     := number | ident | ident '(' expr ')' | '(' expr ')'

so ``-x^2`` reads as ``-(x^2)`` and ``x^-1`` is accepted.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from . import _kernels_py as _ops
from ._backend import kernels

FUNCTIONS = ("sqrt", "ln", "exp", "sin", "cos", "sinh", "cosh", "tanh", "coth")

JET_FIELDS = ("f", "f_x", "f_y", "f_xx", "f_xy", "f_yy", "f_xxx", "f_xxy", "f_xyy", "f_yyy")


class ExpressionError(ValueError):
    """Base class for expression parsing and evaluation errors."""


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at offset {position}"
        super().__init__(f"unknown identifier {name!r}{where}")


class ArityError(ExpressionError):
    def __init__(self, name: str, nargs: int, position: int):
        self.name = name
        self.nargs = nargs
        self.position = position
        super().__init__(f"{name} takes exactly 1 argument ({nargs} given) at offset {position}")


class EvaluationDomainError(ExpressionError, ArithmeticError):
    """An operation was applied outside its domain (ln of 0, division by 0, ...)."""

    def __init__(self, node: "Node", x: float, y: float):
        self.node = node
        self.x = x
        self.y = y
        super().__init__(f"domain error in {to_text(node)!r} at ({x!r}, {y!r})")


# --------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a function name
    arg: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Param, Unary, Binary]


def const(value: float) -> Node:
    """Numeric literal node; negative values become a negation of a literal."""
    value = float(value)
    if value < 0 or (value == 0 and math.copysign(1.0, value) < 0):
        return Unary("neg", Num(-value))
    return Num(value)


@dataclass(frozen=True)
class Expression:
    """Parsed scalar function of the declared variables and parameters."""

    root: Node
    variables: tuple[str, ...] = ("x", "y")
    parameters: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.variables) > 2:
            raise ValueError("at most two variables are supported")
        missing = _symbols(self.root) - set(self.variables) - set(self.parameters)
        if missing:
            raise UnknownIdentifierError(sorted(missing)[0])

    def __str__(self) -> str:
        return to_text(self.root)

    def to_text(self) -> str:
        return to_text(self.root)

    def compile(self, params: Mapping[str, float] | None = None) -> "CompiledExpression":
        return compile_expression(self, params or {})

    def jet(self, x: float, y: float = 0.0, params: Mapping[str, float] | None = None) -> "Jet3":
        return eval_jet3(self, x, y, params or {})

    def value(self, x: float, y: float = 0.0, params: Mapping[str, float] | None = None) -> float:
        return evaluate(self, x, y, params or {})

    def substitute(self, mapping: Mapping[str, Node], variables=None, parameters=None) -> "Expression":
        """Replace variables/parameters by sub-trees (composition)."""
        return Expression(
            substitute(self.root, mapping),
            tuple(self.variables if variables is None else variables),
            tuple(self.parameters if parameters is None else parameters),
        )


def _symbols(node: Node) -> set[str]:
    if isinstance(node, (Var, Param)):
        return {node.name}
    if isinstance(node, Unary):
        return _symbols(node.arg)
    if isinstance(node, Binary):
        return _symbols(node.left) | _symbols(node.right)
    return set()


def substitute(node: Node, mapping: Mapping[str, Node]) -> Node:
    if isinstance(node, (Var, Param)):
        return mapping.get(node.name, node)
    if isinstance(node, Unary):
        return Unary(node.op, substitute(node.arg, mapping))
    if isinstance(node, Binary):
        return Binary(node.op, substitute(node.left, mapping), substitute(node.right, mapping))
    return node


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text, variables, parameters):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = set(variables)
        self.parameters = set(parameters)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            what = "end of input" if kind == "end" else repr(val)
            raise ExpressionSyntaxError(f"expected {value!r}, found {what}", pos, self.text)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected {val!r}", pos, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Node:
        node = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            node = Binary("^", node, self.exponent())
        return node

    def exponent(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Unary("neg", self.exponent())
        return self.base()

    def base(self) -> Node:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "ident":
            if self.peek()[:2] == ("op", "("):
                if val not in FUNCTIONS:
                    raise UnknownIdentifierError(val, pos)
                self.take()
                args = [self.expr()]
                while self.peek()[:2] == ("op", ","):
                    self.take()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != 1:
                    raise ArityError(val, len(args), pos)
                return Unary(val, args[0])
            if val in FUNCTIONS:
                raise ArityError(val, 0, pos)
            if val in self.variables:
                return Var(val)
            if val in self.parameters:
                return Param(val)
            raise UnknownIdentifierError(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ExpressionSyntaxError(f"expected operand, found {what}", pos, self.text)


def parse(text: str, variables: Sequence[str] = ("x", "y"), parameters: Sequence[str] = ()) -> Expression:
    """Parse ``text`` into an :class:`Expression`.

    Raises :class:`ExpressionSyntaxError` (with ``.position``),
    :class:`UnknownIdentifierError` or :class:`ArityError`.
    """
    clash = set(variables) & set(parameters)
    if clash:
        raise ValueError(f"names declared both as variable and parameter: {sorted(clash)}")
    root = _Parser(text, variables, parameters).parse()
    return Expression(root, tuple(variables), tuple(parameters))


# ----------------------------------------------------------------- printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary) and node.op == "neg":
        return 3
    return 5


def _num_text(v: float) -> str:
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_text(node: Node) -> str:
    """Render ``node`` so that parsing the result gives back the same tree."""
    if isinstance(node, Num):
        if node.value < 0 or not math.isfinite(node.value):
            return f"({node.value!r})"
        return _num_text(node.value)
    if isinstance(node, (Var, Param)):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            inner = to_text(node.arg)
            return f"-({inner})" if _prec(node.arg) < 3 else f"-{inner}"
        return f"{node.op}({to_text(node.arg)})"
    p = _PREC[node.op]
    left = to_text(node.left)
    right = to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= 4:
            left = f"({left})"
        if _prec(node.right) < 5:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}" if p == 1 else f"{left}*{right}" if node.op == "*" else f"{left}/{right}"


# ---------------------------------------------------------- float evaluator


def evaluate(e: Expression | Node, x: float, y: float = 0.0, params: Mapping[str, float] | None = None) -> float:
    """Plain float evaluation by tree walking.

    Independent of the jet kernels; the finite-difference oracle uses it as
    its black-box function.
    """
    params = params or {}
    if isinstance(e, Expression):
        env = dict(params)
        names = e.variables
        if len(names) >= 1:
            env[names[0]] = x
        if len(names) == 2:
            env[names[1]] = y
        return _eval(e.root, env)
    return _eval(e, {"x": x, "y": y, **params})


_FLOAT_FUNCS = {
    "sqrt": math.sqrt,
    "ln": math.log,
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "coth": lambda t: math.cosh(t) / math.sinh(t),
}


def _eval(node: Node, env) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, (Var, Param)):
        try:
            return float(env[node.name])
        except KeyError:
            raise UnknownIdentifierError(node.name) from None
    if isinstance(node, Unary):
        a = _eval(node.arg, env)
        if node.op == "neg":
            return -a
        return _FLOAT_FUNCS[node.op](a)
    a = _eval(node.left, env)
    b = _eval(node.right, env)
    op = node.op
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    return a**b


# ----------------------------------------------------------------- compile

_UNARY_OPS = {
    "neg": _ops.OP_NEG,
    "sqrt": _ops.OP_SQRT,
    "ln": _ops.OP_LN,
    "exp": _ops.OP_EXP,
    "sin": _ops.OP_SIN,
    "cos": _ops.OP_COS,
    "sinh": _ops.OP_SINH,
    "cosh": _ops.OP_COSH,
    "tanh": _ops.OP_TANH,
    "coth": _ops.OP_COTH,
}
_BINARY_OPS = {"+": _ops.OP_ADD, "-": _ops.OP_SUB, "*": _ops.OP_MUL, "/": _ops.OP_DIV}


@dataclass(frozen=True)
class Jet3:
    """Value and partial derivatives up to order three at one point."""

    f: float
    f_x: float = 0.0
    f_y: float = 0.0
    f_xx: float = 0.0
    f_xy: float = 0.0
    f_yy: float = 0.0
    f_xxx: float = 0.0
    f_xxy: float = 0.0
    f_xyy: float = 0.0
    f_yyy: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Jet3":
        return cls(*(float(v) for v in a))

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, k) for k in JET_FIELDS])

    def __add__(self, other: "Jet3") -> "Jet3":
        return Jet3.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "Jet3") -> "Jet3":
        return Jet3.from_array(self.as_array() - other.as_array())

    def scale(self, c: float) -> "Jet3":
        return Jet3.from_array(c * self.as_array())


@dataclass(frozen=True, eq=False)
class CompiledExpression:
    """An expression with bound parameters, flattened to a kernel tape."""

    expression: Expression
    params: tuple[tuple[str, float], ...]
    ops: np.ndarray = field(repr=False)
    arg0: np.ndarray = field(repr=False)
    arg1: np.ndarray = field(repr=False)
    consts: np.ndarray = field(repr=False)
    nodes: tuple = field(repr=False)

    def jet_array(self, x: float, y: float = 0.0) -> np.ndarray:
        jet, bad = kernels.eval_tape(self.ops, self.arg0, self.arg1, self.consts, float(x), float(y))
        if bad >= 0:
            raise EvaluationDomainError(self.nodes[bad], x, y)
        return jet

    def jet(self, x: float, y: float = 0.0) -> Jet3:
        return Jet3.from_array(self.jet_array(x, y))

    def jets(self, xs, ys=None) -> np.ndarray:
        """Jets at many points, shape (n, 10)."""
        xs = np.ascontiguousarray(xs, dtype=float).ravel()
        ys = np.zeros_like(xs) if ys is None else np.ascontiguousarray(ys, dtype=float).ravel()
        out, k, bad = kernels.eval_tape_many(self.ops, self.arg0, self.arg1, self.consts, xs, ys)
        if k >= 0:
            raise EvaluationDomainError(self.nodes[bad], float(xs[k]), float(ys[k]))
        return out

    def value(self, x: float, y: float = 0.0) -> float:
        return evaluate(self.expression, x, y, dict(self.params))


def _const_value(node: Node, params: Mapping[str, float]) -> float | None:
    """Numeric value of a variable-free subtree, else None."""
    if _symbols(node) - set(params):
        return None
    try:
        return _eval(node, params)
    except (ArithmeticError, ValueError):
        return None


def compile_expression(e: Expression, params: Mapping[str, float]) -> CompiledExpression:
    missing = set(e.parameters) - set(params)
    if missing:
        raise UnknownIdentifierError(sorted(missing)[0])
    var_ops = {}
    if len(e.variables) >= 1:
        var_ops[e.variables[0]] = _ops.OP_VARX
    if len(e.variables) == 2:
        var_ops[e.variables[1]] = _ops.OP_VARY
    ops, a0, a1, consts, nodes = [], [], [], [], []
    memo: dict[Node, int] = {}

    def emit(op, i=0, j=0, c=0.0, node=None):
        ops.append(op)
        a0.append(i)
        a1.append(j)
        consts.append(c)
        nodes.append(node)
        return len(ops) - 1

    def walk(node: Node) -> int:
        if node in memo:
            return memo[node]
        if isinstance(node, Num):
            k = emit(_ops.OP_CONST, c=node.value, node=node)
        elif isinstance(node, Var):
            k = emit(var_ops[node.name], node=node)
        elif isinstance(node, Param):
            k = emit(_ops.OP_CONST, c=float(params[node.name]), node=node)
        elif isinstance(node, Unary):
            k = emit(_UNARY_OPS[node.op], walk(node.arg), node=node)
        elif node.op == "^":
            base = walk(node.left)
            ev = _const_value(node.right, params)
            if ev is None:
                k = emit(_ops.OP_POW, base, walk(node.right), node=node)
            elif float(ev).is_integer() and abs(ev) <= 64:
                k = emit(_ops.OP_POWI, base, c=float(ev), node=node)
            else:
                k = emit(_ops.OP_POWR, base, c=float(ev), node=node)
        else:
            k = emit(_BINARY_OPS[node.op], walk(node.left), walk(node.right), node=node)
        memo[node] = k
        return k

    walk(e.root)
    return CompiledExpression(
        e,
        tuple(sorted((k, float(v)) for k, v in params.items())),
        np.array(ops, dtype=np.intc),
        np.array(a0, dtype=np.intc),
        np.array(a1, dtype=np.intc),
        np.array(consts, dtype=float),
        tuple(nodes),
    )


def eval_jet3(e: Expression, x: float, y: float = 0.0, params: Mapping[str, float] | None = None) -> Jet3:
    """Exact value and partials up to order 3 of ``e`` at (x, y)."""
    return compile_expression(e, params or {}).jet(x, y)
