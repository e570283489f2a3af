"""A small expression language for Young functions and weights.

Grammar (LL(1))::

    expr     := 'if' VAR '>=' ['-'] NUMBER 'then' expr 'else' expr
              | additive
    additive := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := primary ['^' unary]
    primary  := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

VAR is ``x`` or ``i``; FUNC is ``abs``, ``ln`` or ``exp``.  Exponentiation
binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

VARIABLES = ("x", "i")
FUNCTIONS = ("abs", "ln", "exp")
KEYWORDS = ("if", "then", "else")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        hint = f"; expected one of {', '.join(self.expected)}" if expected else ""
        super().__init__(f"{message} at position {position}{hint}")


class ExprEvalError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = "x"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Cond:
    var: str
    threshold: float
    then: "Node"
    orelse: "Node"


Node = Union[Num, Var, Neg, Call, BinOp, Cond]


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>>=|[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str   # num, name, op, end
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text):
        if self.tok.text != text:
            raise ParseError(f"unexpected {self._describe()}", self.tok.pos, {repr(text)})
        return self.advance()

    def _describe(self):
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._describe()}", self.tok.pos,
                             {"operator", "end of input"})
        return node

    def expr(self):
        if self.tok.text == "if":
            self.advance()
            var = self.tok
            if var.text not in VARIABLES:
                raise ParseError(f"unexpected {self._describe()}", var.pos,
                                 {repr(v) for v in VARIABLES})
            self.advance()
            self.expect(">=")
            sign = 1.0
            if self.tok.text == "-":
                self.advance()
                sign = -1.0
            if self.tok.kind != "num":
                raise ParseError(f"unexpected {self._describe()}", self.tok.pos,
                                 {"number"})
            threshold = sign * float(self.advance().text)
            self.expect("then")
            then = self.expr()
            self.expect("else")
            return Cond(var.text, threshold, then, self.expr())
        return self.additive()

    def additive(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.primary()
        if self.tok.text == "^":
            self.advance()
            node = BinOp("^", node, self.unary())
        return node

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            if tok.text in VARIABLES:
                self.advance()
                return Var(tok.text)
            if tok.text in FUNCTIONS:
                self.advance()
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            if tok.text not in KEYWORDS:
                raise ParseError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {self._describe()}", tok.pos,
                         {"number", "variable", "function", "'('", "'-'"})


def parse_expr(src: str) -> Node:
    """Parse ``src``; raises :class:`ParseError` with the failing position."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _fmt(v: float) -> str:
    return repr(float(v))


def _show(node) -> tuple[str, int]:
    if isinstance(node, Num):
        if node.value < 0 or math.copysign(1.0, node.value) < 0:
            return f"({_fmt(node.value)})", 5
        return _fmt(node.value), 5
    if isinstance(node, Var):
        return node.name, 5
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})", 5
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3), 3
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            return f"{_wrap(node.left, 5)}^{_wrap(node.right, 3)}", 4
        return f"{_wrap(node.left, p)} {node.op} {_wrap(node.right, p + 1)}", p
    if isinstance(node, Cond):
        return (f"if {node.var} >= {_fmt(node.threshold)} then {to_source(node.then)} "
                f"else {to_source(node.orelse)}"), 0
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, need):
    text, prec = _show(node)
    return text if prec >= need else f"({text})"


def to_source(node: Node) -> str:
    return _show(node)[0]


# ---------------------------------------------------------------------------
# evaluation

def _div(a, b):
    if b == 0:
        raise ExprEvalError("division by zero")
    return a / b


def _pow(a, b):
    try:
        return math.pow(a, b)
    except OverflowError:
        return math.inf
    except (ValueError, ZeroDivisionError):
        raise ExprEvalError(f"{a!r} ^ {b!r} is undefined") from None


def _ln(a):
    if not a > 0:
        raise ExprEvalError(f"ln of nonpositive value {a!r}")
    return math.log(a)


def _exp(a):
    try:
        return math.exp(a)
    except OverflowError:
        return math.inf


_BINARY = {"+": lambda a, b: a + b, "-": lambda a, b: a - b,
           "*": lambda a, b: a * b, "/": _div, "^": _pow}
_CALLS = {"abs": abs, "ln": _ln, "exp": _exp}


def compile_expr(node: Node):
    """Turn an AST into a one-argument Python callable."""
    if isinstance(node, Num):
        v = node.value
        return lambda x: v
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, Neg):
        inner = compile_expr(node.operand)
        return lambda x: -inner(x)
    if isinstance(node, Call):
        fn, inner = _CALLS[node.func], compile_expr(node.arg)
        return lambda x: fn(inner(x))
    if isinstance(node, BinOp):
        fn = _BINARY[node.op]
        left, right = compile_expr(node.left), compile_expr(node.right)
        return lambda x: fn(left(x), right(x))
    if isinstance(node, Cond):
        c = node.threshold
        then, orelse = compile_expr(node.then), compile_expr(node.orelse)
        return lambda x: then(x) if x >= c else orelse(x)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: Node, x: float) -> float:
    return float(compile_expr(node)(float(x)))
