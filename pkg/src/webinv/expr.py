"""Web-function formula DSL: parsing, rendering, and jet evaluation.

Grammar (whitespace-insensitive)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' exponent)?
    atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
    func   := 'exp' | 'ln' | 'sin' | 'cos' | 'sqrt'

Exponents are integer literals (optionally signed, chaining right-
associatively, so ``x^2^3`` means ``x^(2^3)``); general powers must be
spelled ``exp(b*ln(a))``.  Numeric literals are integers or decimals and
convert exactly to rationals, so ``0.25`` is one quarter on the exact
backend.  Identifiers other than ``x``, ``y`` and the five function names
are parse errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import jets
from .errors import ParseError

FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Var, Num, Neg, Add, Sub, Mul, Div, Pow, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(at, "a number, name, or operator", repr(stripped[0]))
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, text, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(text)
        raise ParseError(pos, expected, found)

    def expect_op(self, op):
        kind, text, _ = self.peek()
        if kind == "op" and text == op:
            return self.advance()
        self.fail(f"'{op}'")

    def at_op(self, *ops):
        kind, text, _ = self.peek()
        return kind == "op" and text in ops

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "eof":
            self.fail("end of input")
        return e

    def expr(self):
        e = self.term()
        while self.at_op("+", "-"):
            op = self.advance()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self):
        e = self.factor()
        while self.at_op("*", "/"):
            op = self.advance()[1]
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self):
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        """Signed integer literal; '^' chains fold right-associatively."""
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        kind, text, pos = self.peek()
        if kind != "num" or "." in text:
            self.fail("an integer exponent")
        self.advance()
        n = int(text)
        if self.at_op("^"):
            self.advance()
            m = self.exponent()
            if m < 0:
                raise ParseError(pos, "a non-negative exponent tower", f"{n}^{m}")
            n = n**m
        return sign * n

    def atom(self):
        kind, text, pos = self.peek()
        if kind == "num":
            self.advance()
            return Num(Fraction(text))
        if kind == "ident":
            self.advance()
            if text in ("x", "y"):
                return Var(text)
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            raise ParseError(pos, "x, y, or a function name", repr(text))
        if kind == "op" and text == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        self.fail("a number, variable, function, or '('")


def parse(text: str) -> Expr:
    """Parse formula text into an AST; raises ParseError with position."""
    return _Parser(text).parse()


# -- rendering ----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, Var: 5, Num: 5, Call: 5}


def _decimal(value: Fraction) -> str:
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        # not exactly representable in decimal; falls outside the parser's
        # literal domain, render as a quotient
        return f"({num}/{den})"
    shift = max(twos, fives)
    digits = str(num * 10**shift // den).rjust(shift + 1, "0")
    return f"{digits[:-shift]}.{digits[-shift:]}"


def render(e: Expr, _ctx: int = 0) -> str:
    """Canonical text form; ``parse(render(e)) == e`` on the parser's domain."""
    if isinstance(e, Var):
        body = e.name
    elif isinstance(e, Num):
        body = _decimal(e.value)
    elif isinstance(e, Call):
        body = f"{e.fn}({render(e.arg)})"
    elif isinstance(e, Neg):
        body = f"-{render(e.arg, 3)}"
    elif isinstance(e, Add):
        body = f"{render(e.left, 1)} + {render(e.right, 2)}"
    elif isinstance(e, Sub):
        body = f"{render(e.left, 1)} - {render(e.right, 2)}"
    elif isinstance(e, Mul):
        body = f"{render(e.left, 2)}*{render(e.right, 3)}"
    elif isinstance(e, Div):
        body = f"{render(e.left, 2)}/{render(e.right, 3)}"
    elif isinstance(e, Pow):
        body = f"{render(e.base, 5)}^{e.exponent}"
    else:
        raise TypeError(f"not an expression node: {e!r}")
    if _PREC[type(e)] < _ctx:
        return f"({body})"
    return body


# -- evaluation ---------------------------------------------------------------

def eval_jet(e: Expr, base, order: int, backend: str) -> jets.Jet:
    """Jet of the expression at ``base = (x0, y0)``, truncated at ``order``."""
    x0, y0 = base
    if isinstance(e, Var):
        return jets.make_var(e.name, x0 if e.name == "x" else y0, order, backend)
    if isinstance(e, Num):
        return jets.constant(e.value, order, backend)
    if isinstance(e, Neg):
        return -eval_jet(e.arg, base, order, backend)
    if isinstance(e, Add):
        return eval_jet(e.left, base, order, backend) + eval_jet(e.right, base, order, backend)
    if isinstance(e, Sub):
        return eval_jet(e.left, base, order, backend) - eval_jet(e.right, base, order, backend)
    if isinstance(e, Mul):
        return eval_jet(e.left, base, order, backend) * eval_jet(e.right, base, order, backend)
    if isinstance(e, Div):
        return eval_jet(e.left, base, order, backend) / eval_jet(e.right, base, order, backend)
    if isinstance(e, Pow):
        return eval_jet(e.base, base, order, backend) ** e.exponent
    if isinstance(e, Call):
        return jets.apply_analytic(e.fn, eval_jet(e.arg, base, order, backend))
    raise TypeError(f"not an expression node: {e!r}")


def eval_scalar(e: Expr, base, backend: str = jets.FLOAT):
    """Value of the expression at ``base``; the constant term of any jet."""
    return eval_jet(e, base, 0, backend).const


def is_rational_expr(e: Expr) -> bool:
    """True when the expression stays inside rational arithmetic."""
    if isinstance(e, (Var, Num)):
        return True
    if isinstance(e, Neg):
        return is_rational_expr(e.arg)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return is_rational_expr(e.left) and is_rational_expr(e.right)
    if isinstance(e, Pow):
        return is_rational_expr(e.base)
    if isinstance(e, Call):
        return False
    raise TypeError(f"not an expression node: {e!r}")
