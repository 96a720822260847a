"""Text front-end for polynomials in the p_ij.

Grammar (whitespace is free between tokens)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := base ("^" uint)?
    base   := rational | pvar | "det" "(" "p" ")" | "tr" "(" "p" ")"
            | "minor" "(" "p" ";" idxlist ";" idxlist ")" | "(" expr ")"
    pvar   := "p" digit digit            (i <= j <= n)
    rational := uint ("/" uint)?
    idxlist  := (digit ("," digit)*)?

``^`` binds tighter than unary minus, so ``-p11^2`` is ``-(p11^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BadIndex, LimitsExceeded, PdeSyntaxError, ZeroDenominator
from .exact import format_rational
from .pde_poly import PdePolynomial, det_p, minor_polynomial, p_variables, trace_p

MAX_N = 9
MAX_DEPTH = 100
MAX_DEGREE = 24


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Var:
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Det:
    pass


@dataclass(frozen=True)
class Trace:
    pass


@dataclass(frozen=True)
class Minor:
    rows: tuple[int, ...]
    cols: tuple[int, ...]


Node = Union[Literal, Var, Neg, BinOp, Pow, Det, Trace, Minor]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<pvar>p\d\d)
  | (?P<word>det|tr|minor|p)
  | (?P<uint>\d+)
  | (?P<op>[-+*^/();,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PdeSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "word" and m.end() < len(text) and (text[m.end()].isalnum() or text[m.end()] == "_"):
                raise PdeSyntaxError(f"unknown identifier starting at {tok!r}", pos)
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = tokenize(text)
        self.k = 0
        self.n = n
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def take(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "word") and self.tok.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if not self.accept(text):
            found = t.text or "end of input"
            raise PdeSyntaxError(f"expected {text!r}, found {found!r}", t.pos)
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            raise PdeSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise PdeSyntaxError("expression nested too deeply", self.tok.pos)

    def expr(self) -> Node:
        self._enter()
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        self.depth -= 1
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.accept("*"):
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.take()
            self._enter()
            node = Neg(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self) -> Node:
        node = self.base()
        if self.accept("^"):
            t = self.tok
            if t.kind != "uint":
                raise PdeSyntaxError("exponent must be a nonnegative integer", t.pos)
            self.take()
            e = int(t.text)
            if e > MAX_DEGREE:
                raise LimitsExceeded(f"exponent {e} exceeds {MAX_DEGREE}", t.pos)
            node = Pow(node, e)
        return node

    def _index(self, ch: str, pos: int) -> int:
        i = int(ch)
        if not 1 <= i <= self.n:
            raise BadIndex(f"index {i} out of range 1..{self.n}", pos)
        return i

    def idxlist(self) -> tuple[int, ...]:
        out: list[int] = []
        if self.tok.kind == "uint":
            while True:
                t = self.tok
                if t.kind != "uint" or len(t.text) != 1:
                    raise PdeSyntaxError("expected a single-digit index", t.pos)
                self.take()
                out.append(self._index(t.text, t.pos))
                if not self.accept(","):
                    break
        if any(a >= b for a, b in zip(out, out[1:])):
            raise BadIndex("minor index lists must be strictly increasing", self.tok.pos)
        return tuple(out)

    def base(self) -> Node:
        t = self.tok
        if t.kind == "uint":
            self.take()
            num = int(t.text)
            if self.accept("/"):
                d = self.tok
                if d.kind != "uint":
                    raise PdeSyntaxError("expected a denominator", d.pos)
                self.take()
                if int(d.text) == 0:
                    raise ZeroDenominator("zero denominator", d.pos)
                return Literal(Fraction(num, int(d.text)))
            return Literal(Fraction(num))
        if t.kind == "pvar":
            self.take()
            i = self._index(t.text[1], t.pos + 1)
            j = self._index(t.text[2], t.pos + 2)
            if i > j:
                raise BadIndex(f"{t.text}: variables are written with i <= j", t.pos)
            return Var(i, j)
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "word" and t.text in ("det", "tr"):
            self.take()
            self.expect("(")
            self.expect("p")
            self.expect(")")
            return Det() if t.text == "det" else Trace()
        if t.kind == "word" and t.text == "minor":
            self.take()
            self.expect("(")
            self.expect("p")
            self.expect(";")
            rows = self.idxlist()
            self.expect(";")
            cols = self.idxlist()
            close = self.expect(")")
            if len(rows) != len(cols):
                raise BadIndex("minor index lists must have equal length", close.pos)
            return Minor(rows, cols)
        found = t.text or "end of input"
        raise PdeSyntaxError(f"unexpected {found!r}", t.pos)


def parse_ast(text: str, n: int) -> Node:
    if not 1 <= n <= MAX_N:
        raise BadIndex(f"n must be in 1..{MAX_N}")
    return _Parser(text, n).parse()


def _children(node: Node) -> tuple:
    if isinstance(node, Neg):
        return (node.operand,)
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, Pow):
        return (node.base,)
    return ()


def fold(node: Node, leaf, combine):
    """Post-order evaluation without recursion, so long operator chains are safe."""
    stack: list[tuple[Node, bool]] = [(node, False)]
    values: list = []
    while stack:
        cur, ready = stack.pop()
        kids = _children(cur)
        if not kids:
            values.append(leaf(cur))
        elif ready:
            args = values[len(values) - len(kids):]
            del values[len(values) - len(kids):]
            values.append(combine(cur, *args))
        else:
            stack.append((cur, True))
            stack.extend((k, False) for k in reversed(kids))
    return values[0]


def _degree_bound(node: Node, n: int) -> int:
    def leaf(x):
        if isinstance(x, Literal):
            return 0
        if isinstance(x, (Var, Trace)):
            return 1
        if isinstance(x, Det):
            return n
        return len(x.rows)

    def combine(x, *d):
        if isinstance(x, Neg):
            return d[0]
        if isinstance(x, Pow):
            return d[0] * x.exponent
        return d[0] + d[1] if x.op == "*" else max(d)

    return fold(node, leaf, combine)


def lower(node: Node, n: int) -> PdePolynomial:
    """Expand an AST into a polynomial."""

    def leaf(x):
        if isinstance(x, Literal):
            return PdePolynomial.constant(n, x.value)
        if isinstance(x, Var):
            return PdePolynomial.variable(n, x.i, x.j)
        if isinstance(x, Det):
            return det_p(n)
        if isinstance(x, Trace):
            return trace_p(n)
        return minor_polynomial(n, x.rows, x.cols)

    def combine(x, *a):
        if isinstance(x, Neg):
            return -a[0]
        if isinstance(x, Pow):
            return a[0] ** x.exponent
        if x.op == "+":
            return a[0] + a[1]
        if x.op == "-":
            return a[0] - a[1]
        return a[0] * a[1]

    return fold(node, leaf, combine)


def parse_pde(text: str, n: int) -> PdePolynomial:
    node = parse_ast(text, n)
    if _degree_bound(node, n) > MAX_DEGREE:
        raise LimitsExceeded(f"expression degree exceeds {MAX_DEGREE}", 0)
    try:
        return lower(node, n)
    except LimitsExceeded as e:
        raise LimitsExceeded(e.message, 0) from None


def _format_monomial(n: int, mono) -> str:
    parts = []
    for (i, j), e in zip(p_variables(n), mono):
        if e == 1:
            parts.append(f"p{i}{j}")
        elif e > 1:
            parts.append(f"p{i}{j}^{e}")
    return "*".join(parts)


def format_pde(f: PdePolynomial) -> str:
    """Canonical text: descending graded-lex terms, explicit ``*`` and ``^``."""
    terms = f.items_grlex()
    if not terms:
        return "0"
    out = []
    for k, (mono, c) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        body = _format_monomial(f.n, mono)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if k == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f"{'-' if neg else '+'} {text}")
    return " ".join(out)
