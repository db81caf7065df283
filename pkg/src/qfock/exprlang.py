"""A small language for generator expressions and identities.

Grammar (whitespace-insensitive)::

    identity := expr "==" expr
    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := "-" factor | power
    power    := primary ("^" int)*
    primary  := NUMBER | "q" | "Vac" | ATOM "(" int ")"
              | CALL "(" expr "," expr ["," int] ")" | "(" expr ")"

``NUMBER`` is ``123`` or ``3/2``. Subexpressions built only from numbers
and ``q`` are folded into a single :class:`Scalar` literal while parsing,
so any Laurent polynomial in its canonical text form is a valid scalar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import ArityError, DSLSyntaxError, IndexRangeError, NonDivisibleError
from .fockspace import FockParams
from .operators import ATOMS, BracketKind, Generators, OperatorMatrix, bracket, qdivdiff
from .qarith import Q, LaurentPoly
from .relations import vacuum_projector
from .report import RelationId, RelationReport, judge

BRACKETS = {"comm": BracketKind.COMM, "acomm": BracketKind.ACOMM, "scomm": BracketKind.SCOMM}


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    value: LaurentPoly


@dataclass(frozen=True)
class Atom:
    name: str
    index: Optional[int] = None


@dataclass(frozen=True)
class Sum:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Diff:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Bracket:
    kind: str
    left: "Node"
    right: "Node"
    k: int = 0


@dataclass(frozen=True)
class QDivDiff:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Identity:
    lhs: "Node"
    rhs: "Node"


Node = Union[Scalar, Atom, Sum, Diff, Product, Neg, Power, Bracket, QDivDiff]


def fold(node):
    """Collapse scalar-only subtrees into :class:`Scalar` literals."""
    if isinstance(node, (Sum, Diff, Product)):
        left, right = fold(node.left), fold(node.right)
        if isinstance(left, Scalar) and isinstance(right, Scalar):
            a, b = left.value, right.value
            return Scalar(a + b if isinstance(node, Sum) else a - b if isinstance(node, Diff) else a * b)
        return type(node)(left, right)
    if isinstance(node, Neg):
        x = fold(node.operand)
        return Scalar(-x.value) if isinstance(x, Scalar) else Neg(x)
    if isinstance(node, Power):
        b = fold(node.base)
        if isinstance(b, Scalar):
            return Scalar(b.value ** node.exponent)
        return Power(b, node.exponent)
    if isinstance(node, Bracket):
        return Bracket(node.kind, fold(node.left), fold(node.right), node.k)
    if isinstance(node, QDivDiff):
        return QDivDiff(fold(node.left), fold(node.right))
    if isinstance(node, Identity):
        return Identity(fold(node.lhs), fold(node.rhs))
    return node


# -- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_]\w*)|(?P<op>==|[-+*^(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(Token("end", "", pos))
            return out
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", pos, text=text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        pos = m.end()


# -- parser ------------------------------------------------------------------

class Parser:
    def __init__(self, text: str, params: Optional[FockParams] = None):
        self.text = text
        self.params = params
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, expected=None, tok=None):
        tok = tok or self.tok
        return DSLSyntaxError(msg, tok.pos, expected, self.text)

    def accept(self, text) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"found {found!r}", repr(text))

    def parse_top(self):
        lhs = self.expr()
        if self.accept("=="):
            rhs = self.expr()
            node = Identity(lhs, rhs)
        else:
            node = lhs
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", "end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            right = self.term()
            node = fold(Sum(node, right) if op == "+" else Diff(node, right))
        return node

    def term(self):
        node = self.factor()
        while self.accept("*"):
            node = fold(Product(node, self.factor()))
        return node

    def factor(self):
        if self.accept("-"):
            return fold(Neg(self.factor()))
        node = self.primary()
        while self.accept("^"):
            tok = self.tok
            k = self.signed_int()
            try:
                node = fold(Power(node, k))
            except NonDivisibleError as exc:
                raise self.error(str(exc), tok=tok) from None
        return node

    def signed_int(self) -> int:
        neg = self.accept("-")
        tok = self.tok
        if tok.kind != "num" or "/" in tok.text:
            raise self.error(f"found {tok.text or 'end of input'!r}", "integer")
        self.advance()
        return -int(tok.text) if neg else int(tok.text)

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Scalar(LaurentPoly.constant(Fraction(tok.text)))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "ident":
            raise self.error(f"found {tok.text or 'end of input'!r}", "number, q, atom, call or '('")
        self.advance()
        name = tok.text
        if name == "q":
            return Scalar(Q)
        if name == "Vac":
            return Atom("Vac")
        if name in ATOMS:
            args = self.arglist(tok)
            if len(args) != 1:
                raise ArityError(f"{name} takes 1 index, got {len(args)} (position {tok.pos})")
            idx = self._int_arg(args[0], tok)
            if self.params is not None and not 1 <= idx <= self.params.size:
                raise IndexRangeError(f"{name}({idx}) outside 1..{self.params.size} (position {tok.pos})")
            return Atom(name, idx)
        if name in BRACKETS or name == "qdivdiff":
            args = self.arglist(tok)
            lo, hi = (2, 2) if name == "qdivdiff" else (2, 3)
            if not lo <= len(args) <= hi:
                raise ArityError(f"{name} takes {lo}-{hi} arguments, got {len(args)} (position {tok.pos})")
            if name == "qdivdiff":
                return QDivDiff(args[0], args[1])
            k = self._int_arg(args[2], tok) if len(args) == 3 else 0
            return Bracket(name, args[0], args[1], k)
        raise self.error(f"unknown name {name!r}", "atom or call", tok)

    def arglist(self, name_tok):
        self.expect("(")
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        return args

    def _int_arg(self, node, tok) -> int:
        if isinstance(node, Scalar) and node.value.is_constant():
            v = node.value.constant_value()
            if v.denominator == 1:
                return int(v)
        raise self.error("argument must be an integer literal", "integer", tok)


def parse(text: str, params: Optional[FockParams] = None):
    """Parse an expression or an ``lhs == rhs`` identity."""
    return Parser(text, params).parse_top()


# -- printer -----------------------------------------------------------------

def _level(node) -> int:
    if isinstance(node, (Sum, Diff)):
        return 1
    if isinstance(node, Product):
        return 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Power):
        return 4
    return 5


def _wrap(node, need: int) -> str:
    s = to_text(node)
    return f"({s})" if _level(node) < need else s


def to_text(node) -> str:
    """Canonical text; ``parse(to_text(x)) == x`` for folded ASTs."""
    if isinstance(node, Identity):
        return f"{to_text(node.lhs)} == {to_text(node.rhs)}"
    if isinstance(node, Scalar):
        s = str(node.value)
        return s if s.isdigit() else f"({s})"
    if isinstance(node, Atom):
        return node.name if node.index is None else f"{node.name}({node.index})"
    if isinstance(node, Sum):
        return f"{_wrap(node.left, 1)} + {_wrap(node.right, 2)}"
    if isinstance(node, Diff):
        return f"{_wrap(node.left, 1)} - {_wrap(node.right, 2)}"
    if isinstance(node, Product):
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, 3)}"
    if isinstance(node, Power):
        return f"{_wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Bracket):
        extra = f", {node.k}" if node.k else ""
        return f"{node.kind}({to_text(node.left)}, {to_text(node.right)}{extra})"
    if isinstance(node, QDivDiff):
        return f"qdivdiff({to_text(node.left)}, {to_text(node.right)})"
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation --------------------------------------------------------------

def _as_matrix(x, ctx: Generators) -> OperatorMatrix:
    if isinstance(x, OperatorMatrix):
        return x
    return ctx.identity().scale(x)


def _eval(node, ctx: Generators):
    if isinstance(node, Scalar):
        return node.value
    if isinstance(node, Atom):
        if node.name == "Vac":
            return vacuum_projector(ctx)
        return ctx.lookup(node.name, node.index)
    if isinstance(node, (Sum, Diff)):
        a, b = _eval(node.left, ctx), _eval(node.right, ctx)
        if isinstance(node, Diff):
            b = -b
        if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
            return a + b
        return _as_matrix(a, ctx) + _as_matrix(b, ctx)
    if isinstance(node, Product):
        a, b = _eval(node.left, ctx), _eval(node.right, ctx)
        if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
            return a * b
        if isinstance(a, LaurentPoly):
            return b.scale(a)
        if isinstance(b, LaurentPoly):
            return a.scale(b)
        return a @ b
    if isinstance(node, Neg):
        return -_eval(node.operand, ctx)
    if isinstance(node, Power):
        base = _eval(node.base, ctx)
        if isinstance(base, LaurentPoly):
            return base ** node.exponent
        if node.exponent < 0:
            raise NonDivisibleError("negative powers are only defined for scalar monomials")
        return base ** node.exponent
    if isinstance(node, Bracket):
        a = _as_matrix(_eval(node.left, ctx), ctx)
        b = _as_matrix(_eval(node.right, ctx), ctx)
        return bracket(a, b, BRACKETS[node.kind], node.k)
    if isinstance(node, QDivDiff):
        a = _as_matrix(_eval(node.left, ctx), ctx)
        b = _as_matrix(_eval(node.right, ctx), ctx)
        return qdivdiff(a, b)
    raise TypeError(f"cannot evaluate {node!r}")


def eval_expr(node, ctx: Generators) -> OperatorMatrix:
    if isinstance(node, str):
        node = parse(node, ctx.params)
    if isinstance(node, Identity):
        raise TypeError("eval_expr takes an expression; use check_identity for identities")
    return _as_matrix(_eval(node, ctx), ctx)


def check_identity(identity, ctx: Generators, tol=None, rid: RelationId = None) -> RelationReport:
    if isinstance(identity, str):
        identity = parse(identity, ctx.params)
    if not isinstance(identity, Identity):
        raise TypeError("expected an identity 'lhs == rhs'")
    rid = rid or RelationId("dsl", ())
    return judge(rid, eval_expr(identity.lhs, ctx) - eval_expr(identity.rhs, ctx), tol)


# -- catalog files -----------------------------------------------------------

_ID_COMMENT = re.compile(r"^\s*(?P<tag>[\w-]+)(?:\[(?P<idx>[-\d,\s]*)\])?\s*$")


def parse_catalog(text: str) -> Tuple[FockParams, List[Tuple[RelationId, Identity]]]:
    """Parse a catalog: a ``params n m p`` header and one identity per line."""
    params = None
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            continue
        if params is None:
            parts = body.split()
            if len(parts) != 4 or parts[0] != "params":
                raise DSLSyntaxError("catalog must start with 'params n m p'", 0, text=raw)
            params = FockParams(*(int(x) for x in parts[1:]))
            continue
        try:
            node = parse(body, params)
        except DSLSyntaxError as exc:
            exc.msg = f"line {lineno}: {exc.msg}"
            raise
        if not isinstance(node, Identity):
            raise DSLSyntaxError(f"line {lineno}: expected an identity", 0, "'=='", body)
        rid = RelationId("line", (lineno,))
        m = _ID_COMMENT.match(comment)
        if comment and m:
            idx = m.group("idx")
            nums = tuple(int(x) for x in idx.split(",") if x.strip()) if idx else ()
            rid = RelationId(m.group("tag"), nums)
        items.append((rid, node))
    if params is None:
        raise DSLSyntaxError("empty catalog", 0)
    return params, items


def check_catalog(text: str, ctx: Optional[Generators] = None, tol=None) -> List[RelationReport]:
    params, items = parse_catalog(text)
    if ctx is None:
        ctx = Generators.exact(params)
    elif ctx.params != params:
        raise ValueError(f"catalog is for {params}, context is for {ctx.params}")
    return [check_identity(node, ctx, tol, rid) for rid, node in items]
