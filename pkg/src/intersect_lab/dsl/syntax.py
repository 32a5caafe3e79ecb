"""Lexer, AST, recursive-descent parser and canonical printer for ``.isl`` scenarios.

Grammar (whitespace-insensitive, ``#`` starts a line comment)::

    scenario   := statement*
    statement  := ringdef | classdef | conedef | assertion
    ringdef    := "ring" NAME "{" "gens" gen ("," gen)* ";" ["rels" expr ("," expr)* ";"]
                  "top" INT ";" "integral" expr "=" rat ("," expr "=" rat)* ";"
                  ["scale" rat ";"] "}"
    gen        := NAME ":" INT
    classdef   := "class" NAME "on" NAME "=" expr ";"
    conedef    := "cone" NAME "=" coneexpr ";"
    assertion  := "assert" [NAME ":"] check ";"
    check      := "member" "(" item "," coneexpr ")" ["==" (bool | tuple)]
                | "extremal" "(" coneexpr ["," INT] ")" ["==" bool]
                | "simplicial" "(" coneexpr ")" "==" bool
                | "relation" "(" items ")" "==" (tuple | "none")
                | "rank" "(" items ")" "==" INT
                | "fixed" "(" expr ")" ["==" bool]
                | "invariants" "(" INT ")" "==" "span" "(" items ")"
                | coneexpr "==" coneexpr
                | expr "==" expr
    coneexpr   := "cone" "(" items ")" ["under" NAME] | "dual" "(" coneexpr ")" | "@" NAME
    item       := expr | "[" rat ("," rat)* "]"
    tuple      := "(" rat ("," rat)* ")"
    rat        := ["-"] INT ["/" INT]
    expr       := term (("+" | "-") term)*
    term       := unary ("*" unary)*
    unary      := "-" unary | power
    power      := primary ["^" INT]
    primary    := INT ["/" INT] | NAME | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..exact import format_rational

MAX_DEPTH = 64

KEYWORDS = frozenset({
    "ring", "gens", "rels", "top", "integral", "scale", "class", "on", "cone", "under",
    "assert", "member", "extremal", "simplicial", "relation", "rank", "dual", "fixed",
    "invariants", "span", "true", "false", "none",
})


@dataclass(frozen=True)
class SourcePosition:
    file: str
    line: int
    col: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


class ScenarioError(Exception):
    """Any error tied to a place in a scenario file."""

    def __init__(self, position: SourcePosition, message: str):
        super().__init__(f"{position}: {message}")
        self.position = position
        self.message = message


class ParseError(ScenarioError):
    def __init__(self, position: SourcePosition, expected: frozenset[str] | set[str], found: str,
                 note: str = ""):
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected)) if self.expected else "nothing"
        msg = f"expected {exp}; found {found}"
        if note:
            msg = f"{note}; {msg}"
        super().__init__(position, msg)


# --- lexer -------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str    # NAME, INT, OP, KW, EOF
    text: str
    pos: SourcePosition

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<op>==|[{}()\[\],;:=+\-*^/@])
""", re.VERBOSE)


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        pos = SourcePosition(file, line, i - line_start + 1)
        if m is None:
            raise ParseError(pos, {"a token"}, repr(text[i]), "invalid character")
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "name":
            tokens.append(Token("KW" if s in KEYWORDS else "NAME", s, pos))
        elif kind == "int":
            tokens.append(Token("INT", s, pos))
        elif kind == "op":
            tokens.append(Token("OP", s, pos))
        i = m.end()
    tokens.append(Token("EOF", "", SourcePosition(file, line, i - line_start + 1)))
    return tokens


# --- AST ---------------------------------------------------------------------

def _pos():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Name:
    id: str
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    pos: SourcePosition | None = _pos()


Expr = Union[Num, Name, BinOp, Neg, Pow]


@dataclass(frozen=True)
class VectorLit:
    values: tuple[Fraction, ...]
    pos: SourcePosition | None = _pos()


Item = Union[Expr, VectorLit]


@dataclass(frozen=True)
class ConeLit:
    items: tuple[Item, ...]
    under: str | None = None
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class ConeRef:
    name: str
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class DualOf:
    cone: "ConeExpr"
    pos: SourcePosition | None = _pos()


ConeExpr = Union[ConeLit, ConeRef, DualOf]


@dataclass(frozen=True)
class Compare:
    left: Expr
    right: Expr
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class ConeCompare:
    left: ConeExpr
    right: ConeExpr
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Member:
    item: Item
    cone: ConeExpr
    expected: Union[bool, tuple[Fraction, ...]] = True
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Extremal:
    cone: ConeExpr
    index: int | None = None
    expected: bool = True
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Simplicial:
    cone: ConeExpr
    expected: bool
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Relation:
    items: tuple[Item, ...]
    expected: tuple[Fraction, ...] | None
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Rank:
    items: tuple[Item, ...]
    expected: int
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Fixed:
    expr: Expr
    expected: bool = True
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Invariants:
    degree: int
    span: tuple[Item, ...]
    pos: SourcePosition | None = _pos()


Check = Union[Compare, ConeCompare, Member, Extremal, Simplicial, Relation, Rank, Fixed, Invariants]


@dataclass(frozen=True)
class RingDef:
    name: str
    gens: tuple[tuple[str, int], ...]
    rels: tuple[Expr, ...]
    top: int
    integrals: tuple[tuple[Expr, Fraction], ...]
    scale: Fraction | None = None
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class ClassDef:
    name: str
    space: str
    expr: Expr
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class ConeDef:
    name: str
    cone: ConeExpr
    pos: SourcePosition | None = _pos()


@dataclass(frozen=True)
class Assertion:
    space: str | None
    check: Check
    pos: SourcePosition | None = _pos()


Statement = Union[RingDef, ClassDef, ConeDef, Assertion]


@dataclass(frozen=True)
class ScenarioAST:
    statements: tuple[Statement, ...]
    file: str = field(default="<input>", compare=False)


# --- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("OP", "KW") and t.text == text

    def error(self, expected) -> ParseError:
        return ParseError(self.tok.pos, set(expected), self.tok.describe())

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error({repr(text)})
        t = self.tok
        self.i += 1
        return t

    def close_list(self, close: str) -> Token:
        if not self.at(close):
            raise self.error({"','", repr(close)})
        return self.expect(close)

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def name(self) -> Token:
        if self.tok.kind != "NAME":
            raise self.error({"identifier"})
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "INT":
            raise self.error({"integer"})
        t = self.tok
        self.i += 1
        return int(t.text)

    def rat(self) -> Fraction:
        neg = self.accept("-")
        num = self.integer()
        den = 1
        if self.accept("/"):
            pos = self.tok.pos
            den = self.integer()
            if den == 0:
                raise ParseError(pos, {"nonzero denominator"}, "0")
        v = Fraction(num, den)
        return -v if neg else v

    def boolean(self) -> bool:
        if self.accept("true"):
            return True
        if self.accept("false"):
            return False
        raise self.error({"'true'", "'false'"})

    def rat_tuple(self) -> tuple[Fraction, ...]:
        self.expect("(")
        vals = [self.rat()]
        while self.accept(","):
            vals.append(self.rat())
        self.close_list(")")
        return tuple(vals)

    # scenario
    def scenario(self, file: str) -> ScenarioAST:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return ScenarioAST(tuple(stmts), file)

    def statement(self) -> Statement:
        if self.at("ring"):
            return self.ringdef()
        if self.at("class"):
            return self.classdef()
        if self.at("cone"):
            return self.conedef()
        if self.at("assert"):
            return self.assertion()
        raise self.error({"'ring'", "'class'", "'cone'", "'assert'"})

    def ringdef(self) -> RingDef:
        pos = self.expect("ring").pos
        name = self.name().text
        self.expect("{")
        self.expect("gens")
        gens = [self.gen()]
        while self.accept(","):
            gens.append(self.gen())
        self.close_list(";")
        rels: list[Expr] = []
        if self.accept("rels"):
            rels.append(self.expr())
            while self.accept(","):
                rels.append(self.expr())
            self.close_list(";")
        self.expect("top")
        top = self.integer()
        self.expect(";")
        self.expect("integral")
        integrals = [self.integral_item()]
        while self.accept(","):
            integrals.append(self.integral_item())
        self.close_list(";")
        scale = None
        if self.accept("scale"):
            scale = self.rat()
            self.expect(";")
        self.expect("}")
        return RingDef(name, tuple(gens), tuple(rels), top, tuple(integrals), scale, pos)

    def gen(self) -> tuple[str, int]:
        n = self.name().text
        self.expect(":")
        return n, self.integer()

    def integral_item(self) -> tuple[Expr, Fraction]:
        m = self.expr()
        self.expect("=")
        return m, self.rat()

    def classdef(self) -> ClassDef:
        pos = self.expect("class").pos
        name = self.name().text
        self.expect("on")
        space = self.name().text
        self.expect("=")
        e = self.expr()
        self.expect(";")
        return ClassDef(name, space, e, pos)

    def conedef(self) -> ConeDef:
        pos = self.expect("cone").pos
        name = self.name().text
        self.expect("=")
        c = self.coneexpr()
        self.expect(";")
        return ConeDef(name, c, pos)

    def assertion(self) -> Assertion:
        pos = self.expect("assert").pos
        space = None
        if self.tok.kind == "NAME" and self.toks[self.i + 1].kind == "OP" \
                and self.toks[self.i + 1].text == ":":
            space = self.name().text
            self.expect(":")
        chk = self.check()
        self.expect(";")
        return Assertion(space, chk, pos)

    def check(self) -> Check:
        pos = self.tok.pos
        if self.accept("member"):
            self.expect("(")
            item = self.item()
            self.expect(",")
            c = self.coneexpr()
            self.expect(")")
            expected: Union[bool, tuple] = True
            if self.accept("=="):
                expected = self.rat_tuple() if self.at("(") else self.boolean()
            return Member(item, c, expected, pos)
        if self.accept("extremal"):
            self.expect("(")
            c = self.coneexpr()
            idx = None
            if self.accept(","):
                idx = self.integer()
            self.expect(")")
            expected = True
            if self.accept("=="):
                expected = self.boolean()
            return Extremal(c, idx, expected, pos)
        if self.accept("simplicial"):
            self.expect("(")
            c = self.coneexpr()
            self.expect(")")
            self.expect("==")
            return Simplicial(c, self.boolean(), pos)
        if self.accept("relation"):
            items = self.items_in_parens()
            self.expect("==")
            if self.accept("none"):
                return Relation(items, None, pos)
            return Relation(items, self.rat_tuple(), pos)
        if self.accept("rank"):
            items = self.items_in_parens()
            self.expect("==")
            return Rank(items, self.integer(), pos)
        if self.accept("fixed"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            expected = True
            if self.accept("=="):
                expected = self.boolean()
            return Fixed(e, expected, pos)
        if self.accept("invariants"):
            self.expect("(")
            d = self.integer()
            self.expect(")")
            self.expect("==")
            self.expect("span")
            return Invariants(d, self.items_in_parens(), pos)
        if self.at("cone") or self.at("dual") or self.at("@"):
            left = self.coneexpr()
            self.expect("==")
            return ConeCompare(left, self.coneexpr(), pos)
        left = self.expr()
        self.expect("==")
        return Compare(left, self.expr(), pos)

    def items_in_parens(self) -> tuple[Item, ...]:
        self.expect("(")
        items = [self.item()]
        while self.accept(","):
            items.append(self.item())
        self.close_list(")")
        return tuple(items)

    def item(self) -> Item:
        if self.at("["):
            pos = self.expect("[").pos
            vals = [self.rat()]
            while self.accept(","):
                vals.append(self.rat())
            self.close_list("]")
            return VectorLit(tuple(vals), pos)
        return self.expr()

    def coneexpr(self) -> ConeExpr:
        pos = self.tok.pos
        if self.accept("cone"):
            items = self.items_in_parens()
            under = None
            if self.accept("under"):
                under = self.name().text
            return ConeLit(items, under, pos)
        if self.accept("dual"):
            self.expect("(")
            c = self.coneexpr()
            self.expect(")")
            return DualOf(c, pos)
        if self.accept("@"):
            return ConeRef(self.name().text, pos)
        raise self.error({"'cone'", "'dual'", "'@'"})

    # expressions
    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError(self.tok.pos, {"a shallower expression"}, self.tok.describe(),
                             f"expression nesting exceeds {MAX_DEPTH}")

    def _leave(self):
        self.depth -= 1

    def expr(self) -> Expr:
        self._enter()
        node = self.term()
        while self.at("+") or self.at("-"):
            t = self.tok
            self.i += 1
            node = BinOp(t.text, node, self.term(), t.pos)
        self._leave()
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*"):
            t = self.tok
            self.i += 1
            node = BinOp("*", node, self.unary(), t.pos)
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            t = self.tok
            self.i += 1
            self._enter()
            node = Neg(self.unary(), t.pos)
            self._leave()
            return node
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("^"):
            t = self.tok
            self.i += 1
            return Pow(base, self.integer(), t.pos)
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            num = int(t.text)
            den = 1
            if self.accept("/"):
                p = self.tok.pos
                den = self.integer()
                if den == 0:
                    raise ParseError(p, {"nonzero denominator"}, "0")
            return Num(Fraction(num, den), t.pos)
        if t.kind == "NAME":
            self.i += 1
            return Name(t.text, t.pos)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        raise self.error({"number", "identifier", "'('", "'-'"})


def parse(text: str, file: str = "<input>") -> ScenarioAST:
    return _Parser(tokenize(text, file)).scenario(file)


def parse_expr(text: str, file: str = "<expr>") -> Expr:
    p = _Parser(tokenize(text, file))
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p.error({"end of input", "operator"})
    return e


# --- printer -------------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return 1 if e.op in "+-" else 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def print_expr(e: Expr, min_prec: int = 0) -> str:
    if isinstance(e, Num):
        s = format_rational(e.value)
        if e.value < 0:
            s = f"({s})"
    elif isinstance(e, Name):
        s = e.id
    elif isinstance(e, BinOp):
        if e.op == "*":
            s = f"{print_expr(e.left, 2)} * {print_expr(e.right, 3)}"
        else:
            s = f"{print_expr(e.left, 1)} {e.op} {print_expr(e.right, 2)}"
    elif isinstance(e, Neg):
        s = f"-{print_expr(e.operand, 3)}"
    elif isinstance(e, Pow):
        s = f"{print_expr(e.base, 5)}^{e.exp}"
    else:
        raise TypeError(f"not an expression: {e!r}")
    return f"({s})" if _prec(e) < min_prec else s


def _rat(q: Fraction) -> str:
    return format_rational(q)


def print_item(it: Item) -> str:
    if isinstance(it, VectorLit):
        return "[" + ", ".join(_rat(v) for v in it.values) + "]"
    return print_expr(it)


def print_cone(c: ConeExpr) -> str:
    if isinstance(c, ConeLit):
        s = "cone(" + ", ".join(print_item(i) for i in c.items) + ")"
        return f"{s} under {c.under}" if c.under else s
    if isinstance(c, DualOf):
        return f"dual({print_cone(c.cone)})"
    return f"@{c.name}"


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _tuple(t) -> str:
    return "(" + ", ".join(_rat(v) for v in t) + ")"


def print_check(c: Check) -> str:
    if isinstance(c, Compare):
        return f"{print_expr(c.left)} == {print_expr(c.right)}"
    if isinstance(c, ConeCompare):
        return f"{print_cone(c.left)} == {print_cone(c.right)}"
    if isinstance(c, Member):
        exp = _tuple(c.expected) if isinstance(c.expected, tuple) else _bool(c.expected)
        return f"member({print_item(c.item)}, {print_cone(c.cone)}) == {exp}"
    if isinstance(c, Extremal):
        idx = f", {c.index}" if c.index is not None else ""
        return f"extremal({print_cone(c.cone)}{idx}) == {_bool(c.expected)}"
    if isinstance(c, Simplicial):
        return f"simplicial({print_cone(c.cone)}) == {_bool(c.expected)}"
    if isinstance(c, Relation):
        items = ", ".join(print_item(i) for i in c.items)
        exp = "none" if c.expected is None else _tuple(c.expected)
        return f"relation({items}) == {exp}"
    if isinstance(c, Rank):
        return f"rank({', '.join(print_item(i) for i in c.items)}) == {c.expected}"
    if isinstance(c, Fixed):
        return f"fixed({print_expr(c.expr)}) == {_bool(c.expected)}"
    if isinstance(c, Invariants):
        return f"invariants({c.degree}) == span({', '.join(print_item(i) for i in c.span)})"
    raise TypeError(f"not a check: {c!r}")


def print_statement(s: Statement) -> str:
    if isinstance(s, RingDef):
        parts = ["gens " + ", ".join(f"{n}:{d}" for n, d in s.gens) + ";"]
        if s.rels:
            parts.append("rels " + ", ".join(print_expr(r) for r in s.rels) + ";")
        parts.append(f"top {s.top};")
        parts.append("integral " + ", ".join(f"{print_expr(m)} = {_rat(v)}"
                                             for m, v in s.integrals) + ";")
        if s.scale is not None:
            parts.append(f"scale {_rat(s.scale)};")
        return f"ring {s.name} {{ " + " ".join(parts) + " }"
    if isinstance(s, ClassDef):
        return f"class {s.name} on {s.space} = {print_expr(s.expr)};"
    if isinstance(s, ConeDef):
        return f"cone {s.name} = {print_cone(s.cone)};"
    if isinstance(s, Assertion):
        prefix = f"{s.space}: " if s.space else ""
        return f"assert {prefix}{print_check(s.check)};"
    raise TypeError(f"not a statement: {s!r}")


def print_scenario(ast: ScenarioAST) -> str:
    return "".join(print_statement(s) + "\n" for s in ast.statements)
