"""Evaluate parsed scenarios into assertion reports."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .. import cones as cl
from ..algebra import AlgebraError, ClassExpr, Presentation, build_algebra, normal_form
from ..exact import format_rational, rank
from ..models import spaces as sp
from ..models.level import ParameterNotCancelled
from ..models.ytilde import TrilinearError
from ..report import AssertionRecord, ScenarioReport
from . import syntax as ast
from .syntax import ScenarioError, SourcePosition, parse

CORE_ERRORS = (AlgebraError, cl.ConeError, sp.ModelError, TrilinearError, ParameterNotCancelled,
               ZeroDivisionError)


class NameResolutionError(ScenarioError):
    pass


class EvaluationError(ScenarioError):
    pass


@dataclass(frozen=True)
class ConeValue:
    space: str | None
    generators: tuple[tuple[Fraction, ...], ...]
    dim: int

    def cone(self) -> cl.Cone:
        return cl.Cone.from_vectors(self.generators, self.dim)


def fmt_vec(v) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def fmt_rays(rays) -> str:
    return "{" + ", ".join(fmt_vec(r) for r in sorted(rays)) + "}"


def describe_class(space: sp.SpaceModel, x: ClassExpr) -> str:
    """Canonical text for a class: normal form where one exists, else its numbers."""
    if isinstance(space, sp.AlgebraSpace):
        return space.format(space.normal_form(x))
    d = space.degree(x)
    if isinstance(space, sp.PairingSpace) and d in (2, 4):
        return fmt_vec(space.vector(x))
    if isinstance(space, sp.TrilinearModel):
        if d == 1:
            return space.format(x)
        if d == 2:
            return "pairings " + fmt_vec(space.vector(x))
    return format_rational(space.integrate(x))


class Evaluator:
    def __init__(self, file: str, registry: Callable[[str], sp.SpaceModel] | None = None):
        self.file = file
        self.registry = registry or sp.build_space
        self.user_spaces: dict[str, sp.SpaceModel] = {}
        self.classes: dict[str, dict[str, ClassExpr]] = {}
        self.cones: dict[str, ConeValue] = {}
        self.records: list[AssertionRecord] = []

    # lookup ------------------------------------------------------------------
    def space(self, name: str, pos: SourcePosition) -> sp.SpaceModel:
        if name in self.user_spaces:
            return self.user_spaces[name]
        try:
            return self.registry(name)
        except sp.UnknownSpace:
            raise NameResolutionError(pos, f"unknown space {name!r}") from None

    def lookup(self, space: sp.SpaceModel | None, name: ast.Name) -> ClassExpr:
        if space is None:
            raise NameResolutionError(name.pos, f"{name.id!r} used outside a space "
                                      "(write 'assert SPACE: ...')")
        user = self.classes.get(space.name, {})
        if name.id in user:
            return user[name.id]
        x = space.lookup(name.id)
        if x is None:
            raise NameResolutionError(name.pos, f"{name.id!r} is not defined in {space.name}")
        return x

    # expressions ---------------------------------------------------------------
    def expr(self, e: ast.Expr, space: sp.SpaceModel | None) -> ClassExpr:
        if isinstance(e, ast.Num):
            return ClassExpr.const(e.value)
        if isinstance(e, ast.Name):
            return self.lookup(space, e)
        if isinstance(e, ast.Neg):
            return -self.expr(e.operand, space)
        if isinstance(e, ast.Pow):
            return self.expr(e.base, space) ** e.exp
        if isinstance(e, ast.BinOp):
            a, b = self.expr(e.left, space), self.expr(e.right, space)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            return a * b
        raise TypeError(f"unexpected node {e!r}")

    def item_vector(self, it: ast.Item, space: sp.SpaceModel | None) -> tuple[Fraction, ...]:
        if isinstance(it, ast.VectorLit):
            return it.values
        if space is None:
            raise EvaluationError(it.pos, "class items need a space ('under SPACE' or 'assert SPACE:')")
        return tuple(space.vector(self.expr(it, space)))

    def vectors(self, items, space) -> list[tuple[Fraction, ...]]:
        vecs = [self.item_vector(i, space) for i in items]
        dims = {len(v) for v in vecs}
        if len(dims) > 1:
            raise EvaluationError(items[0].pos, f"items have different dimensions {sorted(dims)}")
        return vecs

    def cone(self, c: ast.ConeExpr, space: sp.SpaceModel | None) -> ConeValue:
        if isinstance(c, ast.ConeRef):
            if c.name not in self.cones:
                raise NameResolutionError(c.pos, f"unknown cone {c.name!r}")
            return self.cones[c.name]
        if isinstance(c, ast.DualOf):
            inner = self.cone(c.cone, space)
            dual = cl.dual_cone(inner.cone())
            gens = tuple(tuple(Fraction(x) for x in r) for r in dual.rays)
            return ConeValue(inner.space, gens, inner.dim)
        if c.under is not None:
            space = self.space(c.under, c.pos)
        vecs = self.vectors(c.items, space)
        return ConeValue(space.name if space else None, tuple(vecs), len(vecs[0]))

    # statements ----------------------------------------------------------------
    def run(self, tree: ast.ScenarioAST) -> None:
        for st in tree.statements:
            try:
                self.statement(st)
            except ScenarioError:
                raise
            except CORE_ERRORS as exc:
                raise EvaluationError(st.pos, f"{type(exc).__name__}: {exc}") from exc

    def statement(self, st: ast.Statement) -> None:
        if isinstance(st, ast.RingDef):
            self.ringdef(st)
        elif isinstance(st, ast.ClassDef):
            space = self.space(st.space, st.pos)
            if space.lookup(st.name) is not None or st.name in self.classes.get(space.name, {}):
                raise NameResolutionError(st.pos, f"{st.name!r} is already defined in {space.name}")
            value = self.expr(st.expr, space)
            self.classes.setdefault(space.name, {})[st.name] = value
        elif isinstance(st, ast.ConeDef):
            if st.name in self.cones:
                raise NameResolutionError(st.pos, f"cone {st.name!r} is already defined")
            self.cones[st.name] = self.cone(st.cone, None)
        else:
            self.assertion(st)

    def ringdef(self, st: ast.RingDef) -> None:
        if st.name in sp.SPACE_NAMES or st.name in self.user_spaces:
            raise NameResolutionError(st.pos, f"ring name {st.name!r} is already taken")
        scope = sp.SpaceModel(st.name, {g: d for g, d in st.gens}, st.top)
        rels = [self.expr(r, scope) for r in st.rels]
        scale = st.scale if st.scale is not None else Fraction(1)
        integral = []
        for m_expr, value in st.integrals:
            m = self.expr(m_expr, scope)
            terms = list(m.items())
            if len(terms) != 1 or terms[0][1] != 1:
                raise EvaluationError(m_expr.pos, "integral must be given on a single monomial")
            integral.append((terms[0][0], value * scale))
        algebra = build_algebra(Presentation.of(list(st.gens), rels, st.top, integral))
        self.user_spaces[st.name] = sp.AlgebraSpace(st.name, algebra)

    # checks ------------------------------------------------------------------------
    def record(self, st: ast.Assertion, expected: str, computed: str, passed: bool,
               detail: str = "") -> None:
        prefix = f"{st.space}: " if st.space else ""
        self.records.append(AssertionRecord(self.file, st.pos.line, st.pos.col,
                                            prefix + ast.print_check(st.check),
                                            expected, computed, passed, detail))

    def assertion(self, st: ast.Assertion) -> None:
        space = self.space(st.space, st.pos) if st.space else None
        c = st.check
        if isinstance(c, ast.Compare):
            self.compare(st, c, space)
        elif isinstance(c, ast.ConeCompare):
            a, b = self.cone(c.left, space), self.cone(c.right, space)
            if a.dim != b.dim:
                raise EvaluationError(c.pos, "cones live in different dimensions")
            ca, cb = a.cone(), b.cone()
            self.record(st, fmt_rays(cl.extremal_rays(cb)), fmt_rays(cl.extremal_rays(ca)),
                        cl.cones_equal(ca, cb))
        elif isinstance(c, ast.Member):
            self.member(st, c, space)
        elif isinstance(c, ast.Extremal):
            self.extremal(st, c, space)
        elif isinstance(c, ast.Simplicial):
            got = cl.is_simplicial(self.cone(c.cone, space).cone())
            self.record(st, _b(c.expected), _b(got), got == c.expected)
        elif isinstance(c, ast.Relation):
            vecs = self.vectors(c.items, space)
            exp = "none" if c.expected is None else fmt_vec(c.expected)
            try:
                rel = cl.unique_relation(vecs)
            except cl.AmbiguousRelation as exc:
                self.record(st, exp, f"ambiguous: {exc}", False)
                return
            got = "none" if rel is None else fmt_vec(rel)
            self.record(st, exp, got, got == exp)
        elif isinstance(c, ast.Rank):
            vecs = self.vectors(c.items, space)
            got = rank(vecs, len(vecs[0]))
            self.record(st, str(c.expected), str(got), got == c.expected)
        elif isinstance(c, ast.Fixed):
            if space is None:
                raise EvaluationError(c.pos, "fixed(...) needs a space")
            got = sp.fixed_by_action(space, self.expr(c.expr, space))
            self.record(st, _b(c.expected), _b(got), got == c.expected)
        elif isinstance(c, ast.Invariants):
            self.invariants(st, c, space)
        else:
            raise TypeError(f"unexpected check {c!r}")

    def compare(self, st, c: ast.Compare, space) -> None:
        left, right = self.expr(c.left, space), self.expr(c.right, space)
        lv, rv = left.constant_value(), right.constant_value()
        if lv is not None and rv is not None:
            self.record(st, format_rational(rv), format_rational(lv), lv == rv)
            return
        if space is None:
            raise EvaluationError(c.pos, "comparing classes needs a space")
        if rv is not None:
            got = space.integrate(left)
            self.record(st, format_rational(rv), format_rational(got), got == rv)
        elif lv is not None:
            got = space.integrate(right)
            self.record(st, format_rational(lv), format_rational(got), got == lv)
        else:
            self.record(st, describe_class(space, right), describe_class(space, left),
                        space.equal(left, right))

    def member(self, st, c: ast.Member, space) -> None:
        cone = self.cone(c.cone, space)
        item_space = self.space(cone.space, c.pos) if cone.space else space
        v = self.item_vector(c.item, item_space)
        if len(v) != cone.dim:
            raise EvaluationError(c.pos, f"item has dimension {len(v)}, cone has {cone.dim}")
        cert = cl.nonnegative_combination(cone.generators, v, cone.dim)
        if isinstance(cert, cl.Inside):
            got, detail = "true", "coefficients " + fmt_vec(cert.coefficients)
        else:
            got, detail = "false", "separator " + fmt_vec(cert.separator)
        if isinstance(c.expected, tuple):
            ok = len(c.expected) == len(cone.generators) and cl.check_certificate(
                cone.generators, v, cl.Inside(c.expected))
            shown = fmt_vec(cert.coefficients) if cert.inside else "outside"
            self.record(st, fmt_vec(c.expected), shown, ok, detail)
        else:
            self.record(st, _b(c.expected), got, cert.inside == c.expected, detail)

    def extremal(self, st, c: ast.Extremal, space) -> None:
        cone = self.cone(c.cone, space)
        n = len(cone.generators)
        if c.index is not None and not 0 <= c.index < n:
            raise EvaluationError(c.pos, f"generator index {c.index} out of range 0..{n - 1}")
        indices = [c.index] if c.index is not None else range(n)
        failures = []
        for i in indices:
            others = [g for j, g in enumerate(cone.generators) if j != i]
            cert = cl.nonnegative_combination(others, cone.generators[i], cone.dim)
            if cert.inside:
                failures.append(i)
        got = not failures
        detail = f"not extremal: {failures}" if failures else ""
        self.record(st, _b(c.expected), _b(got), got == c.expected, detail)

    def invariants(self, st, c: ast.Invariants, space) -> None:
        if space is None:
            raise EvaluationError(c.pos, "invariants(...) needs a space")
        basis = sp.invariant_classes(space, c.degree)
        a = space.action_algebra
        expected = []
        for it in c.span:
            if isinstance(it, ast.VectorLit):
                raise EvaluationError(it.pos, "span(...) takes classes")
            x = normal_form(a, self.expr(it, space))
            expected.append(a.coordinates(x, c.degree))
        got = [a.coordinates(b, c.degree) for b in basis]
        width = len(a.basis(c.degree))
        r_got, r_exp = rank(got, width), rank(expected, width)
        ok = r_got == r_exp == rank(got + expected, width)
        shown = "span(" + ", ".join(a.format(b) for b in basis) + ")"
        exp_text = "span(" + ", ".join(ast.print_item(i) for i in c.span) + ")"
        self.record(st, exp_text, shown, ok)


def _b(x: bool) -> str:
    return "true" if x else "false"


def evaluate(tree: ast.ScenarioAST, registry: Callable[[str], sp.SpaceModel] | None = None,
             label: str | None = None) -> ScenarioReport:
    start = time.perf_counter()
    ev = Evaluator(label or tree.file, registry)
    ev.run(tree)
    return ScenarioReport(label or tree.file, ev.records, time.perf_counter() - start)


def run_text(text: str, file: str = "<input>") -> ScenarioReport:
    return evaluate(parse(text, file))


def run_file(path: str | Path, label: str | None = None) -> ScenarioReport:
    path = Path(path)
    name = label or str(path)
    text = path.read_text(encoding="utf-8")
    return evaluate(parse(text, name), label=name)
