"""Finitely presented graded commutative algebras over Q.

Each graded piece is handled by brute force: enumerate the monomials of that
degree, span the multiples of the relations, row reduce.  The rings in this
package have at most four generators and top degree at most four, so this
stays tiny and fully deterministic.

Monomial order
--------------
Within one degree, monomials are ordered by their exponent vectors (over the
declared generator order) ascending lexicographically.  For generators
``L, Z`` in degree two that is ``Z^2 < L*Z < L^2``.  Row reduction pivots on
the first monomial with nonzero coefficient, so residue (basis) monomials are
the ones late in this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .exact import format_rational, kernel, rref, solve

Monomial = tuple[tuple[str, int], ...]

ONE: Monomial = ()


class AlgebraError(Exception):
    pass


class NonHomogeneousRelation(AlgebraError):
    pass


class InconsistentIntegral(AlgebraError):
    pass


class UnderdeterminedIntegral(AlgebraError):
    pass


class DuplicateGenerator(AlgebraError):
    pass


class UnknownGenerator(AlgebraError):
    pass


class NameCollision(AlgebraError):
    pass


class UnmappedGenerator(AlgebraError):
    pass


class ActionNotDegreePreserving(AlgebraError):
    pass


def make_monomial(exponents: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    acc: dict[str, int] = {}
    for name, e in items:
        if e < 0:
            raise ValueError(f"negative exponent for {name}")
        if e:
            acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for name, e in b:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def monomial_degree(m: Monomial, degrees: Mapping[str, int]) -> int:
    try:
        return sum(degrees[name] * e for name, e in m)
    except KeyError as exc:
        raise UnknownGenerator(f"unknown generator {exc.args[0]!r}") from None


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


class ClassExpr:
    """A polynomial with rational coefficients in named generators.

    Immutable; zero coefficients are never stored.  Arithmetic is plain
    polynomial arithmetic -- reduction modulo relations is the algebra's job.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def gen(cls, name: str) -> ClassExpr:
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, value: Fraction | int) -> ClassExpr:
        return cls({ONE: value})

    @classmethod
    def monomial(cls, m: Monomial, coeff: Fraction | int = 1) -> ClassExpr:
        return cls({m: coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def generators(self) -> set[str]:
        return {name for m in self._terms for name, _ in m}

    def degrees(self, degrees: Mapping[str, int]) -> set[int]:
        return {monomial_degree(m, degrees) for m in self._terms}

    def homogeneous_degree(self, degrees: Mapping[str, int]) -> int | None:
        """The common degree of all terms, ``None`` for inhomogeneous; zero has degree 0."""
        ds = self.degrees(degrees)
        if not ds:
            return 0
        return ds.pop() if len(ds) == 1 else None

    def component(self, degree: int, degrees: Mapping[str, int]) -> ClassExpr:
        return ClassExpr({m: c for m, c in self._terms.items()
                          if monomial_degree(m, degrees) == degree})

    def constant_value(self) -> Fraction | None:
        """The value if this is a pure constant (or zero), else ``None``."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {ONE}:
            return self._terms[ONE]
        return None

    def _coerce(self, other) -> ClassExpr:
        if isinstance(other, ClassExpr):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ClassExpr.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return ClassExpr(acc)

    __radd__ = __add__

    def __neg__(self):
        return ClassExpr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ClassExpr({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_product(m1, m2)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return ClassExpr(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ClassExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self, key=None) -> list[tuple[Monomial, Fraction]]:
        if key is None:
            key = lambda m: (sum(e for _, e in m), m)  # noqa: E731
        return sorted(self._terms.items(), key=lambda item: key(item[0]))

    def format(self, key=None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms(key)):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = format_rational(a)
            elif a == 1:
                body = format_monomial(m)
            else:
                body = f"{format_rational(a)}*{format_monomial(m)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ClassExpr({self.format()!r})"


def gens(*names: str) -> tuple[ClassExpr, ...]:
    return tuple(ClassExpr.gen(n) for n in names)


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int = 1


@dataclass(frozen=True)
class Presentation:
    generators: tuple[GeneratorSpec, ...]
    relations: tuple[ClassExpr, ...]
    top_degree: int
    integral_spec: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def of(cls, generators: Sequence[tuple[str, int] | GeneratorSpec],
           relations: Sequence[ClassExpr], top_degree: int,
           integral: Mapping[Monomial, Fraction | int] | Sequence[tuple[Monomial, Fraction | int]]):
        gs = tuple(g if isinstance(g, GeneratorSpec) else GeneratorSpec(*g) for g in generators)
        items = integral.items() if isinstance(integral, Mapping) else integral
        return cls(gs, tuple(relations), top_degree,
                   tuple((m, Fraction(v)) for m, v in items))


def _exponent_vectors(weights: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given weighted degree, ascending lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == len(weights):
            if remaining == 0:
                out.append(prefix)
            return
        w = weights[i]
        for e in range(remaining // w + 1):
            rec(i + 1, remaining - e * w, prefix + (e,))

    rec(0, degree, ())
    out.sort()
    return out


@dataclass(frozen=True)
class _DegreePiece:
    monomials: tuple[Monomial, ...]
    basis: tuple[Monomial, ...]
    reduction: Mapping[Monomial, tuple[Fraction, ...]]


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    presentation: Presentation
    pieces: tuple[_DegreePiece, ...]
    integral_values: tuple[Fraction, ...]
    degree_of: Mapping[str, int] = field(repr=False)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.presentation.generators)

    @property
    def top_degree(self) -> int:
        return self.presentation.top_degree

    def basis(self, degree: int) -> tuple[Monomial, ...]:
        if degree < 0 or degree > self.top_degree:
            return ()
        return self.pieces[degree].basis

    def dimensions(self) -> list[int]:
        return [len(p.basis) for p in self.pieces]

    def order_key(self, m: Monomial):
        """Sort key realizing the canonical graded order of this algebra."""
        ex = dict(m)
        vec = tuple(ex.get(n, 0) for n in self.generator_names)
        return (monomial_degree(m, self.degree_of), vec)

    def coordinates(self, x: ClassExpr, degree: int) -> tuple[Fraction, ...]:
        """Coordinates of the degree-``degree`` component of x in the residue basis."""
        piece = self.pieces[degree] if 0 <= degree <= self.top_degree else None
        if piece is None:
            return ()
        acc = [Fraction(0)] * len(piece.basis)
        for m, c in x.items():
            if monomial_degree(m, self.degree_of) != degree:
                continue
            for i, v in enumerate(piece.reduction[m]):
                if v:
                    acc[i] += c * v
        return tuple(acc)

    def from_coordinates(self, coords: Sequence[Fraction], degree: int) -> ClassExpr:
        return ClassExpr(dict(zip(self.basis(degree), coords)))

    def format(self, x: ClassExpr) -> str:
        return x.format(key=self.order_key)

    def check_names(self, x: ClassExpr) -> None:
        unknown = x.generators() - set(self.degree_of)
        if unknown:
            raise UnknownGenerator(f"unknown generator(s): {', '.join(sorted(unknown))}")


def _enumerate_piece(names, weights, degree) -> tuple[Monomial, ...]:
    return tuple(make_monomial(zip(names, ev)) for ev in _exponent_vectors(weights, degree))


def build_algebra(p: Presentation) -> GradedAlgebra:
    names = [g.name for g in p.generators]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateGenerator(f"duplicate generator(s): {', '.join(dup)}")
    for g in p.generators:
        if g.degree < 1:
            raise ValueError(f"generator {g.name} must have degree >= 1")
    if p.top_degree < 0:
        raise ValueError("top degree must be nonnegative")
    if not p.integral_spec:
        raise UnderdeterminedIntegral("integral specification is empty")
    degree_of = {g.name: g.degree for g in p.generators}
    weights = [g.degree for g in p.generators]

    rel_degrees = []
    for r in p.relations:
        unknown = r.generators() - set(names)
        if unknown:
            raise UnknownGenerator(f"relation {r} uses unknown generator(s) {sorted(unknown)}")
        d = r.homogeneous_degree(degree_of)
        if d is None:
            raise NonHomogeneousRelation(f"relation {r} is not homogeneous")
        if r.is_zero():
            continue
        rel_degrees.append((r, d))

    pieces = []
    for d in range(p.top_degree + 1):
        monos = _enumerate_piece(names, weights, d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for r, rd in rel_degrees:
            if rd > d:
                continue
            for m in _enumerate_piece(names, weights, d - rd):
                row = [Fraction(0)] * len(monos)
                for rm, c in r.items():
                    row[index[monomial_product(m, rm)]] += c
                rows.append(row)
        red, pivots = rref(rows, len(monos))
        free = [i for i in range(len(monos)) if i not in set(pivots)]
        basis = tuple(monos[i] for i in free)
        reduction: dict[Monomial, tuple[Fraction, ...]] = {}
        for i in free:
            reduction[monos[i]] = tuple(Fraction(int(j == i)) for j in free)
        for row, piv in zip(red, pivots):
            reduction[monos[piv]] = tuple(-row[j] for j in free)
        pieces.append(_DegreePiece(monos, basis, reduction))

    top = pieces[p.top_degree] if p.top_degree < len(pieces) else None
    ntop = len(top.basis)
    eq_rows, eq_rhs = [], []
    for m, v in p.integral_spec:
        for name, _ in m:
            if name not in degree_of:
                raise UnknownGenerator(f"integral monomial uses unknown generator {name!r}")
        if monomial_degree(m, degree_of) != p.top_degree:
            raise InconsistentIntegral(
                f"integral given on {format_monomial(m)}, which is not of top degree {p.top_degree}")
        eq_rows.append(list(top.reduction[m]))
        eq_rhs.append(v)
    sol, rk = solve(eq_rows, eq_rhs, ntop)
    if sol is None:
        raise InconsistentIntegral(
            "integral specification contradicts the relations "
            "(some relation multiple would integrate to a nonzero value)")
    if rk < ntop:
        raise UnderdeterminedIntegral(
            f"integral specification fixes {rk} of {ntop} top-degree basis values")
    return GradedAlgebra(p, tuple(pieces), tuple(sol), degree_of)


def normal_form(a: GradedAlgebra, x: ClassExpr) -> ClassExpr:
    a.check_names(x)
    acc: dict[Monomial, Fraction] = {}
    for m, c in x.items():
        d = monomial_degree(m, a.degree_of)
        if d > a.top_degree:
            continue
        piece = a.pieces[d]
        for b, v in zip(piece.basis, piece.reduction[m]):
            if v:
                acc[b] = acc.get(b, Fraction(0)) + c * v
    return ClassExpr(acc)


def integrate(a: GradedAlgebra, x: ClassExpr) -> Fraction:
    a.check_names(x)
    coords = a.coordinates(x, a.top_degree)
    return sum((c * v for c, v in zip(coords, a.integral_values)), Fraction(0))


def intersection_number(a: GradedAlgebra, factors: Sequence[ClassExpr]) -> Fraction:
    if not factors:
        raise ValueError("intersection_number needs at least one factor")
    prod = factors[0]
    for f in factors[1:]:
        # reduce as we go to keep intermediate expansions small
        prod = normal_form(a, prod * f)
    return integrate(a, prod)


def pairing_matrix(a: GradedAlgebra, rows: Sequence[ClassExpr],
                   cols: Sequence[ClassExpr]) -> list[list[Fraction]]:
    return [[intersection_number(a, [r, c]) for c in cols] for r in rows]


def rename(a: GradedAlgebra, mapping: Mapping[str, str]) -> GradedAlgebra:
    """Copy of ``a`` with generators renamed (names not in ``mapping`` kept)."""
    hom = AlgebraHom({g: ClassExpr.gen(mapping.get(g, g)) for g in a.generator_names})
    p = a.presentation
    gens_ = tuple(GeneratorSpec(mapping.get(g.name, g.name), g.degree) for g in p.generators)
    rels = tuple(substitute(hom, r) for r in p.relations)
    integral = tuple((next(iter(substitute(hom, ClassExpr.monomial(m)).terms)), v)
                     for m, v in p.integral_spec)
    return build_algebra(Presentation(gens_, rels, p.top_degree, integral))


def tensor_product(a: GradedAlgebra, b: GradedAlgebra, scale: Fraction | int = 1) -> GradedAlgebra:
    """Tensor product with integral ``scale * (integral over a) * (integral over b)``."""
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    clash = set(a.generator_names) & set(b.generator_names)
    if clash:
        raise NameCollision(f"generator names shared by both factors: {', '.join(sorted(clash))}")
    pa, pb = a.presentation, b.presentation
    top = pa.top_degree + pb.top_degree
    truncation = []
    for alg, p in ((a, pa), (b, pb)):
        names = [g.name for g in p.generators]
        weights = [g.degree for g in p.generators]
        for d in range(p.top_degree + 1, top + 1):
            truncation.extend(ClassExpr.monomial(m) for m in _enumerate_piece(names, weights, d))
    integral = []
    for ma, va in zip(a.basis(pa.top_degree), a.integral_values):
        for mb, vb in zip(b.basis(pb.top_degree), b.integral_values):
            integral.append((monomial_product(ma, mb), scale * va * vb))
    if not integral:
        raise UnderdeterminedIntegral("a factor has a zero top-degree piece")
    p = Presentation(pa.generators + pb.generators,
                     pa.relations + pb.relations + tuple(truncation), top, tuple(integral))
    return build_algebra(p)


@dataclass(frozen=True)
class AlgebraHom:
    """Substitution of generators by classes."""

    images: Mapping[str, ClassExpr]

    @classmethod
    def identity(cls, names: Iterable[str]) -> AlgebraHom:
        return cls({n: ClassExpr.gen(n) for n in names})

    def check_degrees(self, source: Mapping[str, int], target: Mapping[str, int]) -> None:
        for name, img in self.images.items():
            d = img.homogeneous_degree(target)
            if img.is_zero():
                continue
            if d != source[name]:
                raise ActionNotDegreePreserving(
                    f"image of {name} is {img}, not homogeneous of degree {source[name]}")


def substitute(h: AlgebraHom, x: ClassExpr) -> ClassExpr:
    result = ClassExpr()
    cache: dict[tuple[str, int], ClassExpr] = {}
    for m, c in x.items():
        term = ClassExpr.const(c)
        for name, e in m:
            if name not in h.images:
                raise UnmappedGenerator(f"generator {name!r} has no image")
            key = (name, e)
            if key not in cache:
                cache[key] = h.images[name] ** e
            term = term * cache[key]
        result = result + term
    return result


@dataclass(frozen=True)
class GroupAction:
    generators: tuple[AlgebraHom, ...]


def invariant_subspace(a: GradedAlgebra, g: GroupAction, degree: int) -> list[ClassExpr]:
    """Echelon basis of the classes of the given degree fixed by every action generator."""
    basis = a.basis(degree)
    n = len(basis)
    for h in g.generators:
        missing = set(a.generator_names) - set(h.images)
        if missing:
            raise UnmappedGenerator(f"action leaves {sorted(missing)} unmapped")
        h.check_degrees(a.degree_of, a.degree_of)
    rows: list[list[Fraction]] = []
    for h in g.generators:
        images = []
        for m in basis:
            img = normal_form(a, substitute(h, ClassExpr.monomial(m)))
            if not img.is_zero() and img.homogeneous_degree(a.degree_of) != degree:
                raise ActionNotDegreePreserving(f"image of {format_monomial(m)} leaves degree {degree}")
            images.append(a.coordinates(img, degree))
        # row i of (gamma - id): sum_j images[j][i] x_j - x_i
        for i in range(n):
            rows.append([images[j][i] - (1 if i == j else 0) for j in range(n)])
    ker = kernel(rows, n)
    echelon, _ = rref(ker, n)
    return [a.from_coordinates(v, degree) for v in echelon]
