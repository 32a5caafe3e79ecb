"""Named spaces with their class catalogs.

Every space answers the same small set of questions, whatever engine sits
underneath: resolve a symbol to a class, integrate a class, compare two
classes, and turn a class into a coordinate vector for cone work.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .. import algebra as alg
from ..algebra import (AlgebraHom, ClassExpr, GradedAlgebra, GroupAction, Presentation,
                       build_algebra, gens, make_monomial, monomial_degree, normal_form,
                       rename, substitute, tensor_product)
from ..exact import format_rational
from . import level, ytilde

SPACE_NAMES = ("A1", "X1", "A2", "A1xA2", "Vcover", "Ytilde", "A3_H4", "SP_level")
H4_COLUMNS = ("L^2", "LM", "M^2", "B2")


class ModelError(Exception):
    pass


class UnknownSpace(ModelError):
    pass


class UnknownSymbol(ModelError):
    pass


class MissingPullback(ModelError):
    pass


class NotComputable(ModelError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    expr: ClassExpr
    degree: int
    source: str


class SpaceModel:
    """Common interface; subclasses fill in the engine-specific parts."""

    kind = "abstract"

    def __init__(self, name: str, degrees: Mapping[str, int], top_degree: int,
                 catalog: Sequence[CatalogEntry] = (), pullbacks: Mapping[str, str] | None = None,
                 pushforward_divisor: Fraction | None = None, description: str = ""):
        self.name = name
        self.degrees = dict(degrees)
        self.top_degree = top_degree
        self.catalog = {e.name: e for e in catalog}
        clash = set(self.catalog) & set(self.degrees)
        if clash:
            raise ModelError(f"catalog names shadow generators: {sorted(clash)}")
        self.pullbacks = dict(pullbacks or {})
        self.pushforward_divisor = pushforward_divisor
        self.description = description
        self.action: GroupAction | None = None
        self.action_algebra: GradedAlgebra | None = None

    # symbols -------------------------------------------------------------
    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(self.degrees)

    def lookup(self, symbol: str) -> ClassExpr | None:
        if symbol in self.degrees:
            return ClassExpr.gen(symbol)
        entry = self.catalog.get(symbol)
        return entry.expr if entry is not None else None

    def resolve(self, symbol: str) -> ClassExpr:
        x = self.lookup(symbol)
        if x is None:
            raise UnknownSymbol(f"{symbol!r} is not a generator or catalog class of {self.name}")
        return x

    def degree(self, x: ClassExpr) -> int | None:
        return x.homogeneous_degree(self.degrees)

    def format(self, x: ClassExpr) -> str:
        return x.format()

    def _check(self, x: ClassExpr) -> None:
        unknown = x.generators() - set(self.degrees)
        if unknown:
            raise UnknownSymbol(f"unknown symbol(s) in {self.name}: {', '.join(sorted(unknown))}")

    # engine-specific -------------------------------------------------------
    def integrate(self, x: ClassExpr) -> Fraction:
        raise NotImplementedError

    def equal(self, a: ClassExpr, b: ClassExpr) -> bool:
        raise NotImplementedError

    def vector(self, x: ClassExpr) -> tuple[Fraction, ...]:
        raise NotComputable(f"{self.name} has no coordinate vectors")

    def pair(self, cls: ClassExpr, other: ClassExpr) -> Fraction:
        return self.integrate(cls * other)

    def catalog_json(self) -> list[dict]:
        return [{"name": e.name, "degree": e.degree, "expression": self.format(e.expr),
                 "source": e.source} for e in self.catalog.values()]


class AlgebraSpace(SpaceModel):
    kind = "algebra"

    def __init__(self, name: str, algebra: GradedAlgebra, catalog: Sequence[CatalogEntry] = (),
                 **kw):
        super().__init__(name, algebra.degree_of, algebra.top_degree, catalog, **kw)
        self.algebra = algebra

    def format(self, x):
        return self.algebra.format(x)

    def integrate(self, x):
        self._check(x)
        return alg.integrate(self.algebra, x)

    def normal_form(self, x):
        self._check(x)
        return normal_form(self.algebra, x)

    def equal(self, a, b):
        return self.normal_form(a - b).is_zero()

    def vector(self, x):
        self._check(x)
        d = self.degree(x)
        if d is None:
            raise NotComputable(f"{x} is not homogeneous")
        return self.algebra.coordinates(self.normal_form(x), d)

    def pair(self, cls, other):
        self._check(cls)
        self._check(other)
        return alg.intersection_number(self.algebra, [cls, other])


class TrilinearModel(SpaceModel):
    kind = "trilinear"

    def __init__(self, name: str, space: ytilde.TrilinearSpace, catalog=(), **kw):
        super().__init__(name, {b: 1 for b in space.basis}, 3, catalog, **kw)
        self.space = space

    def integrate(self, x):
        self._check(x)
        return self.space.evaluate_cubic(x.component(3, self.degrees))

    def _component_zero(self, x: ClassExpr, d: int) -> bool:
        part = x.component(d, self.degrees)
        if d in (0, 1):
            return part.is_zero()
        if d == 2:
            return all(v == 0 for v in self.space.quadratic_functional(part))
        if d == 3:
            return self.space.evaluate_cubic(part) == 0
        return True  # above the top degree everything vanishes

    def equal(self, a, b):
        diff = a - b
        self._check(diff)
        return all(self._component_zero(diff, d) for d in diff.degrees(self.degrees) | {0})

    def vector(self, x):
        self._check(x)
        d = self.degree(x)
        if d == 1:
            return tuple(x.coefficient(((b, 1),)) for b in self.space.basis)
        if d == 2:
            return self.space.quadratic_functional(x)
        raise NotComputable("only divisor and quadratic classes have vectors on the threefold")

    def pair(self, cls, other):
        return self.integrate(cls * other)


_QUADRATIC_COORDS = {
    # (L^2, LM, M^2, B2) coordinates of the degree-2 monomials in L, D, B2
    make_monomial({"L": 2}): (1, 0, 0, 0),
    make_monomial({"L": 1, "D": 1}): (12, -1, 0, 0),
    make_monomial({"D": 2}): (144, -24, 1, 0),
    make_monomial({"B2": 1}): (0, 0, 0, 1),
}


class PairingSpace(SpaceModel):
    """Codimension-two classes paired against named surfaces by a table.

    Divisors L, D (with M = 12L - D) and the codimension-two class B2 span the
    column side; each surface symbol carries its row of pairings with
    (L^2, LM, M^2, B2).  The threefold ``sigma3`` carries only the two
    products with L.D^2 and L.B2 that are known.
    """

    kind = "pairing"

    def __init__(self, name, rows: Mapping[str, Sequence[Fraction]],
                 row_sources: Mapping[str, str], threefold_values: Mapping[str, Mapping],
                 catalog=(), **kw):
        degrees = {"L": 1, "D": 1, "B2": 2}
        for t in threefold_values:
            degrees[t] = 3
        for r in rows:
            degrees[r] = 4
        super().__init__(name, degrees, 6, catalog, **kw)
        self.rows = {k: tuple(Fraction(x) for x in v) for k, v in rows.items()}
        self.row_sources = dict(row_sources)
        self.threefold_values = {k: dict(v) for k, v in threefold_values.items()}

    @staticmethod
    def quadratic_coords(q: ClassExpr) -> tuple[Fraction, ...]:
        acc = [Fraction(0)] * 4
        for m, c in q.items():
            coords = _QUADRATIC_COORDS.get(m)
            if coords is None:
                raise NotComputable(f"{alg.format_monomial(m)} is not a degree-2 class in L, D, B2")
            for i, v in enumerate(coords):
                acc[i] += c * v
        return tuple(acc)

    def surface_row(self, x: ClassExpr) -> tuple[Fraction, ...]:
        acc = [Fraction(0)] * 4
        for m, c in x.items():
            if len(m) != 1 or m[0][0] not in self.rows or m[0][1] != 1:
                raise NotComputable(f"{alg.format_monomial(m)} is not a surface class")
            for i, v in enumerate(self.rows[m[0][0]]):
                acc[i] += c * v
        return tuple(acc)

    def _integrate_monomial(self, m) -> Fraction:
        surfaces = [(n, e) for n, e in m if self.degrees[n] == 4]
        threefolds = [(n, e) for n, e in m if self.degrees[n] == 3]
        if len(surfaces) + len(threefolds) != 1 or (surfaces + threefolds)[0][1] != 1:
            raise NotComputable(
                f"{alg.format_monomial(m)}: products are only known for one surface or "
                "the threefold times classes from L, D, B2")
        rest = tuple((n, e) for n, e in m if self.degrees[n] < 3)
        if surfaces:
            coords = self.quadratic_coords(ClassExpr.monomial(rest))
            row = self.rows[surfaces[0][0]]
            return sum((a * b for a, b in zip(coords, row)), Fraction(0))
        key = make_monomial(rest)
        table = self.threefold_values[threefolds[0][0]]
        if key not in table:
            raise NotComputable(f"{alg.format_monomial(m)} is not among the known products")
        return table[key]

    def integrate(self, x):
        self._check(x)
        total = Fraction(0)
        for m, c in x.items():
            if monomial_degree(m, self.degrees) != 6:
                continue
            total += c * self._integrate_monomial(m)
        return total

    def vector(self, x):
        self._check(x)
        d = self.degree(x)
        if d == 4:
            return self.surface_row(x)
        if d == 2:
            return self.quadratic_coords(x)
        raise NotComputable(f"{self.format(x)} is neither a surface nor a codimension-two class")

    def equal(self, a, b):
        diff = a - b
        self._check(diff)
        if diff.is_zero():
            return True
        d = self.degree(diff)
        if d == 0:
            return False
        if d in (2, 4):
            return all(v == 0 for v in self.vector(diff))
        if d == 6:
            return self.integrate(diff) == 0
        raise NotComputable(f"cannot compare classes of degree {d} in {self.name}")


class LevelSpace(SpaceModel):
    """Intersection numbers on S_P computed on a level cover and divided down."""

    kind = "level"

    def __init__(self, name, catalog=(), **kw):
        super().__init__(name, {"L": 1, "D": 1, "B2": 2}, 2, catalog, **kw)
        self.restricted = level.restricted_classes()

    def integrate(self, x):
        self._check(x)
        c, a, b = level.stabilizer_order_symbolic()
        total = level.const(0)
        for m, coeff in x.items():
            if monomial_degree(m, self.degrees) != 2:
                continue
            term = level.const(coeff)
            for name, e in m:
                for _ in range(e):
                    term = term * self.restricted[name]
            total = total + term
        return level.divide_constant(total.integral(), c, a, b)

    def equal(self, a, b):
        diff = a - b
        self._check(diff)
        d = self.degree(diff)
        if diff.is_zero():
            return True
        if d == 2:
            return self.integrate(diff) == 0
        raise NotComputable("only numbers of degree-2 classes are available on S_P")

    def row(self) -> tuple[Fraction, ...]:
        L, D, B2 = gens("L", "D", "B2")
        M = 12 * L - D
        return tuple(self.integrate(q) for q in (L * L, L * M, M * M, B2))


def pushforward_row(source: SpaceModel, class_name: str, divisor: Fraction | int = 1
                    ) -> tuple[Fraction, ...]:
    """Pairings of a source class with the pulled-back (L^2, LM, M^2, B2), divided by ``divisor``."""
    if set(source.pullbacks) != set(H4_COLUMNS):
        raise MissingPullback(f"{source.name} does not carry pullbacks of {', '.join(H4_COLUMNS)}")
    if class_name not in source.catalog:
        raise MissingPullback(f"{source.name} has no catalog class {class_name!r}")
    divisor = Fraction(divisor)
    cls = source.catalog[class_name].expr
    return tuple(source.pair(cls, source.resolve(source.pullbacks[col])) / divisor
                 for col in H4_COLUMNS)


# --- concrete spaces ---------------------------------------------------------

def _entry(name, expr, degrees, source):
    d = expr.homogeneous_degree(degrees)
    if d is None:
        raise ModelError(f"catalog class {name} is not homogeneous")
    return CatalogEntry(name, expr, d, source)


def x1_algebra() -> GradedAlgebra:
    L, Z = gens("L", "Z")
    return build_algebra(Presentation.of([("L", 1), ("Z", 1)], [L**2, Z**2 + L * Z], 2,
                                         {make_monomial({"L": 1, "Z": 1}): Fraction(1, 24)}))


def a1_algebra() -> GradedAlgebra:
    return build_algebra(Presentation.of([("L1", 1)], [], 1,
                                         {make_monomial({"L1": 1}): Fraction(1, 24)}))


def a2_algebra() -> GradedAlgebra:
    L2, D2 = gens("L2", "D2")
    return build_algebra(Presentation.of(
        [("L2", 1), ("D2", 1)], [L2**2 * D2, 120 * L2**2 - 22 * L2 * D2 + D2**2], 3,
        {make_monomial({"L2": 3}): Fraction(1, 2880)}))


def _build_x1():
    a = x1_algebra()
    L, Z = gens("L", "Z")
    cat = [_entry("T", Z + L, a.degree_of, "theta divisor trivialized along the zero section")]
    return AlgebraSpace("X1", a, cat, description="universal elliptic curve over the modular curve")


def _build_a1():
    a = a1_algebra()
    return AlgebraSpace("A1", a, [], description="compactified modular curve; L1 has degree 1/24")


def _build_a2():
    a = a2_algebra()
    L2, D2 = gens("L2", "D2")
    d = a.degree_of
    cat = [
        _entry("M2", 12 * L2 - D2, d, "12L2 - D2"),
        _entry("CA", 12 * L2 * (10 * L2 - D2), d, "curve class of A1 times a point"),
        _entry("CF", 12 * L2 * D2, d, "curve class contracted to the Satake boundary"),
        _entry("B22", 6 * L2 * D2, d, "torus rank two locus of the genus-two space"),
    ]
    return AlgebraSpace("A2", a, cat, description="genus-two toroidal compactification")


def _build_a1xa2():
    a = tensor_product(a1_algebra(), a2_algebra(), 1)
    L1, L2, D2 = gens("L1", "L2", "D2")
    M2 = 12 * L2 - D2
    d = a.degree_of
    NL = L1 + L2
    ND = 12 * L1 + D2
    cat = [
        _entry("M2", M2, d, "12L2 - D2"),
        _entry("SDD", 12 * L1 * D2, d, "point of A1 times the boundary divisor"),
        _entry("SDA", 12 * L1 * (5 * L2 - Fraction(1, 2) * D2), d,
               "point of A1 times the surface swept by CA"),
        _entry("SAF", 6 * L2 * D2, d, "A1 times the curve CF, with the involution factor 1/2"),
        _entry("SAA", 12 * L2 * (5 * L2 - Fraction(1, 2) * D2), d,
               "A1 times the curve CA, with the involution factor 1/2"),
        _entry("NL", NL, d, "pullback of L under the product map"),
        _entry("ND", ND, d, "pullback of D under the product map"),
        _entry("NM", 12 * NL - ND, d, "pullback of M = 12L - D"),
        _entry("NB2", (12 * L1 + 6 * L2) * D2, d, "pullback of the torus rank two class"),
    ]
    pull = {"L^2": "NL2", "LM": "NLM", "M^2": "NM2", "B2": "NB2"}
    cat += [
        _entry("NL2", NL * NL, d, "pullback of L^2"),
        _entry("NLM", NL * (12 * NL - ND), d, "pullback of LM"),
        _entry("NM2", (12 * NL - ND) ** 2, d, "pullback of M^2"),
    ]
    space = AlgebraSpace("A1xA2", a, cat, pullbacks=pull, pushforward_divisor=Fraction(1),
                         description="product of the modular curve and the genus-two space")
    return space


def _build_vcover():
    x = x1_algebra()
    x_1 = rename(x, {"L": "L1", "Z": "Z1"})
    x_2 = rename(x, {"L": "L2", "Z": "Z2"})
    a = tensor_product(x_1, x_2, Fraction(1, 2))
    L1, Z1, L2, Z2 = gens("L1", "Z1", "L2", "Z2")
    T1, T2 = Z1 + L1, Z2 + L2
    d = a.degree_of
    LV = L1 + L2
    DV = -2 * (T1 + T2) + 12 * (L1 + L2)
    MV = 12 * LV - DV
    B2V = -24 * (T1 + T2) * (L1 + L2) + 144 * L1 * L2 + 12 * (L1 * Z1 + L2 * Z2)
    cat = [
        _entry("T1", T1, d, "theta divisor on the first factor"),
        _entry("T2", T2, d, "theta divisor on the second factor"),
        _entry("S1", 144 * L1 * L2, d, "fiber over the most degenerate points"),
        _entry("S2", Z1 * Z2, d, "intersection of the two zero sections"),
        _entry("S3", 12 * (L1 * Z1 + L2 * Z2), d, "point on one factor times the other factor"),
        _entry("S4", 12 * (L1 * Z2 + L2 * Z1), d, "fiber on one factor times the zero section"),
        _entry("LV", LV, d, "restriction of L"),
        _entry("DV", DV, d, "restriction of the boundary"),
        _entry("MV", MV, d, "restriction of M"),
        _entry("B2V", B2V, d, "restriction of the torus rank two class"),
        _entry("LV2", LV * LV, d, "restriction of L^2"),
        _entry("LMV", LV * MV, d, "restriction of LM"),
        _entry("MV2", MV * MV, d, "restriction of M^2"),
        _entry("TsqV", 2 * T1 * T2, d, "stated restriction of the square of the theta divisor"),
    ]
    pull = {"L^2": "LV2", "LM": "LMV", "M^2": "MV2", "B2": "B2V"}
    space = AlgebraSpace("Vcover", a, cat, pullbacks=pull, pushforward_divisor=Fraction(2),
                         description="symmetric square of the universal curve, scale 1/2")
    swap = AlgebraHom({"L1": L2, "Z1": Z2, "L2": L1, "Z2": Z1})
    space.action = GroupAction((swap,))
    space.action_algebra = a
    return space


def ytilde_free_algebra(tri: ytilde.TrilinearSpace) -> GradedAlgebra:
    """Free algebra on the divisor basis truncated above degree 3, integrating by the cubic form."""
    return build_algebra(Presentation.of([(b, 1) for b in tri.basis], [], 3,
                                         list(tri.values.items())))


def _build_ytilde():
    tri = ytilde.build_trilinear()
    d = {b: 1 for b in tri.basis}
    y = ytilde
    cat = [
        _entry("T1", y.T1, d, "theta divisor pulled back from the first factor"),
        _entry("T2", y.T2, d, "theta divisor pulled back from the second factor"),
        _entry("P", y.P, d, "Poincare class, trivial on the zero section"),
        _entry("Dm", y.ANTIDIAGONAL, d, "antidiagonal"),
        _entry("E", y.EXCEPTIONAL, d, "exceptional line of the small resolution"),
        _entry("SDp", y.SD_PRIME, d, "surface homologous to S_D inside the stratum"),
        _entry("K31", y.K31, d, "boundary of the stratum, 12L"),
        _entry("LY", ytilde.L, d, "restriction of L"),
        _entry("DY", y.D_RESTRICTED, d, "restriction of the boundary"),
        _entry("MY", y.M_RESTRICTED, d, "restriction of M"),
        _entry("B2Y", y.BETA2_RESTRICTED, d, "restriction of the torus rank two class"),
        _entry("LY2", ytilde.L * ytilde.L, d, "restriction of L^2"),
        _entry("LMY", ytilde.L * y.M_RESTRICTED, d, "restriction of LM"),
        _entry("MY2", y.M_RESTRICTED ** 2, d, "restriction of M^2"),
    ]
    pull = {"L^2": "LY2", "LM": "LMY", "M^2": "MY2", "B2": "B2Y"}
    space = TrilinearModel("Ytilde", tri, cat, pullbacks=pull, pushforward_divisor=Fraction(12),
                           description="small resolution of the fiber square; stacky factor 1/12")
    space.action = GroupAction(tuple(AlgebraHom(g) for g in ytilde.action_generators()))
    space.action_algebra = ytilde_free_algebra(tri)
    return space


def _build_sp_level():
    L, D = gens("L", "D")
    cat = [_entry("M", 12 * L - D, {"L": 1, "D": 1, "B2": 2}, "12L - D")]
    return LevelSpace("SP_level", cat,
                      description="S_P computed on a level-n cover, divided by 16 n^2 t(n)")


# constants imported from the external computation of the genus-three ring
INGESTED = {
    "L*D^2*sigma3": Fraction(1, 48),
    "L*B2*sigma3": Fraction(1, 48),
    "D^2*sigma4": Fraction(13, 48),
    "B2*sigma4": Fraction(3, 16),
}


def _build_a3_h4():
    a1xa2 = build_space("A1xA2")
    vc = build_space("Vcover")
    yt = build_space("Ytilde")
    sp = build_space("SP_level")
    rows: dict[str, tuple[Fraction, ...]] = {}
    sources: dict[str, str] = {}

    def add(name, row, source):
        rows[name] = tuple(row)
        sources[name] = source

    add("SA", pushforward_row(a1xa2, "SDA", 1), "image of SDA from the product")
    add("SF", pushforward_row(a1xa2, "SAF", 1), "image of SAF from the product")
    add("SD", pushforward_row(a1xa2, "SDD", 1), "image of SDD from the product")
    add("SAAimg", pushforward_row(a1xa2, "SAA", 1), "image of SAA from the product")
    add("K31", pushforward_row(yt, "K31", 12), "12L on the resolved stratum, stacky 1/12")
    add("SDp", pushforward_row(yt, "SDp", 12), "S_D' on the resolved stratum, stacky 1/12")
    for i in range(1, 5):
        add(f"fS{i}", pushforward_row(vc, f"S{i}", 2), f"image of S{i} from the V-cover, divided by 2")
    add("SP", sp.row(), "level-cover computation")
    # sigma4: L restricts trivially to the torus rank three locus that contains it
    s4 = (Fraction(0), Fraction(0), INGESTED["D^2*sigma4"], INGESTED["B2*sigma4"])
    add("sigma4", s4, "ingested constants D^2.sigma4, B2.sigma4; L trivial on it")

    L, D, B2 = gens("L", "D", "B2")
    M = 12 * L - D
    deg = {"L": 1, "D": 1, "B2": 2, "sigma3": 3, **{r: 4 for r in rows}}
    sigma4, K31 = gens("sigma4", "K31")
    cat = [
        _entry("M", M, deg, "12L - D"),
        _entry("F1", -72 * L * L + 12 * L * M + 3 * M * M + B2, deg, "first candidate nef class"),
        _entry("F2", 72 * L * L - 8 * L * M + M * M - B2, deg, "second candidate nef class"),
        _entry("Hyp3", 9 * L - D, deg, "hyperelliptic locus divisor class"),
        _entry("C4", sigma4 - K31, deg, "sigma4 minus the K3+1 stratum"),
    ]
    three = {"sigma3": {make_monomial({"L": 1, "D": 2}): INGESTED["L*D^2*sigma3"],
                        make_monomial({"L": 1, "B2": 1}): INGESTED["L*B2*sigma3"]}}
    return PairingSpace("A3_H4", rows, sources, three, cat,
                        description="degree-two classes of the genus-three space against surfaces")


_BUILDERS = {
    "A1": _build_a1, "X1": _build_x1, "A2": _build_a2, "A1xA2": _build_a1xa2,
    "Vcover": _build_vcover, "Ytilde": _build_ytilde, "A3_H4": _build_a3_h4,
    "SP_level": _build_sp_level,
}


@lru_cache(maxsize=None)
def build_space(name: str) -> SpaceModel:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownSpace(f"unknown space {name!r}; known: {', '.join(SPACE_NAMES)}") from None
    return builder()


def ytilde_triple(c1: ClassExpr, c2: ClassExpr, c3: ClassExpr, stacky: bool = False) -> Fraction:
    space = build_space("Ytilde").space
    v = space.triple(c1, c2, c3)
    return v * ytilde.STACKY_FACTOR if stacky else v


def ytilde_pair_quadratic(q: ClassExpr, d: ClassExpr, stacky: bool = False) -> Fraction:
    space = build_space("Ytilde").space
    v = space.pair_quadratic(q, d)
    return v * ytilde.STACKY_FACTOR if stacky else v


def sp_pairing_row() -> dict[str, Fraction]:
    return level.sp_pairing_row()


def fixed_by_action(space: SpaceModel, x: ClassExpr) -> bool:
    if space.action is None:
        raise NotComputable(f"{space.name} carries no group action")
    return all(space.equal(substitute(h, x), x) for h in space.action.generators)


def invariant_classes(space: SpaceModel, degree: int) -> list[ClassExpr]:
    if space.action is None or space.action_algebra is None:
        raise NotComputable(f"{space.name} carries no group action")
    return alg.invariant_subspace(space.action_algebra, space.action, degree)


# strata of the genus-three toroidal compactification: (name, dimension, cone generators)
STRATA = (
    ("sigma_1", 5, "x1^2"),
    ("sigma_1+1", 4, "x1^2, x2^2"),
    ("sigma_K3", 3, "x1^2, x2^2, (x1-x2)^2"),
    ("sigma_1+1+1", 3, "x1^2, x2^2, x3^2"),
    ("sigma_K3+1", 2, "x1^2, x2^2, x3^2, (x1-x2)^2"),
    ("sigma_C4", 2, "x1^2, x2^2, (x1-x3)^2, (x2-x3)^2"),
    ("sigma_K4-1", 1, "x1^2, x2^2, x3^2, (x1-x2)^2, (x1-x3)^2"),
    ("sigma_K4", 0, "x1^2, x2^2, x3^2, (x1-x2)^2, (x1-x3)^2, (x2-x3)^2"),
)


def catalog_dump(names: Sequence[str] = SPACE_NAMES) -> str:
    out = {}
    for n in names:
        s = build_space(n)
        entry = {"kind": s.kind, "generators": {g: d for g, d in s.degrees.items()},
                 "top_degree": s.top_degree, "catalog": s.catalog_json()}
        if isinstance(s, PairingSpace):
            entry["rows"] = {k: [format_rational(x) for x in v] for k, v in s.rows.items()}
            entry["row_sources"] = s.row_sources
        out[n] = entry
    out["strata"] = [{"name": a, "dimension": b, "cone": c} for a, b, c in STRATA]
    return json.dumps(out, indent=2, sort_keys=True)
