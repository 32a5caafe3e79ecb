"""Trilinear model of the small resolution of the fiber square of the universal curve.

Only the symmetric cubic form on the four-dimensional divisor space is known,
so the threefold is modeled as exactly that: 20 monomial values on the basis
``L, Z1, Z2, Dt`` (``Dt`` is the resolved diagonal).  The values are solved
from a table of triple products in which several rows are labeled by more
than one cycle expression; every labeling yields its own equations and the
whole system must be consistent and fully determined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from ..algebra import ClassExpr, Monomial, make_monomial, monomial_degree
from ..exact import solve

BASIS = ("L", "Z1", "Z2", "Dt")
STACKY_FACTOR = Fraction(1, 12)


class TrilinearError(Exception):
    pass


class NonDivisorClass(TrilinearError):
    pass


class DegreeMismatch(TrilinearError):
    pass


class InconsistentTable(TrilinearError):
    pass


L, Z1, Z2, Dt = (ClassExpr.gen(n) for n in BASIS)
T1 = Z1 + L
T2 = Z2 + L

# rows: every cycle expression naming the row; columns: the divisor classes
_F = Fraction
ROW_LABELS: list[tuple[list[ClassExpr], list[Fraction]]] = [
    ([L * T1, T1 * T1, L * Z1, -(Z1 * Z1)], [_F(0), _F(0), _F(0), _F(1, 24), _F(1, 24), _F(1, 24)]),
    ([L * T2, T2 * T2, L * Z2, -(Z2 * Z2)], [_F(0), _F(1, 24), _F(1, 24), _F(0), _F(0), _F(1, 24)]),
    ([L * Dt], [_F(0), _F(1, 24), _F(1, 24), _F(1, 24), _F(1, 24), _F(0)]),
    ([Z1 * Z2, Z1 * Dt, Z2 * Dt], [_F(1, 24), _F(-1, 24), _F(0), _F(-1, 24), _F(0), _F(-1, 24)]),
    ([Dt * Dt], [_F(0), _F(-1, 24), _F(-1, 24), _F(-1, 24), _F(-1, 24), _F(-1, 2)]),
]
COLUMNS: list[tuple[str, ClassExpr]] = [
    ("L", L), ("Z1", Z1), ("T1", T1), ("Z2", Z2), ("T2", T2), ("Dt", Dt),
]

_DEG = {n: 1 for n in BASIS}


def cubic_monomials() -> list[Monomial]:
    return [make_monomial([(n, 1) for n in combo])
            for combo in combinations_with_replacement(BASIS, 3)]


@dataclass(frozen=True)
class TrilinearSpace:
    """A symmetric trilinear form on a named divisor basis."""

    basis: tuple[str, ...]
    values: Mapping[Monomial, Fraction]

    def check_divisor(self, c: ClassExpr) -> None:
        unknown = c.generators() - set(self.basis)
        if unknown:
            raise NonDivisorClass(f"{c} uses symbols outside the divisor basis: {sorted(unknown)}")
        if c.is_zero():
            return
        if c.homogeneous_degree(_DEG) != 1:
            raise NonDivisorClass(f"{c} is not a divisor class")

    def evaluate_cubic(self, x: ClassExpr) -> Fraction:
        """Value of the form on a homogeneous cubic polynomial in the basis."""
        unknown = x.generators() - set(self.basis)
        if unknown:
            raise DegreeMismatch(f"{x} uses symbols outside the divisor basis: {sorted(unknown)}")
        total = Fraction(0)
        for m, c in x.items():
            if monomial_degree(m, _DEG) != 3:
                raise DegreeMismatch(f"term {m} of {x} is not cubic")
            total += c * self.values[m]
        return total

    def triple(self, c1: ClassExpr, c2: ClassExpr, c3: ClassExpr) -> Fraction:
        for c in (c1, c2, c3):
            self.check_divisor(c)
        return self.evaluate_cubic(c1 * c2 * c3)

    def pair_quadratic(self, q: ClassExpr, d: ClassExpr) -> Fraction:
        self.check_divisor(d)
        unknown = q.generators() - set(self.basis)
        if unknown:
            raise DegreeMismatch(f"{q} uses symbols outside the divisor basis: {sorted(unknown)}")
        if not q.is_zero() and q.homogeneous_degree(_DEG) != 2:
            raise DegreeMismatch(f"{q} is not a quadratic class")
        return self.evaluate_cubic(q * d)

    def quadratic_functional(self, q: ClassExpr) -> tuple[Fraction, ...]:
        """Pairings of a quadratic class against the divisor basis (its numerical class)."""
        return tuple(self.pair_quadratic(q, ClassExpr.gen(b)) for b in self.basis)


def solve_table(rows=ROW_LABELS, columns=COLUMNS) -> dict[Monomial, Fraction]:
    """Solve the 20 cubic values from the labeled table; audit consistency."""
    monos = cubic_monomials()
    index = {m: i for i, m in enumerate(monos)}
    eqs, rhs = [], []
    for labels, values in rows:
        for label in labels:
            for (_, col), value in zip(columns, values):
                row = [Fraction(0)] * len(monos)
                for m, c in (label * col).items():
                    row[index[m]] += c
                eqs.append(row)
                rhs.append(value)
    sol, rk = solve(eqs, rhs, len(monos))
    if sol is None:
        raise InconsistentTable("table entries contradict each other")
    if rk < len(monos):
        raise InconsistentTable(f"table determines only {rk} of {len(monos)} cubic values")
    return dict(zip(monos, sol))


def build_trilinear() -> TrilinearSpace:
    return TrilinearSpace(BASIS, solve_table())


# derived classes on the threefold
P = T1 + T2 - Dt - L                 # Poincare class, trivial on the zero section
ANTIDIAGONAL = 2 * T1 + 2 * T2 - Dt - 2 * L
EXCEPTIONAL = 6 * L * (3 * Z1 + 3 * Z2 - Dt)
D_RESTRICTED = -3 * T1 - 3 * T2 + Dt + 13 * L
M_RESTRICTED = 12 * L - D_RESTRICTED
BETA2_RESTRICTED = 4 * T1 * T2 - P * P - 6 * L * (3 * T1 + 3 * T2 - Dt)
SD_PRIME = 3 * T1 + 3 * T2 - Dt - 4 * L
K31 = 12 * L   # the boundary of the stratum, cut out by 12L


def action_generators() -> list[dict[str, ClassExpr]]:
    """Images of the basis under the three involutions generating the symmetry group.

    The third exchanges Z1 with the antidiagonal while fixing L and Z2.
    """
    identity = {n: ClassExpr.gen(n) for n in BASIS}
    swap12 = {"L": L, "Z1": Z2, "Z2": Z1, "Dt": Dt}
    # Dt = 2Z1 + 2Z2 + 2L - antidiagonal, so its image follows by linearity
    swap_anti = {"L": L, "Z1": ANTIDIAGONAL, "Z2": Z2,
                 "Dt": 2 * ANTIDIAGONAL + 2 * Z2 + 2 * L - Z1}
    return [identity, swap12, swap_anti]


def same_numerical_class(space: TrilinearSpace, a: ClassExpr, b: ClassExpr) -> bool:
    return space.quadratic_functional(a - b) == (Fraction(0),) * len(space.basis)


def h4_row(space: TrilinearSpace, divisor: ClassExpr,
           pullbacks: Sequence[ClassExpr], stacky: bool = True) -> tuple[Fraction, ...]:
    f = STACKY_FACTOR if stacky else Fraction(1)
    return tuple(f * space.pair_quadratic(q, divisor) for q in pullbacks)
