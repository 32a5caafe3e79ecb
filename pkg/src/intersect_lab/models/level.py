"""Parametric bookkeeping on one component of the preimage of S_P in a level-n cover.

The component is P^1 x P^1 with section class S and fiber class N
(S^2 = N^2 = 0, S.N = 1).  Coefficients are polynomials in the formal level
``n`` and the cusp count ``t``; after dividing by the stabilizer order
16 n^2 t every answer must be a constant, and anything else is treated as a
modeling error rather than silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

# basis exponents (i, j) for S^i N^j, parameter exponents (a, b) for n^a t^b
Key = tuple[int, int, int, int]


class ParameterNotCancelled(Exception):
    pass


@dataclass(frozen=True)
class LevelElement:
    terms: Mapping[Key, Fraction]

    @classmethod
    def make(cls, terms: Mapping[Key, Fraction | int]) -> LevelElement:
        clean = {}
        for (i, j, a, b), c in terms.items():
            if i > 1 or j > 1:
                continue  # S^2 = N^2 = 0
            c = Fraction(c)
            if c:
                clean[(i, j, a, b)] = clean.get((i, j, a, b), Fraction(0)) + c
        return cls({k: v for k, v in clean.items() if v})

    def __add__(self, other: LevelElement) -> LevelElement:
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return LevelElement.make(acc)

    def __neg__(self) -> LevelElement:
        return LevelElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LevelElement) -> LevelElement:
        return self + (-other)

    def __mul__(self, other) -> LevelElement:
        if isinstance(other, (int, Fraction)):
            return LevelElement.make({k: c * other for k, c in self.terms.items()})
        acc: dict[Key, Fraction] = {}
        for (i1, j1, a1, b1), c1 in self.terms.items():
            for (i2, j2, a2, b2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2, a1 + a2, b1 + b2)
                acc[k] = acc.get(k, Fraction(0)) + c1 * c2
        return LevelElement.make(acc)

    __rmul__ = __mul__

    def integral(self) -> dict[tuple[int, int], Fraction]:
        """Coefficient of S.N, as a polynomial {(a, b): coeff} in n and t."""
        return {(a, b): c for (i, j, a, b), c in self.terms.items() if (i, j) == (1, 1)}


def const(c, n_exp: int = 0, t_exp: int = 0) -> LevelElement:
    return LevelElement.make({(0, 0, n_exp, t_exp): c})


S = LevelElement.make({(1, 0, 0, 0): 1})
N = LevelElement.make({(0, 1, 0, 0): 1})
n = const(1, 1, 0)
t = const(1, 0, 1)


def divide_constant(poly: Mapping[tuple[int, int], Fraction], c: Fraction,
                    n_exp: int, t_exp: int) -> Fraction:
    """Divide a polynomial in n, t by c*n^a*t^b, requiring a constant quotient."""
    if not poly:
        return Fraction(0)
    leftover = {k for k in poly if k != (n_exp, t_exp)}
    if leftover:
        desc = ", ".join(f"n^{a} t^{b}" for a, b in sorted(poly))
        raise ParameterNotCancelled(
            f"dividing by n^{n_exp} t^{t_exp} leaves parameter dependence (terms: {desc})")
    return poly[(n_exp, t_exp)] / c


def boundary_components() -> list[LevelElement]:
    """Restrictions of the boundary components meeting the chosen component.

    Two components containing it restrict to -2S, the two cutting out the
    0- and infinity-sections restrict to S, and the ones over the cusps of the
    base sum to t N.
    """
    return [-2 * S, -2 * S, S, S, t * N]


def restricted_classes() -> dict[str, LevelElement]:
    comps = boundary_components()
    boundary = comps[0]
    for c in comps[1:]:
        boundary = boundary + c
    # branching of order n along the boundary
    D = n * boundary
    L = LevelElement.make({(0, 1, 1, 1): Fraction(1, 12)})  # 12L = n t N
    square_sum = comps[0] * comps[0]
    for c in comps[1:]:
        square_sum = square_sum + c * c
    e2 = (boundary * boundary - square_sum) * Fraction(1, 2)
    beta2 = n * n * e2
    M = 12 * L - D
    return {"L": L, "D": D, "M": M, "B2": beta2}


def stabilizer_order_symbolic() -> tuple[Fraction, int, int]:
    """16 n^2 t as (coefficient, n exponent, t exponent)."""
    return Fraction(16), 2, 1


def sp_pairing_row() -> dict[str, Fraction]:
    cl = restricted_classes()
    c, a, b = stabilizer_order_symbolic()
    products = {
        "L^2": cl["L"] * cl["L"],
        "LD": cl["L"] * cl["D"],
        "D^2": cl["D"] * cl["D"],
        "LM": cl["L"] * cl["M"],
        "M^2": cl["M"] * cl["M"],
        "B2": cl["B2"],
    }
    return {name: divide_constant(x.integral(), c, a, b) for name, x in products.items()}
