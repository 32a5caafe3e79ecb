import json
from fractions import Fraction as F
from itertools import product
from math import gcd

import pytest

from intersect_lab.algebra import ClassExpr, gens, substitute
from intersect_lab.exact import rank
from intersect_lab.models import arithmetic as ar
from intersect_lab.models import level, ytilde
from intersect_lab.models import spaces as sp


# arithmetic oracles ------------------------------------------------------------------

def primitive_vectors_mod(n):
    """Vectors in (Z/n)^2 whose entries generate Z/n together with n."""
    return sum(1 for a, c in product(range(n), repeat=2) if gcd(gcd(a, c), n) == 1)


def sl2_brute(n):
    return sum(1 for a, b, c, d in product(range(n), repeat=4) if (a * d - b * c - 1) % n == 0)


@pytest.mark.parametrize("n", range(1, 13))
def test_cusp_count_matches_counting(n):
    # a cusp of the level-n curve is a primitive vector up to sign
    assert ar.cusp_count(n) == F(primitive_vectors_mod(n), 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_sl2_order_matches_enumeration(n):
    assert ar.group_order("SL2", n) == sl2_brute(n)


@pytest.mark.parametrize("n", range(1, 51))
def test_group_orders(n):
    # SL2(Z/n) is n times the number of possible first columns
    sl2 = n * primitive_vectors_mod(n)
    assert ar.group_order("SL2", n) == sl2
    assert ar.group_order("G", n) == n ** 2 * sl2 == 2 * n ** 3 * ar.cusp_count(n)
    assert ar.group_order("H", n) == n ** 4 * sl2 == 2 * n ** 5 * ar.cusp_count(n)


def test_known_cusp_counts():
    assert [ar.cusp_count(n) for n in (3, 4, 5, 6)] == [4, 6, 12, 12]
    assert ar.prime_divisors(360) == [2, 3, 5]
    with pytest.raises(ValueError):
        ar.group_order("SO3", 3)
    with pytest.raises(ValueError):
        ar.prime_divisors(0)


@pytest.mark.parametrize("n", range(3, 20))
def test_zero_section_square_independent_of_level(n):
    assert ar.zero_section_square(n) == F(-1, 24)


# trilinear model ------------------------------------------------------------------------

def test_ytilde_values():
    t = ytilde.build_trilinear()
    L, Z1, Z2, Dt = gens("L", "Z1", "Z2", "Dt")
    assert len(t.values) == 20
    assert t.evaluate_cubic(Dt ** 3) == F(-1, 2)
    assert t.evaluate_cubic(L * Z1 * Z2) == F(1, 24)
    assert t.evaluate_cubic(L ** 3) == 0
    assert t.evaluate_cubic(ytilde.P * Z1 * Z2) == 0
    assert t.evaluate_cubic(ytilde.EXCEPTIONAL * ytilde.ANTIDIAGONAL) == F(1, 2)
    d = ytilde.D_RESTRICTED
    assert t.evaluate_cubic(d ** 3) * ytilde.STACKY_FACTOR == F(31, 48)
    assert t.evaluate_cubic(d * ytilde.BETA2_RESTRICTED) * ytilde.STACKY_FACTOR == F(5, 16)


def test_ytilde_inconsistent_table_detected():
    rows = list(ytilde.ROW_LABELS)
    # L.Z1.Dt appears both in the L.Dt row and in the Z1.Z2 = Z1.Dt row
    labels, values = rows[3]
    rows[3] = (labels, [F(1, 12)] + values[1:])
    with pytest.raises(ytilde.InconsistentTable):
        ytilde.solve_table(rows)
    with pytest.raises(ytilde.InconsistentTable):
        ytilde.solve_table(rows[:2])


def test_ytilde_type_errors():
    t = ytilde.build_trilinear()
    L, Z1 = gens("L", "Z1")
    with pytest.raises(ytilde.NonDivisorClass):
        t.pair_quadratic(L * Z1, L * L)
    with pytest.raises(ytilde.DegreeMismatch):
        t.pair_quadratic(L, L)


def test_actions_preserve_form_and_fix_quadratic():
    t = ytilde.build_trilinear()
    space = sp.build_space("Ytilde")
    q = 4 * ytilde.T1 * ytilde.T2 - ytilde.P ** 2
    assert sp.fixed_by_action(space, q)
    for h in space.action.generators:
        for m in t.values:
            img = ClassExpr.monomial(m)
            assert t.evaluate_cubic(substitute(h, img)) == t.evaluate_cubic(img)


def test_ytilde_invariants():
    space = sp.build_space("Ytilde")
    inv = sp.invariant_classes(space, 1)
    assert len(inv) == 2
    L, Z1, Z2 = gens("L", "Z1", "Z2")
    target = Z1 + Z2 + ytilde.ANTIDIAGONAL
    a = space.action_algebra
    rows = [a.coordinates(x, 1) for x in inv]
    assert rank(rows + [a.coordinates(target, 1), a.coordinates(L, 1)], 4) == 2


# level computation --------------------------------------------------------------------

def test_sp_row():
    row = level.sp_pairing_row()
    assert row == {"L^2": 0, "LD": F(-1, 96), "D^2": F(-1, 4), "LM": F(1, 96), "M^2": 0,
                   "B2": F(-1, 8)}


def test_sp_uncancelled_parameter_is_an_error():
    # the boundary sum over the cusps weighted by n t N instead of t N leaves n behind
    comps = level.boundary_components()
    wrong = comps[:-1] + [level.n * level.t * level.N]
    boundary = wrong[0]
    for c in wrong[1:]:
        boundary = boundary + c
    D = level.n * boundary
    with pytest.raises(level.ParameterNotCancelled):
        level.divide_constant((D * D).integral(), F(16), 2, 1)


# assembled spaces ---------------------------------------------------------------------

def test_central_rows():
    h4 = sp.build_space("A3_H4")
    assert h4.rows["SA"] == (F(1, 1152), 0, 0, F(1, 16))
    assert h4.rows["SF"] == (0, F(1, 96), 0, F(-1, 8))
    assert h4.rows["SD"] == (0, F(1, 48), F(1, 24), F(-1, 8))
    assert h4.rows["K31"] == (0, 0, F(1, 4), F(1, 4))
    c4 = h4.vector(h4.resolve("C4"))
    assert c4 == (0, 0, F(1, 48), F(-1, 16))
    assert h4.rows["SP"] == h4.rows["SF"]
    assert h4.rows["SAAimg"] == tuple(2 * x for x in h4.rows["SA"])


def test_pushforward_requires_pullbacks():
    with pytest.raises(sp.MissingPullback):
        sp.pushforward_row(sp.build_space("A2"), "CA")


def test_unknown_space_and_symbol():
    with pytest.raises(sp.UnknownSpace):
        sp.build_space("A4")
    with pytest.raises(sp.UnknownSymbol):
        sp.build_space("X1").resolve("Q")
    with pytest.raises(sp.NotComputable):
        sp.build_space("A3_H4").integrate(ClassExpr.gen("sigma3") * ClassExpr.gen("L") ** 3)


def test_catalog_dump_is_json():
    doc = json.loads(sp.catalog_dump())
    assert set(sp.SPACE_NAMES) <= set(doc)
    assert len(doc["strata"]) == 8
    assert doc["A3_H4"]["rows"]["K31"] == ["0", "0", "1/4", "1/4"]
