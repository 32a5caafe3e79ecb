from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from intersect_lab.algebra import (
    ActionNotDegreePreserving, AlgebraHom, ClassExpr, DuplicateGenerator, GroupAction,
    InconsistentIntegral, NameCollision, NonHomogeneousRelation, Presentation, UnderdeterminedIntegral,
    UnknownGenerator, UnmappedGenerator, build_algebra, gens, integrate, intersection_number,
    invariant_subspace, make_monomial, normal_form, pairing_matrix, rename, substitute,
    tensor_product)
from intersect_lab.models.spaces import a2_algebra, x1_algebra

L, Z, T = gens("L", "Z", "T")
L2, D2 = gens("L2", "D2")


def p1_algebra(name="h"):
    (h,) = gens(name)
    return build_algebra(Presentation.of([(name, 1)], [h ** 2], 1, [(make_monomial({name: 1}), 1)]))


def test_x1_structure():
    a = x1_algebra()
    assert a.dimensions() == [1, 2, 1]
    t = L + Z
    assert normal_form(a, t * t) == normal_form(a, L * Z)
    assert integrate(a, Z * Z) == F(-1, 24)
    assert integrate(a, L * Z) == F(1, 24)
    assert integrate(a, L * L) == 0


def test_a2_numbers():
    a = a2_algebra()
    assert a.dimensions() == [1, 2, 2, 1]
    m2 = 12 * L2 - D2
    assert integrate(a, D2 ** 3) == F(-11, 12)
    assert integrate(a, m2 ** 3) == F(1, 60)
    assert normal_form(a, L2 * D2 ** 2) == normal_form(a, -120 * L2 ** 3)
    assert intersection_number(a, [m2, m2, D2]) == F(1, 12)


def test_pairing_matrix_symmetric():
    a = a2_algebra()
    cls = [L2, D2, L2 + D2]
    quad = [L2 * L2, L2 * D2, D2 * D2]
    m = pairing_matrix(a, cls, quad)
    assert m[0] == [integrate(a, L2 * q) for q in quad]


def test_degrees_above_top_vanish():
    a = x1_algebra()
    assert normal_form(a, L * Z * Z).is_zero()


def test_presentation_errors():
    a, b = gens("a", "b")
    one = [(make_monomial({"a": 1}), 1)]
    with pytest.raises(DuplicateGenerator):
        build_algebra(Presentation.of([("a", 1), ("a", 1)], [], 1, one))
    with pytest.raises(NonHomogeneousRelation):
        build_algebra(Presentation.of([("a", 1)], [a ** 2 - a], 1, one))
    with pytest.raises(UnknownGenerator):
        build_algebra(Presentation.of([("a", 1)], [b ** 2], 1, one))
    with pytest.raises(InconsistentIntegral):
        # a*b = 0 in the ring but is given a nonzero integral
        build_algebra(Presentation.of([("a", 1), ("b", 1)], [a * b], 2,
                                      [(make_monomial({"a": 1, "b": 1}), 1),
                                       (make_monomial({"a": 2}), 1), (make_monomial({"b": 2}), 1)]))
    with pytest.raises(InconsistentIntegral):
        build_algebra(Presentation.of([("a", 1)], [], 2, one))
    with pytest.raises(UnderdeterminedIntegral):
        build_algebra(Presentation.of([("a", 1), ("b", 1)], [], 2, [(make_monomial({"a": 2}), 1)]))


def test_tensor_product_and_rename():
    a = tensor_product(p1_algebra("h"), p1_algebra("k"), F(1, 2))
    h, k = gens("h", "k")
    assert a.dimensions() == [1, 2, 1]
    assert integrate(a, h * k) == F(1, 2)
    assert integrate(a, (h + k) ** 2) == 1
    with pytest.raises(NameCollision):
        tensor_product(p1_algebra("h"), p1_algebra("h"))
    r = rename(x1_algebra(), {"L": "L1", "Z": "Z1"})
    L1, Z1 = gens("L1", "Z1")
    assert integrate(r, Z1 * Z1) == F(-1, 24)
    assert integrate(r, L1 * Z1) == F(1, 24)


def test_x1_squared_dimensions():
    a = tensor_product(x1_algebra(), rename(x1_algebra(), {"L": "M", "Z": "W"}))
    assert a.dimensions() == [1, 4, 6, 4, 1]


def test_substitution_and_invariants():
    h, k = gens("h", "k")
    a = tensor_product(p1_algebra("h"), p1_algebra("k"))
    swap = AlgebraHom({"h": k, "k": h})
    assert substitute(swap, h * h + 2 * k) == k * k + 2 * h
    inv = invariant_subspace(a, GroupAction((swap,)), 1)
    assert len(inv) == 1
    assert normal_form(a, substitute(swap, inv[0])) == normal_form(a, inv[0])
    with pytest.raises(UnmappedGenerator):
        substitute(AlgebraHom({"h": k}), h * k)
    with pytest.raises(ActionNotDegreePreserving):
        invariant_subspace(a, GroupAction((AlgebraHom({"h": h * k, "k": k}),)), 1)


def test_classexpr_arithmetic():
    x = 2 * L - Z + F(1, 3)
    assert x.constant_value() is None
    assert (x - x).is_zero()
    assert ClassExpr.const(5).constant_value() == 5
    assert (L + Z) ** 2 == L * L + 2 * L * Z + Z * Z
    assert ClassExpr.const(0).homogeneous_degree({}) == 0
    assert (L * Z).homogeneous_degree({"L": 1, "Z": 1}) == 2
    assert (L + L * Z).homogeneous_degree({"L": 1, "Z": 1}) is None


# properties ----------------------------------------------------------------------

coeff = st.builds(F, st.integers(-30, 30), st.integers(1, 6))


def classes(names, max_deg):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in names]).map(
        lambda ex: make_monomial(dict(zip(names, ex))))
    return st.dictionaries(mono, coeff, max_size=5).map(ClassExpr)


A2 = a2_algebra()
X1 = x1_algebra()


@given(classes(["L2", "D2"], 3))
def test_normal_form_idempotent(x):
    y = normal_form(A2, x)
    assert normal_form(A2, y) == y


@given(classes(["L2", "D2"], 2), classes(["L2", "D2"], 2))
def test_normal_form_multiplicative(x, y):
    assert normal_form(A2, normal_form(A2, x) * normal_form(A2, y)) == normal_form(A2, x * y)


@given(classes(["L2", "D2"], 3), classes(["L2", "D2"], 3), coeff)
def test_integral_linear(x, y, c):
    assert integrate(A2, c * x + y) == c * integrate(A2, x) + integrate(A2, y)


@given(classes(["L", "Z"], 2), classes(["L", "Z"], 2))
def test_pairing_commutes(x, y):
    assert integrate(X1, x * y) == integrate(X1, y * x)
    assert intersection_number(X1, [x, y]) == integrate(X1, x * y)


@given(classes(["L", "Z"], 2))
def test_relations_vanish_in_any_multiple(x):
    # L^2 is a relation of X1: every multiple reduces to zero
    assert normal_form(X1, x * L * L).is_zero()
