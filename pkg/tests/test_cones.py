from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from intersect_lab import cones as cl
from intersect_lab.exact import kernel, rank, solve, transpose

FIVE = [  # rows of the five surfaces against (L^2, LM, M^2, beta2)
    (F(1, 1152), 0, 0, F(1, 16)),
    (0, F(1, 96), 0, F(-1, 8)),
    (0, F(1, 48), F(1, 24), F(-1, 8)),
    (0, 0, F(1, 48), F(-1, 16)),
    (0, 0, F(1, 4), F(1, 4)),
]


# independent oracles -------------------------------------------------------------

def caratheodory_member(gens, v):
    """v is in the cone iff it is a nonnegative combination of some independent subset."""
    if all(x == 0 for x in v):
        return True
    d = len(v)
    for k in range(1, min(len(gens), d) + 1):
        for sub in combinations(gens, k):
            cols = transpose([list(map(F, g)) for g in sub], d)
            if rank(transpose(cols, k), d) < k:
                continue
            sol, _ = solve(cols, list(map(F, v)), k)
            if sol is not None and all(x >= 0 for x in sol):
                return True
    return False


def facet_normals(gens, d):
    """Dual rays of a full-dimensional cone: one-signed normals of (d-1)-subsets."""
    out = set()
    for sub in combinations(gens, d - 1):
        ker = kernel([list(map(F, g)) for g in sub], d)
        if len(ker) != 1:
            continue
        n = ker[0]
        vals = [sum(F(a) * b for a, b in zip(g, n)) for g in gens]
        if all(x >= 0 for x in vals):
            out.add(cl.canonicalize_ray(n))
        elif all(x <= 0 for x in vals):
            out.add(cl.canonicalize_ray([-x for x in n]))
    return tuple(sorted(out))


# fixed cases -----------------------------------------------------------------------

def test_canonical_rays():
    assert cl.canonicalize_ray([F(1, 2), F(-3, 4)]) == (2, -3)
    with pytest.raises(cl.ZeroVector):
        cl.canonicalize_ray([0, 0])
    c = cl.Cone.from_vectors([[2, 0], [1, 0], [0, 0], [0, 5]])
    assert c.rays == ((0, 1), (1, 0))


def test_five_surface_cone():
    c = cl.Cone.from_vectors(FIVE)
    assert c.rays == ((0, 0, 1, -3), (0, 0, 1, 1), (0, 1, 0, -12), (0, 1, 2, -6), (1, 0, 0, 72))
    for i in range(5):
        ok, cert = cl.is_extremal_generator(c, i)
        assert ok and not cert.inside
    assert not cl.is_simplicial(c)
    assert c.span_rank() == 4
    assert cl.cones_equal(cl.dual_cone(cl.dual_cone(c)), c)


def test_five_surface_dual_matches_facet_oracle():
    c = cl.Cone.from_vectors(FIVE)
    assert cl.dual_cone(c).rays == facet_normals(c.rays, 4)
    assert cl.dual_cone(c).rays == (
        (-72, 12, 3, 1), (0, 1, 0, 0), (1, 0, 0, 0), (72, -12, 3, -1), (72, -8, 1, -1))


def test_relation_and_separator():
    sd, sf, c4, k31 = FIVE[2], FIVE[1], FIVE[3], FIVE[4]
    assert cl.unique_relation([sd, sf, c4, k31]) == (1, -2, 1, F(-1, 4))
    assert cl.unique_relation([FIVE[0], sf]) is None
    with pytest.raises(cl.AmbiguousRelation):
        cl.unique_relation([[1, 0], [2, 0], [3, 0]])
    cert = cl.nonnegative_combination([FIVE[0], sf, c4, k31], sd)
    assert not cert.inside
    assert cert.separator == (6, -1, F(1, 12), F(-1, 12))
    inside = cl.nonnegative_combination([c4, k31], [0, 0, 1, 0])
    assert inside.coefficients == (12, 3)


def test_empty_and_full_duals():
    empty = cl.Cone(2, ())
    full = cl.dual_cone(empty)
    assert full.rays == ((-1, 0), (0, -1), (0, 1), (1, 0))
    assert cl.dual_cone(full).rays == ()
    halfplane = cl.Cone.from_vectors([[1, 0], [-1, 0], [0, 1]])
    assert cl.dual_cone(halfplane).rays == ((0, 1),)


def test_errors():
    with pytest.raises(cl.DimensionMismatch):
        cl.Cone.from_vectors([[1, 0], [1, 0, 0]])
    with pytest.raises(cl.IndexOutOfRange):
        cl.is_extremal_generator(cl.Cone.from_vectors([[1, 0]]), 3)
    with pytest.raises(cl.DimensionMismatch):
        cl.nonnegative_combination([[1, 0]], [1, 0, 0])


def test_certificate_checker_rejects_bad_certificates():
    gens = [[1, 0], [0, 1]]
    assert not cl.check_certificate(gens, [1, 1], cl.Inside((1, 2)))
    assert not cl.check_certificate(gens, [1, 1], cl.Inside((-1, 2)))
    assert not cl.check_certificate(gens, [-1, 0], cl.Outside((-1, 0)))
    assert cl.check_certificate(gens, [-1, 0], cl.Outside((1, 0)))


# properties -------------------------------------------------------------------------

small = st.integers(-3, 3)
vec3 = st.tuples(small, small, small)
gens3 = st.lists(vec3, min_size=1, max_size=6)


@given(gens3, vec3)
def test_membership_matches_caratheodory(gens, v):
    cert = cl.nonnegative_combination(gens, v, 3)
    assert cl.check_certificate(gens, v, cert)
    assert cert.inside == caratheodory_member(gens, v)


@given(gens3, vec3, st.lists(st.integers(1, 7), min_size=6, max_size=6))
def test_membership_invariant_under_positive_rescaling(gens, v, scales):
    scaled = [tuple(s * x for x in g) for g, s in zip(gens, scales)]
    a = cl.nonnegative_combination(gens, v, 3).inside
    b = cl.nonnegative_combination(scaled, v, 3).inside
    assert a == b
    assert cl.Cone.from_vectors(gens, 3) == cl.Cone.from_vectors(scaled, 3)


@given(gens3)
def test_dual_pairs_nonnegatively_and_is_involutive(gens):
    c = cl.Cone.from_vectors(gens, 3)
    d = cl.dual_cone(c)
    for f in d.rays:
        for r in c.rays:
            assert sum(a * b for a, b in zip(f, r)) >= 0
    assert cl.cones_equal(cl.dual_cone(d), c)


@given(st.lists(vec3, min_size=3, max_size=6))
def test_dual_matches_facet_oracle(gens):
    c = cl.Cone.from_vectors(gens, 3)
    assume(c.span_rank() == 3)
    assert cl.dual_cone(c).rays == facet_normals(c.rays, 3)


@given(gens3)
def test_extremal_rays_generate_pointed_cones(gens):
    c = cl.Cone.from_vectors(gens, 3)
    assume(c.rays and cl.dual_cone(c).span_rank() == 3)  # pointed
    ext = cl.extremal_rays(c)
    assert cl.cones_equal(cl.Cone(3, ext), c)
    assert cl.is_simplicial(c) == (len(ext) == c.span_rank())
