"""Exact rational polyhedral cones.

Cones are kept in V-representation as sorted primitive integer rays.  Duals
come from a double description pass, membership from a phase-one simplex run
with Bland's rule.  Both kinds of membership answer carry a certificate that
is re-checked with plain arithmetic before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import dot, kernel, primitive_integer_vector, rank, rref, transpose

Ray = tuple[int, ...]


class ConeError(Exception):
    pass


class ZeroVector(ConeError):
    pass


class DimensionMismatch(ConeError):
    pass


class IndexOutOfRange(ConeError):
    pass


class AmbiguousRelation(ConeError):
    pass


class CertificateError(ConeError):
    """An LP answer failed independent re-verification (should never happen)."""


def canonicalize_ray(v: Sequence[Fraction | int]) -> Ray:
    try:
        return primitive_integer_vector(v)
    except ZeroDivisionError:
        raise ZeroVector("the zero vector does not span a ray") from None


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    rays: tuple[Ray, ...]

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[Fraction | int]],
                     ambient_dim: int | None = None) -> Cone:
        """Cone generated by ``vectors``; zero vectors are dropped."""
        if ambient_dim is None:
            if not vectors:
                raise DimensionMismatch("ambient dimension needed for an empty generator list")
            ambient_dim = len(vectors[0])
        rays = set()
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in a {ambient_dim}-dimensional cone")
            if any(x != 0 for x in v):
                rays.add(canonicalize_ray(v))
        return cls(ambient_dim, tuple(sorted(rays)))

    def span_rank(self) -> int:
        return rank(self.rays, self.ambient_dim) if self.rays else 0


@dataclass(frozen=True)
class Inside:
    coefficients: tuple[Fraction, ...]

    @property
    def inside(self) -> bool:
        return True


@dataclass(frozen=True)
class Outside:
    separator: tuple[Fraction, ...]

    @property
    def inside(self) -> bool:
        return False


MembershipCertificate = Inside | Outside


def check_certificate(generators: Sequence[Sequence[Fraction | int]],
                      v: Sequence[Fraction | int], cert: MembershipCertificate) -> bool:
    """Independent exact check of an inside/outside certificate."""
    v = [Fraction(x) for x in v]
    if isinstance(cert, Inside):
        if len(cert.coefficients) != len(generators):
            return False
        if any(c < 0 for c in cert.coefficients):
            return False
        total = [Fraction(0)] * len(v)
        for c, g in zip(cert.coefficients, generators):
            for i, x in enumerate(g):
                total[i] += c * x
        return total == v
    s = cert.separator
    if len(s) != len(v):
        return False
    return all(dot(s, [Fraction(x) for x in g]) >= 0 for g in generators) and dot(s, v) < 0


def _phase_one(columns: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
               ) -> MembershipCertificate:
    """Decide whether b = sum x_j columns_j with x >= 0 (exact simplex, Bland's rule)."""
    m = len(b)
    k = len(columns)
    signs = [(-1 if x < 0 else 1) for x in b]
    # tableau rows: [x_1..x_k, a_1..a_m | rhs]
    rows = []
    for i in range(m):
        row = [signs[i] * Fraction(columns[j][i]) for j in range(k)]
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(signs[i] * Fraction(b[i]))
        rows.append(row)
    basis = [k + i for i in range(m)]
    n = k + m
    # reduced costs for minimizing the sum of artificials
    cost = [Fraction(0)] * k + [Fraction(1)] * m
    red = [cost[j] - sum((rows[i][j] for i in range(m)), Fraction(0)) for j in range(n)]

    while True:
        entering = next((j for j in range(n) if red[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rows[i][n] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: phase one is bounded below by zero
            raise CertificateError("unbounded phase-one problem")
        r = best[1]
        p = rows[r][entering]
        rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][entering] != 0:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        f = red[entering]
        red = [x - f * y for x, y in zip(red, rows[r][:n])]
        basis[r] = entering

    value = sum((rows[i][n] for i in range(m) if basis[i] >= k), Fraction(0))
    if value == 0:
        x = [Fraction(0)] * k
        for i, j in enumerate(basis):
            if j < k:
                x[j] = rows[i][n]
        return Inside(tuple(x))
    # duals of the phase-one problem: y_i = cost - reduced cost of artificial i
    y = [1 - red[k + i] for i in range(m)]
    return Outside(tuple(-signs[i] * y[i] for i in range(m)))


def nonnegative_combination(generators: Sequence[Sequence[Fraction | int]],
                            v: Sequence[Fraction | int], dim: int | None = None
                            ) -> MembershipCertificate:
    """Membership of ``v`` in the cone of ``generators``, coefficients on the generators as given."""
    if dim is None:
        dim = len(v)
    if len(v) != dim:
        raise DimensionMismatch(f"query has length {len(v)}, expected {dim}")
    for g in generators:
        if len(g) != dim:
            raise DimensionMismatch(f"generator of length {len(g)}, expected {dim}")
    cols = [[Fraction(x) for x in g] for g in generators]
    cert = _phase_one(cols, [Fraction(x) for x in v])
    if not check_certificate(cols, v, cert):
        raise CertificateError("LP certificate failed verification")
    return cert


def membership(c: Cone, v: Sequence[Fraction | int]) -> MembershipCertificate:
    return nonnegative_combination(c.rays, v, c.ambient_dim)


def is_extremal_generator(c: Cone, i: int) -> tuple[bool, MembershipCertificate]:
    """Whether ray ``i`` lies outside the cone of the other rays, with the certificate."""
    if not 0 <= i < len(c.rays):
        raise IndexOutOfRange(f"ray index {i} out of range 0..{len(c.rays) - 1}")
    others = [r for j, r in enumerate(c.rays) if j != i]
    cert = nonnegative_combination(others, c.rays[i], c.ambient_dim)
    return (not cert.inside), cert


def extremal_rays(c: Cone) -> tuple[Ray, ...]:
    return tuple(r for i, r in enumerate(c.rays) if is_extremal_generator(c, i)[0])


def is_simplicial(c: Cone) -> bool:
    return len(extremal_rays(c)) == c.span_rank()


def contains_cone(outer: Cone, inner: Cone) -> bool:
    return all(membership(outer, r).inside for r in inner.rays)


def cones_equal(a: Cone, b: Cone) -> bool:
    """Equality as point sets (mutual containment); redundant generators do not matter."""
    if a.ambient_dim != b.ambient_dim:
        return False
    return contains_cone(a, b) and contains_cone(b, a)


def _pointed_dual_rays(g: list[list[Fraction]], r: int) -> list[list[Fraction]]:
    """Extreme rays of {u in Q^r : g_i . u >= 0 for all i}; g has rank r (pointed cone)."""
    # initial simplicial cone from the first r independent constraints
    chosen: list[int] = []
    for i, row in enumerate(g):
        if rank([g[j] for j in chosen] + [row], r) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == r:
            break
    # rays of {u : G_I u >= 0} are the columns of G_I^{-1}
    aug = [list(g[i]) + [Fraction(int(a == b)) for b in range(r)] for a, i in enumerate(chosen)]
    red, _ = rref(aug, 2 * r)
    inv = [row[r:] for row in red]
    rays = [[inv[a][col] for a in range(r)] for col in range(r)]
    processed = list(chosen)

    for i, a in enumerate(g):
        if i in chosen:
            continue
        vals = [dot(a, ray) for ray in rays]
        pos = [ray for ray, x in zip(rays, vals) if x > 0]
        zero = [ray for ray, x in zip(rays, vals) if x == 0]
        neg = [(ray, x) for ray, x in zip(rays, vals) if x < 0]
        new = pos + zero
        for p, xp in ((ray, x) for ray, x in zip(rays, vals) if x > 0):
            for n_, xn in neg:
                active = [g[j] for j in processed if dot(g[j], p) == 0 and dot(g[j], n_) == 0]
                if rank(active, r) != r - 2:
                    continue
                new.append([xp * y - xn * z for y, z in zip(n_, p)])
        processed.append(i)
        rays = new
        # drop positive duplicates so adjacency tests stay meaningful
        seen: dict[Ray, list[Fraction]] = {}
        for ray in rays:
            seen.setdefault(primitive_integer_vector(ray), ray)
        rays = [[Fraction(x) for x in key] for key in sorted(seen)]
    return rays


def dual_cone(c: Cone) -> Cone:
    """{f : f . r >= 0 for every ray r of c}, by double description."""
    d = c.ambient_dim
    rows = [[Fraction(x) for x in ray] for ray in c.rays]
    lineality = kernel(rows, d)
    out: list[list[Fraction]] = []
    for k in lineality:
        out.append(k)
        out.append([-x for x in k])
    span_basis, _ = rref(rows, d) if rows else ([], [])
    r = len(span_basis)
    if r:
        # write f = sum u_a * span_basis[a]; constraints become (R B^T) u >= 0
        g = [[dot(ray, b) for b in span_basis] for ray in rows]
        for u in _pointed_dual_rays(g, r):
            f = [sum((u[a] * span_basis[a][j] for a in range(r)), Fraction(0)) for j in range(d)]
            out.append(f)
    return Cone.from_vectors(out, d)


def unique_relation(vectors: Sequence[Sequence[Fraction | int]]) -> tuple[Fraction, ...] | None:
    """The linear relation sum c_i v_i = 0 if it is unique up to scale, first nonzero c_i = 1."""
    if not vectors:
        return None
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise DimensionMismatch("vectors of different lengths")
    cols = transpose([[Fraction(x) for x in v] for v in vectors])
    ker = kernel(cols, len(vectors))
    if not ker:
        return None
    if len(ker) > 1:
        raise AmbiguousRelation(f"relation space has dimension {len(ker)}")
    rel = ker[0]
    lead = next(x for x in rel if x != 0)
    return tuple(x / lead for x in rel)
