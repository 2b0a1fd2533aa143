"""Exact polytope machinery: H/V representations, polarity, cone membership.

Dimensions stay small (ambient rank <= 8), so vertex enumeration is a
combinatorial active-set search over constraint subsets and every
incidence question is decided by an exact LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations
from typing import Iterable, Sequence

from . import lp
from .linalg import Vec, dot, rank, solve_linear, vec

MAX_DIM = 8


class GeometryError(ValueError):
    pass


class UnboundedPolytope(GeometryError):
    pass


class DimensionTooLarge(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class NotAVertex(GeometryError):
    pass


@dataclass(frozen=True)
class HPolytope:
    """Intersection of half-spaces ``<normal, v> >= offset``."""

    rows: tuple[tuple[Vec, Q], ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        for normal, _ in self.rows:
            if len(normal) != self.ambient_dim:
                raise GeometryError("normal length differs from ambient dimension")

    @staticmethod
    def build(rows: Iterable[tuple[Sequence, int | Q]], dim: int) -> "HPolytope":
        return HPolytope(tuple((vec(n), Q(o)) for n, o in rows), dim)

    def contains(self, point: Sequence[Q]) -> bool:
        return all(dot(n, point) >= o for n, o in self.rows)


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of an irredundant vertex list."""

    vertices: tuple[Vec, ...]
    ambient_dim: int

    @staticmethod
    def build(points: Iterable[Sequence], dim: int) -> "VPolytope":
        pts: list[Vec] = []
        for p in points:
            v = vec(p)
            if len(v) != dim:
                raise GeometryError("point length differs from ambient dimension")
            if v not in pts:
                pts.append(v)
        keep = [
            p for i, p in enumerate(pts)
            if not point_in_hull(pts[:i] + pts[i + 1:], p)
        ]
        return VPolytope(tuple(sorted(keep)), dim)

    def contains(self, point: Sequence[Q]) -> bool:
        return point_in_hull(self.vertices, point)


def point_in_hull(points: Sequence[Sequence[Q]], target: Sequence[Q]) -> bool:
    """Decide target in conv(points) by LP feasibility on barycentric weights."""
    if not points:
        return False
    k = len(points)
    d = len(target)
    # Equalities sum(l_i p_i) = target, sum(l_i) = 1 as <= pairs; minimize
    # nothing (feasibility); l >= 0 handled natively.
    rows: list[list[Q]] = []
    rhs: list[Q] = []
    for j in range(d):
        row = [Q(p[j]) for p in points]
        rows.append(row)
        rhs.append(Q(target[j]))
        rows.append([-v for v in row])
        rhs.append(-Q(target[j]))
    rows.append([Q(1)] * k)
    rhs.append(Q(1))
    rows.append([Q(-1)] * k)
    rhs.append(Q(-1))
    res = lp.solve(lp.LpProblem.build([0] * k, rows, rhs))
    return res.status == lp.OPTIMAL


def cone_contains(generators: Sequence[Sequence[Q]], target: Sequence[Q]) -> bool:
    """True iff target is a nonnegative combination of the generators.

    Decided by LP feasibility: minimize the l1 error of G l - target over
    l >= 0 via split slack variables; membership iff the error is 0.
    """
    d = len(target)
    k = len(generators)
    if all(Q(t) == 0 for t in target):
        return True
    if k == 0:
        return False
    # Variables: l (k), s_plus (d), s_minus (d) with
    # G l + s_plus - s_minus = target; maximize -(sum s).
    rows: list[list[Q]] = []
    rhs: list[Q] = []
    for j in range(d):
        row = [Q(generators[i][j]) for i in range(k)]
        row += [Q(1) if t == j else Q(0) for t in range(d)]
        row += [Q(-1) if t == j else Q(0) for t in range(d)]
        rows.append(row)
        rhs.append(Q(target[j]))
        rows.append([-v for v in row])
        rhs.append(-Q(target[j]))
    c = [Q(0)] * k + [Q(-1)] * (2 * d)
    res = lp.solve(lp.LpProblem.build(c, rows, rhs))
    return res.status == lp.OPTIMAL and res.value == 0


def vertex_enumerate(p: HPolytope) -> VPolytope:
    """Exact vertex set of a bounded H-polytope.

    Every point where ambient_dim linearly independent constraints are
    active and all constraints hold.  Boundedness is checked first with one
    LP per signed coordinate direction.
    """
    d = p.ambient_dim
    if d > MAX_DIM:
        raise DimensionTooLarge(f"ambient dimension {d} exceeds cap {MAX_DIM}")
    if d == 0:
        ok = all(o <= 0 for _, o in p.rows)
        return VPolytope(((),) if ok else (), 0)
    a = [[-v for v in normal] for normal, _ in p.rows]
    b = [-offset for _, offset in p.rows]
    for j in range(d):
        for sign in (1, -1):
            c = [Q(sign) if t == j else Q(0) for t in range(d)]
            res = lp.solve_free(c, a, b)
            if res.status == lp.UNBOUNDED:
                raise UnboundedPolytope(f"unbounded in coordinate direction {j}")
            if res.status == lp.INFEASIBLE:
                return VPolytope((), d)
    found: set[Vec] = set()
    for subset in combinations(range(len(p.rows)), d):
        normals = [p.rows[i][0] for i in subset]
        if rank(normals) < d:
            continue
        sol = solve_linear(normals, [p.rows[i][1] for i in subset])
        if sol is not None and p.contains(sol):
            found.add(sol)
    return VPolytope(tuple(sorted(found)), d)


def _full_dimensional(points: Sequence[Vec], d: int) -> bool:
    if not points:
        return d == 0
    base = points[0]
    return rank([tuple(a - b for a, b in zip(pt, base)) for pt in points[1:]]) == d


def origin_interior(q: VPolytope) -> bool:
    """True iff 0 lies in the topological interior of conv(vertices)."""
    if not _full_dimensional(q.vertices, q.ambient_dim):
        return False
    k = len(q.vertices)
    # 0 in relint iff some strictly positive convex combination hits 0:
    # maximize eps s.t. l_i >= eps, sum l = 1, sum l_i v_i = 0.
    rows: list[list[Q]] = []
    rhs: list[Q] = []
    for j in range(q.ambient_dim):
        row = [Q(v[j]) for v in q.vertices] + [Q(0)]
        rows.append(row)
        rhs.append(Q(0))
        rows.append([-x for x in row])
        rhs.append(Q(0))
    rows.append([Q(1)] * k + [Q(0)])
    rhs.append(Q(1))
    rows.append([Q(-1)] * k + [Q(0)])
    rhs.append(Q(-1))
    for i in range(k):
        row = [Q(0)] * (k + 1)
        row[i] = Q(-1)
        row[k] = Q(1)
        rows.append(row)
        rhs.append(Q(0))
    c = [Q(0)] * k + [Q(1)]
    res = lp.solve(lp.LpProblem.build(c, rows, rhs))
    return res.status == lp.OPTIMAL and res.value is not None and res.value > 0


def dualize(q: VPolytope) -> HPolytope:
    """Polar dual {v : <u, v> >= -1 for every vertex u of q}."""
    if not origin_interior(q):
        raise OriginNotInterior("0 must lie in the interior of the polytope")
    return HPolytope(tuple((u, Q(-1)) for u in q.vertices), q.ambient_dim)


def dual_face(q: VPolytope, v: Sequence[Q]) -> frozenset[int]:
    """Indices of vertices of q pairing to -1 with a vertex v of the dual."""
    dual_vertices = vertex_enumerate(dualize(q)).vertices
    vv = vec(v)
    if vv not in dual_vertices:
        raise NotAVertex(f"{v} is not a vertex of the dual polytope")
    return frozenset(i for i, u in enumerate(q.vertices) if dot(u, vv) == -1)
