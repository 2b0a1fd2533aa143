"""The p-invariant of a spherical skeleton, via an exact LP.

p(R) = sum_D (m_D - 1) + max{ c.x : A x <= b, x >= 0 } with
c_g = sum_D <rho(D), g>, A rows -<rho(D), .>, b_D = m_D.  An unbounded LP
means p = +infinity (the skeleton is then not complete).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from . import lp
from .linalg import Vec
from .roots import parabolic_count
from .skeleton import InvalidSkeleton, SphericalSkeleton, localize, validate


@dataclass(frozen=True)
class PInvariantReport:
    p_value: Q | None  # None encodes +infinity
    bound: int
    gap: Q | None
    theta: Vec | None  # coordinates of the optimal vertex over sigma
    dual: Vec | None
    is_equality: bool
    problem: lp.LpProblem
    base: Q  # sum_D (m_D - 1)

    @property
    def finite(self) -> bool:
        return self.p_value is not None


def skeleton_lp(sk: SphericalSkeleton) -> lp.LpProblem:
    rows = sk.pairing_rows()
    ms = sk.coefficients()
    nsigma = len(sk.sigma)
    c = [sum(row[j] for row in rows) for j in range(nsigma)]
    a = [[-v for v in row] for row in rows]
    return lp.LpProblem.build(c, a, ms)


def compute_p(sk: SphericalSkeleton, check: bool = True) -> PInvariantReport:
    """Value of the invariant, optimal vertex, dual certificate, Mukai gap."""
    if check:
        violations = validate(sk)
        if violations:
            raise InvalidSkeleton(violations)
    problem = skeleton_lp(sk)
    base = Q(sum(m - 1 for m in sk.coefficients()))
    bound = parabolic_count(sk.root_system, sk.sp)
    res = lp.solve(problem)
    if res.status == lp.UNBOUNDED:
        return PInvariantReport(None, bound, None, None, None, False, problem, base)
    if res.status != lp.OPTIMAL:
        # x = 0 is feasible whenever every m_D > 0, so this cannot happen
        # for genuine skeleton data.
        raise InvalidSkeleton([f"invariant LP is {res.status}"])
    value = base + res.value
    gap = Q(bound) - value
    return PInvariantReport(
        value, bound, gap, res.x, res.y, gap == 0, problem, base
    )


def evaluate_objective(sk: SphericalSkeleton, theta: Sequence[Q]) -> Q:
    """sum_D (m_D - 1 + <rho(D), theta>) for theta in sigma coordinates."""
    total = Q(sum(m - 1 for m in sk.coefficients()))
    for row in sk.pairing_rows():
        total += sum((Q(v) * Q(t) for v, t in zip(row, theta)), Q(0))
    return total


def theta_feasible(sk: SphericalSkeleton, theta: Sequence[Q]) -> bool:
    """theta lies in Q*_R ∩ cone(sigma), in sigma coordinates."""
    if any(Q(t) < 0 for t in theta):
        return False
    for row, m in zip(sk.pairing_rows(), sk.coefficients()):
        if sum((Q(v) * Q(t) for v, t in zip(row, theta)), Q(0)) < -m:
            return False
    return True


def smoothness_test(sk: SphericalSkeleton, ids: Iterable[str]) -> bool:
    """Localized equality test p(R_I) = |R_I+ \\ R+_{S^p_I}|."""
    return compute_p(localize(sk, ids)).is_equality


def mukai_gap_table(
    skeletons: Sequence[tuple[str, SphericalSkeleton]]
) -> list[dict]:
    """Reporting sweep: one row per skeleton with p, bound, gap, equality."""
    rows: list[dict] = []
    for name, sk in skeletons:
        try:
            rep = compute_p(sk)
        except (InvalidSkeleton, ValueError) as exc:
            rows.append({"id": name, "error": str(exc)})
            continue
        rows.append(
            {
                "id": name,
                "p": rep.p_value,
                "bound": rep.bound,
                "gap": rep.gap,
                "equality": rep.is_equality,
            }
        )
    return rows
