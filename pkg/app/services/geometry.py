"""
Exact convex-geometry kernels over the rationals.

  - min_norm_point: Wolfe's algorithm (major/minor cycles) without tolerances
  - hull_position_of_origin, ray_hull_window: small LPs through utils.simplex
  - affine_rank, affine_minimizer: exact elimination
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from app.models.errors import DegenerateCorralError, EmptyInputError, RankMismatchError, ZeroDirectionError
from app.models.geometry import HullPosition, InnerProduct, Interval
from app.utils.rational import ONE, ZERO, Vector, combine, is_zero, matrix_rank, solve_linear, sub
from app.utils.simplex import LPStatus, solve_lp

logger = logging.getLogger("geometry")


def _check_points(points: Sequence[Vector], ip: Optional[InnerProduct] = None) -> int:
    if not points:
        raise EmptyInputError("at least one point is required")
    r = len(points[0])
    if any(len(p) != r for p in points):
        raise RankMismatchError("points have inconsistent dimensions")
    if ip is not None and ip.rank != r:
        raise RankMismatchError(f"points have rank {r}, inner product has rank {ip.rank}")
    return r


def _dedupe(points: Sequence[Vector]) -> List[Vector]:
    seen = set()
    out = []
    for p in points:
        p = tuple(p)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


# ─── Affine Helpers ─────────────────────────────────────

def affine_rank(points: Sequence[Vector]) -> int:
    _check_points(points)
    base = points[0]
    return matrix_rank([sub(p, base) for p in points[1:]])


def affine_minimizer(points: Sequence[Vector], ip: InnerProduct) -> Optional[List[Fraction]]:
    """
    Coefficients λ (Σλ = 1) of the point of aff(points) closest to 0.
    None when the points are affinely dependent.
    """
    m = len(points)
    matrix = []
    for i in range(m):
        matrix.append([ip.dot(points[i], points[j]) for j in range(m)] + [-ONE])
    matrix.append([ONE] * m + [ZERO])
    solution = solve_linear(matrix, [ZERO] * m + [ONE])
    if solution is None:
        return None
    return solution[:m]


# ─── Min-Norm Point ─────────────────────────────────────

def min_norm_point(points: Sequence[Vector], ip: InnerProduct) -> Vector:
    _check_points(points, ip)
    pts = _dedupe(points)

    start = min(range(len(pts)), key=lambda i: (ip.norm_sq(pts[i]), i))
    corral = [start]
    weights = [ONE]
    x = pts[start]

    while True:
        xx = ip.norm_sq(x)
        j = min(range(len(pts)), key=lambda i: (ip.dot(x, pts[i]), i))
        if ip.dot(x, pts[j]) >= xx or j in corral:
            return x

        corral.append(j)
        weights.append(ZERO)

        # Minor cycles: move toward the affine minimizer of the corral,
        # dropping points whose weight reaches zero.
        while True:
            alpha = affine_minimizer([pts[i] for i in corral], ip)
            if alpha is None:
                raise DegenerateCorralError("corral became affinely dependent")
            if all(a > 0 for a in alpha):
                weights = alpha
                break
            theta = min(
                w / (w - a) for w, a in zip(weights, alpha) if a <= 0 and w - a != 0
            )
            weights = [(1 - theta) * w + theta * a for w, a in zip(weights, alpha)]
            keep = [k for k, w in enumerate(weights) if w > 0]
            corral = [corral[k] for k in keep]
            weights = [weights[k] for k in keep]

        x = combine(weights, [pts[i] for i in corral])


# ─── LP Tests ───────────────────────────────────────────

def origin_weight(points: Sequence[Vector]) -> Optional[Fraction]:
    """
    Largest τ such that 0 = Σ w_i p_i with Σ w_i = 1 and every w_i ≥ τ.
    None when 0 is outside the hull; positive iff 0 is a strictly
    positive combination of all the points.
    """
    r = _check_points(points)
    m = len(points)
    # variables: μ_1..μ_m, τ with w_i = μ_i + τ
    total = [sum((p[c] for p in points), ZERO) for c in range(r)]
    rows = [[p[c] for p in points] + [total[c]] for c in range(r)]
    rows.append([ONE] * m + [Fraction(m)])
    rhs = [ZERO] * r + [ONE]
    cost = [ZERO] * m + [-ONE]
    result = solve_lp(cost, rows, rhs)
    if result.status != LPStatus.optimal:
        return None
    return result.x[m]


def hull_position_of_origin(points: Sequence[Vector], ip: InnerProduct) -> HullPosition:
    r = _check_points(points, ip)
    tau = origin_weight(points)
    if tau is None:
        return HullPosition.outside
    if tau > 0 and affine_rank(points) == r:
        return HullPosition.interior
    return HullPosition.boundary


def ray_hull_window(direction: Vector, points: Sequence[Vector], ip: InnerProduct) -> Optional[Interval]:
    """{s ≥ 0 : s·direction ∈ conv(points)} as a closed interval, or None."""
    if is_zero(direction):
        raise ZeroDirectionError("ray direction must be nonzero")
    r = _check_points(points, ip)
    if len(direction) != r:
        raise RankMismatchError("direction and points have different ranks")
    m = len(points)
    # variables: λ_1..λ_m, s
    rows = [[p[c] for p in points] + [-direction[c]] for c in range(r)]
    rows.append([ONE] * m + [ZERO])
    rhs = [ZERO] * r + [ONE]

    low = solve_lp([ZERO] * m + [ONE], rows, rhs)
    if low.status != LPStatus.optimal:
        return None
    high = solve_lp([ZERO] * m + [-ONE], rows, rhs)
    return Interval(lo=low.x[m], hi=high.x[m])
