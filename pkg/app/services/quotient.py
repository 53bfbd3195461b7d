"""
ε-shifted quotients of unstable strata.

For β ≠ 0 the quotient at ε > 0 is (Y_β ∩ μ⁻¹((1+ε)β))/T. Combinatorially
it is the semistable locus of the y-system shifted by -(1+ε)β, read on the
closure of Y_β. The semistable support family only changes at walls: the
levels s where s·β crosses the boundary of some conv(S), S ⊆ y_support.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from app.models.action import SupportSet, WeightSystem
from app.models.errors import (
    ChamberInconsistencyError,
    NonPositiveEpsilonError,
    NotPolynomialError,
    ZeroBetaError,
)
from app.models.geometry import HullPosition, Interval
from app.models.quotient import EpsilonWindow, QuotientChamber, QuotientReport
from app.models.strata import StratumIndex
from app.services.cohomology import quotient_betti, semistable_series
from app.services.geometry import affine_rank, hull_position_of_origin, origin_weight, ray_hull_window
from app.services.strata import check_enumeration_size, iter_supports
from app.utils.rational import ONE, Vector, format_vector, is_zero, scale, sub

logger = logging.getLogger("quotient")


def _require_nonzero(si: StratumIndex) -> Vector:
    beta = tuple(si.beta)
    if is_zero(beta):
        raise ZeroBetaError("the semistable stratum β = 0 has no shifted quotient")
    return beta


# ─── Walls ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _walls(si: StratumIndex, ws: WeightSystem) -> Tuple[Tuple[Fraction, ...], Interval]:
    beta = tuple(si.beta)
    y = si.y_support.indices
    check_enumeration_size(len(y))
    walls = set()
    for s in iter_supports(y):
        window = ray_hull_window(beta, ws.select(s), ws.ip)
        if window is None:
            continue
        walls.update(end for end in (window.lo, window.hi) if end > 0)
    full = ray_hull_window(beta, ws.select(y), ws.ip)
    logger.debug(f"[Quotient] beta {format_vector(beta)}: {len(walls)} walls, hull window [{full.lo}, {full.hi}]")
    return tuple(sorted(walls)), full


def epsilon_window(si: StratumIndex, ws: WeightSystem) -> EpsilonWindow:
    _require_nonzero(si)
    walls, full = _walls(si, ws)
    # ⟨α_i,β⟩ ≥ ‖β‖² on y_support and β ∈ conv(z-weights), so the window starts at 1
    if full.hi <= 1:
        return EpsilonWindow(beta=si.beta, walls=walls, empty_for_all_eps=True)
    first = min(w for w in walls if w > 1)
    return EpsilonWindow(
        beta=si.beta,
        walls=walls,
        eps_max=first - 1,
        eps_limit=full.hi - 1,
        empty_for_all_eps=False,
    )


# ─── Quotients ──────────────────────────────────────────

def _report(si: StratumIndex, ws: WeightSystem, epsilon: Fraction) -> QuotientReport:
    beta = tuple(si.beta)
    y = si.y_support.indices
    level = scale(ONE + epsilon, beta)
    shifted = {i: sub(ws.weights[i], level) for i in y}
    full_rank = affine_rank([shifted[i] for i in y])

    semistable: List[SupportSet] = []
    locally_free = True
    for s in iter_supports(y):
        points = [shifted[i] for i in s]
        position = hull_position_of_origin(points, ws.ip)
        if position == HullPosition.outside:
            continue
        semistable.append(SupportSet(indices=s))
        if position != HullPosition.interior or affine_rank(points) != full_rank:
            locally_free = False

    z = set(si.z_support.indices)
    within = all(z.intersection(s.indices) for s in semistable)
    complex_dim = betti = None
    if semistable and locally_free:
        complex_dim = (len(y) - 1) - affine_rank(ws.select(y))
        betti = quotient_betti(ws.shifted(y, level))
    return QuotientReport(
        beta=beta,
        epsilon=epsilon,
        nonempty=bool(semistable),
        complex_dim=complex_dim,
        betti=betti,
        locally_free=locally_free,
        within_stratum=within,
        semistable_supports=tuple(semistable),
    )


def unstable_quotient(si: StratumIndex, ws: WeightSystem, eps: Fraction) -> QuotientReport:
    _require_nonzero(si)
    eps = Fraction(eps)
    if eps <= 0:
        raise NonPositiveEpsilonError(f"epsilon must be positive, got {eps}")
    return _report(si, ws, eps)


def _same_chamber(a: QuotientReport, b: QuotientReport) -> bool:
    return a.model_dump(exclude={"epsilon"}) == b.model_dump(exclude={"epsilon"})


def quotient_family(si: StratumIndex, ws: WeightSystem) -> List[QuotientChamber]:
    """
    One chamber per open interval of ε between consecutive walls inside
    the hull window, with the report at the interval's midpoint.
    """
    window = epsilon_window(si, ws)
    if window.empty_for_all_eps:
        return []
    top = ONE + window.eps_limit
    levels = sorted({ONE, top} | {w for w in window.walls if ONE < w < top})

    chambers = []
    for lo, hi in zip(levels, levels[1:]):
        eps_lo, eps_hi = lo - 1, hi - 1
        width = eps_hi - eps_lo
        report = unstable_quotient(si, ws, eps_lo + width / 2)
        first = unstable_quotient(si, ws, eps_lo + width / 3)
        second = unstable_quotient(si, ws, eps_lo + 2 * width / 3)
        if not (_same_chamber(report, first) and _same_chamber(report, second)):
            raise ChamberInconsistencyError(
                f"reports differ inside the chamber ({eps_lo}, {eps_hi}) of beta {format_vector(si.beta)}"
            )
        chambers.append(QuotientChamber(eps_lo=eps_lo, eps_hi=eps_hi, report=report))
    return chambers


def critical_quotient(si: StratumIndex, ws: WeightSystem) -> QuotientReport:
    """
    The ε = 0 collapse (Z_β ∩ μ⁻¹(β))/T: the z-system shifted by -β, with
    stability judged against the effective torus spanned by its weights.
    """
    beta = _require_nonzero(si)
    z = si.z_support.indices
    shifted = ws.shifted(z, beta)
    effective = affine_rank(shifted.weights)

    semistable: List[SupportSet] = []
    locally_free = True
    for s in iter_supports(tuple(range(len(z)))):
        points = [shifted.weights[k] for k in s]
        tau = origin_weight(points)
        if tau is None:
            continue
        semistable.append(SupportSet(indices=tuple(z[k] for k in s)))
        if tau <= 0 or affine_rank(points) != effective:
            locally_free = False

    complex_dim = betti = None
    if semistable and locally_free:
        complex_dim = (len(z) - 1) - effective
        betti = semistable_series(shifted).times_one_minus_q(ws.rank - effective)
        if not betti.is_polynomial:
            raise NotPolynomialError(f"critical quotient series {betti.text} is not a polynomial")
    return QuotientReport(
        beta=beta,
        epsilon=Fraction(0),
        nonempty=bool(semistable),
        complex_dim=complex_dim,
        betti=betti,
        locally_free=locally_free,
        within_stratum=True,
        semistable_supports=tuple(sorted(semistable, key=lambda s: (len(s), s.indices))),
    )
