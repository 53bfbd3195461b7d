"""
Equivariant Poincaré series through the equivariantly perfect
stratification of ‖μ‖²:

    P^T(X^ss) = P^T(P^n) - Σ_{β≠0} q^d(β) P^T(Z_β^ss)

where Z_β^ss is the semistable locus of the shifted system
{α_i - β : i ∈ z_support(β)}. Torus actions only.
"""

import logging
from collections import Counter
from functools import lru_cache
from typing import List, Optional, Tuple

from sympy import Poly, ZZ

from app.models.action import WeightSystem
from app.models.cohomology import PerfectionCertificate, PoincareSeries, StratumTerm, q
from app.models.errors import NotPolynomialError, StrictlySemistableError
from app.models.geometry import HullPosition, InnerProduct
from app.services.geometry import affine_rank, hull_position_of_origin
from app.services.strata import beta_of_support, check_enumeration_size, index_set, iter_supports
from app.utils.rational import Vector, is_zero

logger = logging.getLogger("cohomology")


def projective_space_series(n: int, r: int) -> PoincareSeries:
    """H*_T(P^n) for a rank r torus: (1 + q + ... + q^n)/(1-q)^r."""
    return PoincareSeries.from_coefficients([1] * (n + 1), r)


# ─── Recursion ──────────────────────────────────────────

@lru_cache(maxsize=None)
def _semistable_series(weights: Tuple[Vector, ...], ip: InnerProduct) -> PoincareSeries:
    ws = WeightSystem(rank=ip.rank, weights=weights, ip=ip)
    total = projective_space_series(ws.n, ws.rank)
    for si in index_set(ws):
        if si.is_zero:
            continue
        shifted = ws.shifted(si.z_support.indices, tuple(si.beta))
        logger.debug(f"[Cohomology] {len(weights)} weights: beta {[str(x) for x in si.beta]} codim {si.codim}")
        total = total - _semistable_series(tuple(sorted(shifted.weights)), ip).shift(si.codim)
    return total


def semistable_series(ws: WeightSystem) -> PoincareSeries:
    return _semistable_series(tuple(sorted(ws.weights)), ws.ip)


def _semistable_supports(ws: WeightSystem) -> List[Tuple[Tuple[int, ...], HullPosition]]:
    """Supports with 0 in their hull, with their hull position."""
    check_enumeration_size(len(ws.weights))
    out = []
    for s in iter_supports(tuple(range(len(ws.weights)))):
        if is_zero(beta_of_support(ws, s)):
            out.append((s, hull_position_of_origin(ws.select(s), ws.ip)))
    return out


def quotient_betti(ws: WeightSystem) -> PoincareSeries:
    """
    Betti numbers of X⫽T as a polynomial in q. Requires stable = semistable:
    every support with 0 in its hull has 0 in the interior and full affine rank.
    """
    full = affine_rank(ws.weights)
    for s, position in _semistable_supports(ws):
        if position != HullPosition.interior or affine_rank(ws.select(s)) != full:
            raise StrictlySemistableError(s)
    series = semistable_series(ws)
    if not series.is_polynomial:
        raise NotPolynomialError(f"semistable series {series.text} is not a polynomial")
    return series


# ─── Cross-checks ───────────────────────────────────────

def polytope_h_polynomial(ws: WeightSystem) -> Optional[PoincareSeries]:
    """
    Σ_k f_k (q-1)^k over the faces of the reduced polytope
    {t ∈ Δ : Σ t_i α_i = 0}; a support S with 0 interior to its hull is a
    face of dimension |S| - 1 - r. None unless every semistable support
    is stable.
    """
    faces = Counter()
    for s, position in _semistable_supports(ws):
        if position != HullPosition.interior:
            return None
        faces[len(s) - 1 - ws.rank] += 1
    total = Poly(0, q, domain=ZZ)
    q_minus_one = Poly(q - 1, q, domain=ZZ)
    for k, count in faces.items():
        total += count * q_minus_one ** k
    return PoincareSeries.from_poly(total)


def perfection_certificate(ws: WeightSystem) -> PerfectionCertificate:
    """
    Both sides of P^T(P^n) = Σ_β q^d(β) P^T(Z_β^ss). In the regular case the
    β = 0 term is the reduced polytope's h-polynomial, so the identity is
    checked against an independent computation.
    """
    lhs = projective_space_series(ws.n, ws.rank)
    h = polytope_h_polynomial(ws)
    terms = []
    for si in index_set(ws):
        if si.is_zero:
            contribution = h if h is not None else semistable_series(ws)
        else:
            contribution = semistable_series(ws.shifted(si.z_support.indices, tuple(si.beta)))
        terms.append(StratumTerm(beta=si.beta, codim=si.codim, contribution=contribution))

    rhs = PoincareSeries.zero()
    for term in terms:
        rhs = rhs + term.contribution.shift(term.codim)
    equal = lhs == rhs
    if not equal:
        logger.error(f"[Cohomology] perfection fails: {lhs.text} != {rhs.text}")
    return PerfectionCertificate(
        lhs=lhs, rhs=rhs, equal=equal, terms=tuple(terms), independent=h is not None, h_polynomial=h
    )
