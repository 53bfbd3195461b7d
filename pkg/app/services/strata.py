"""
Morse stratification of ‖μ‖² for a diagonal torus action on P^n.

A support S (coordinates where the point is nonzero) flows to the
min-norm point β(S) of conv{α_i : i ∈ S}. The index set B collects the
β that pass the fixed-point criterion β = β(z_support(β)); with a root
datum only the β in the positive chamber are kept.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from app.config import get_settings
from app.models.action import RootDatum, SupportSet, WeightSystem
from app.models.errors import NegativeCodimError, TooLargeError
from app.models.geometry import HullPosition, InnerProduct
from app.models.strata import StabilityClass, StratumIndex
from app.services.action import chamber_membership
from app.services.geometry import hull_position_of_origin, min_norm_point
from app.utils.rational import Vector

logger = logging.getLogger("strata")


# ─── Enumeration ────────────────────────────────────────

def check_enumeration_size(count: int) -> None:
    limit = get_settings().ENUMERATION_LIMIT
    if count > limit:
        raise TooLargeError(f"{count} weights exceed the enumeration limit of {limit}")


def iter_supports(indices: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Nonempty subsets of `indices`, by size then lexicographically."""
    for size in range(1, len(indices) + 1):
        yield from combinations(indices, size)


@lru_cache(maxsize=None)
def _min_norm(points: Tuple[Vector, ...], ip: InnerProduct) -> Vector:
    return min_norm_point(points, ip)


def beta_of_points(points, ip: InnerProduct) -> Vector:
    """Memoized min-norm point, keyed by the set of distinct points."""
    return _min_norm(tuple(sorted(set(tuple(p) for p in points))), ip)


def beta_of_support(ws: WeightSystem, support: Tuple[int, ...]) -> Vector:
    return beta_of_points(ws.select(support), ws.ip)


@lru_cache(maxsize=None)
def _candidate_betas(points: Tuple[Vector, ...], ip: InnerProduct) -> Tuple[Vector, ...]:
    found = set()
    for subset in iter_supports(tuple(range(len(points)))):
        found.add(beta_of_points([points[i] for i in subset], ip))
    logger.debug(f"[Strata] {len(points)} distinct weights give {len(found)} candidate betas")
    return tuple(found)


# ─── Index Set ──────────────────────────────────────────

def _codim(beta: Vector, ws: WeightSystem, rd: Optional[RootDatum]) -> int:
    norm = ws.ip.norm_sq(beta)
    below = sum(1 for a in ws.weights if ws.ip.dot(a, beta) < norm)
    roots = 0
    if rd is not None:
        roots = sum(1 for gamma in rd.positive_roots if ws.ip.dot(gamma, beta) > 0)
    d = below - roots
    if d < 0:
        raise NegativeCodimError(f"codimension {below} - {roots} is negative; the root datum is inconsistent")
    return d


def _stratum(beta: Vector, ws: WeightSystem, rd: Optional[RootDatum]) -> StratumIndex:
    ip = ws.ip
    norm = ip.norm_sq(beta)
    levels = [ip.dot(a, beta) for a in ws.weights]
    z = tuple(i for i, level in enumerate(levels) if level == norm)
    y = tuple(i for i, level in enumerate(levels) if level >= norm)
    stabilizer = ()
    if rd is not None:
        stabilizer = tuple(gamma for gamma in rd.all_roots if ip.dot(gamma, beta) == 0)
    return StratumIndex(
        beta=beta,
        norm_sq=norm,
        z_support=SupportSet(indices=z),
        y_support=SupportSet(indices=y),
        codim=_codim(beta, ws, rd),
        fiber_dim=len(y) - len(z),
        stabilizer_roots=stabilizer,
    )


def _sort_key(si: StratumIndex):
    return (si.norm_sq, tuple(si.beta))


def index_set(ws: WeightSystem, rd: Optional[RootDatum] = None) -> List[StratumIndex]:
    check_enumeration_size(len(ws.weights))
    distinct = tuple(sorted(set(ws.weights)))
    result = []
    for beta in _candidate_betas(distinct, ws.ip):
        norm = ws.ip.norm_sq(beta)
        z_points = [a for a in ws.weights if ws.ip.dot(a, beta) == norm]
        if beta_of_points(z_points, ws.ip) != beta:
            continue
        if rd is not None and not chamber_membership(beta, rd):
            continue
        result.append(_stratum(beta, ws, rd))
    result.sort(key=_sort_key)
    logger.debug(f"[Strata] index set has {len(result)} members")
    return result


def stratum_codim(si: StratumIndex, ws: WeightSystem, rd: Optional[RootDatum] = None) -> int:
    return _codim(tuple(si.beta), ws, rd)


def stratum_dimension(si: StratumIndex, ws: WeightSystem) -> int:
    """Complex dimension of S_β inside P^n."""
    return ws.n - si.codim


def find_stratum(strata: List[StratumIndex], beta: Vector) -> Optional[StratumIndex]:
    beta = tuple(beta)
    return next((si for si in strata if tuple(si.beta) == beta), None)


# ─── Supports ───────────────────────────────────────────

def classify_support(s: SupportSet, ws: WeightSystem) -> StabilityClass:
    points = ws.select(s.indices)
    position = hull_position_of_origin(points, ws.ip)
    if position == HullPosition.interior:
        return StabilityClass.stable()
    if position == HullPosition.boundary:
        return StabilityClass.semistable()
    return StabilityClass.unstable(beta_of_points(points, ws.ip))


def strata_partition(ws: WeightSystem) -> Dict[SupportSet, Vector]:
    """
    β of every nonempty support. β(S) is the min-norm point of the
    S-weights, which is 0 exactly when classify_support(S) is semistable.
    """
    check_enumeration_size(len(ws.weights))
    indices = tuple(range(len(ws.weights)))
    return {
        SupportSet(indices=s): beta_of_support(ws, s)
        for s in iter_supports(indices)
    }


def closure_relations(ws: WeightSystem) -> List[Tuple[Vector, Vector]]:
    """
    Pairs (β', β'') with β'' ≠ β' such that a support S'' ⊆ S' has
    β(S') = β' and β(S'') = β''.
    """
    partition = strata_partition(ws)
    pairs = set()
    for support, beta in partition.items():
        members = support.indices
        for s in iter_supports(members):
            if len(s) == len(members):
                continue
            inner = partition[SupportSet(indices=s)]
            if inner != beta:
                pairs.add((beta, inner))
    ip = ws.ip
    return sorted(pairs, key=lambda p: (ip.norm_sq(p[0]), p[0], ip.norm_sq(p[1]), p[1]))
