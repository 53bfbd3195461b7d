"""
Sweep cones t*_(P)+ = ∪_{w ∈ W^(P)} w·t₊ for a parabolic subset S_P of
simple roots, decided by descent to an S_P-dominant representative,
with a brute-force enumeration of W^(P) kept as a cross-check.
"""

import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from app.config import get_settings
from app.models.errors import GroupTooLargeError, NotInChamberError, RankMismatchError
from app.models.implosion import DominantRepresentative, FaceData, ParabolicData
from app.services.action import chamber_membership
from app.utils.rational import ONE, ZERO, Vector, scale, to_vector

logger = logging.getLogger("implosion")

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _check_rank(xi, pd: ParabolicData) -> Vector:
    xi = to_vector(xi)
    if len(xi) != pd.rd.rank:
        raise RankMismatchError(f"vector of length {len(xi)} in a rank {pd.rd.rank} root datum")
    return xi


def parabolic_roots(pd: ParabolicData) -> Tuple[Vector, ...]:
    """R^(P): roots whose simple-root expansion is supported on S_P."""
    sp = set(pd.sp)
    positive = tuple(
        gamma for gamma, coefficients in zip(pd.rd.positive_roots, pd.rd.expansions)
        if all(c == 0 or i in sp for i, c in enumerate(coefficients))
    )
    return positive + tuple(scale(-ONE, gamma) for gamma in positive)


def dominant_representative(xi, pd: ParabolicData) -> DominantRepresentative:
    x = _check_rank(xi, pd)
    rd = pd.rd
    word: List[int] = []
    while True:
        k = next((i for i in sorted(pd.sp) if rd.ip.dot(x, rd.simple_roots[i]) < 0), None)
        if k is None:
            return DominantRepresentative(representative=x, word=tuple(word))
        x = rd.reflect(x, rd.simple_roots[k])
        word.append(k + 1)


def apply_word(xi, word: Tuple[int, ...], pd: ParabolicData) -> Vector:
    x = _check_rank(xi, pd)
    for label in word:
        x = pd.rd.reflect(x, pd.rd.simple_roots[label - 1])
    return x


def in_sweep_cone(xi, pd: ParabolicData) -> bool:
    rep = dominant_representative(xi, pd)
    return chamber_membership(rep.representative, pd.rd)


# ─── Brute Force ────────────────────────────────────────

def _reflection_matrix(alpha: Vector, gram: Matrix) -> Matrix:
    # s_α = I - 2 α (Gα)ᵀ / (αᵀGα)
    r = len(alpha)
    g_alpha = [sum((gram[i][j] * alpha[j] for j in range(r)), ZERO) for i in range(r)]
    norm = sum((alpha[i] * g_alpha[i] for i in range(r)), ZERO)
    return tuple(
        tuple((ONE if i == j else ZERO) - 2 * alpha[i] * g_alpha[j] / norm for j in range(r))
        for i in range(r)
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def parabolic_weyl_group(pd: ParabolicData) -> Tuple[Matrix, ...]:
    """All elements of W^(P) as matrices, by closure of the generators."""
    limit = get_settings().WEYL_GROUP_LIMIT
    r = pd.rd.rank
    identity = tuple(tuple(ONE if i == j else ZERO for j in range(r)) for i in range(r))
    generators = [_reflection_matrix(a, pd.rd.ip.gram) for a in pd.parabolic_simple_roots]
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            ws = _matmul(s, w)
            if ws not in seen:
                seen.add(ws)
                order.append(ws)
                if len(order) > limit:
                    raise GroupTooLargeError(f"W^(P) has more than {limit} elements")
                queue.append(ws)
    logger.debug(f"[Implosion] |W^(P)| = {len(order)} for S_P = {list(pd.sp)}")
    return tuple(order)


def brute_force_sweep(xi, pd: ParabolicData) -> bool:
    """xi ∈ w·t₊ for some w ∈ W^(P); the group is closed under inverses, so test w·xi ∈ t₊."""
    x = _check_rank(xi, pd)
    for w in parabolic_weyl_group(pd):
        image = tuple(sum((w[i][j] * x[j] for j in range(len(x))), ZERO) for i in range(len(x)))
        if chamber_membership(image, pd.rd):
            return True
    return False


# ─── Faces ──────────────────────────────────────────────

def face_data(xi, pd: ParabolicData) -> FaceData:
    x = _check_rank(xi, pd)
    rd = pd.rd
    if not chamber_membership(x, rd):
        raise NotInChamberError("xi is not in the positive chamber")
    vanishing = tuple(gamma for gamma in rd.all_roots if rd.ip.dot(x, gamma) == 0)
    parabolic = set(parabolic_roots(pd))
    equations = tuple(
        gamma for gamma in rd.positive_roots
        if rd.ip.dot(x, gamma) == 0 and tuple(gamma) not in parabolic
    )
    return FaceData(
        vanishing_roots=vanishing,
        face_equations=equations,
        stabilizer_is_torus=not equations,
    )
