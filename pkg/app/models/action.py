from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ConfigDict, Field, PrivateAttr, field_validator, model_validator

from app.models.base import FrozenModel
from app.models.errors import ActionValidationError
from app.models.geometry import InnerProduct
from app.utils.rational import (
    Rational,
    RationalVector,
    Vector,
    ZERO,
    combine,
    matrix_rank,
    scale,
    solve_linear,
    sub,
    to_vector,
)


# ─── Weight Systems ─────────────────────────────────────

class WeightSystem(FrozenModel):
    """
    Weights α_0..α_n of a diagonal torus action on P^n, written in
    the coordinates of t*, together with the invariant inner product.
    """
    rank: int = Field(..., ge=1)
    weights: Tuple[RationalVector, ...]
    ip: InnerProduct
    labels: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_weights(self) -> "WeightSystem":
        if not self.weights:
            raise ActionValidationError("weights", "at least one weight is required")
        if any(len(w) != self.rank for w in self.weights):
            raise ActionValidationError("weights", "rank mismatch")
        if self.ip.rank != self.rank:
            raise ActionValidationError("gram", "rank mismatch")
        if self.labels is not None:
            if len(self.labels) != len(self.weights):
                raise ActionValidationError("labels", "one label per weight is required")
            if len(set(self.labels)) != len(self.labels):
                raise ActionValidationError("labels", "labels must be distinct")
        return self

    @classmethod
    def of(cls, weights: Sequence[Sequence[Any]], gram: Optional[Sequence[Sequence[Any]]] = None,
           labels: Optional[Sequence[str]] = None) -> "WeightSystem":
        vectors = tuple(to_vector(w) for w in weights)
        rank = len(vectors[0]) if vectors else 1
        ip = InnerProduct(gram=tuple(to_vector(row) for row in gram)) if gram else InnerProduct.identity(rank)
        return cls(rank=rank, weights=vectors, ip=ip, labels=tuple(labels) if labels else None)

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    def select(self, indices: Sequence[int]) -> List[Vector]:
        return [self.weights[i] for i in indices]

    def shifted(self, indices: Sequence[int], shift: Vector) -> "WeightSystem":
        """The system {α_i - shift : i in indices}, same rank and inner product."""
        return WeightSystem(rank=self.rank, weights=tuple(sub(self.weights[i], shift) for i in indices), ip=self.ip)


# ─── Root Data ──────────────────────────────────────────

class RootDatum(FrozenModel):
    """
    Positive roots R⁺ and simple roots S ⊆ R⁺, checked at construction:
    S linearly independent, every positive root a nonnegative integer
    combination of S, and R = R⁺ ∪ -R⁺ closed under its own reflections.
    """
    ip: InnerProduct
    simple_roots: Tuple[RationalVector, ...] = ()
    positive_roots: Tuple[RationalVector, ...] = ()

    _expansions: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_roots(self) -> "RootDatum":
        r = self.ip.rank
        for field, roots in (("roots.simple", self.simple_roots), ("roots.positive", self.positive_roots)):
            if any(len(a) != r for a in roots):
                raise ActionValidationError(field, "rank mismatch")
            if any(all(x == 0 for x in a) for a in roots):
                raise ActionValidationError(field, "roots must be nonzero")
        if len(set(self.positive_roots)) != len(self.positive_roots):
            raise ActionValidationError("roots.positive", "positive roots must be distinct")
        missing = [a for a in self.simple_roots if a not in self.positive_roots]
        if missing:
            raise ActionValidationError("roots.simple", "simple roots must be positive roots")
        if matrix_rank(self.simple_roots) != len(self.simple_roots):
            raise ActionValidationError("roots.simple", "simple roots are not linearly independent")
        if self.positive_roots and not self.simple_roots:
            raise ActionValidationError("roots.simple", "positive roots given without simple roots")
        self._expansions = tuple(self._expand(gamma) for gamma in self.positive_roots)
        self._check_closure()
        return self

    def _expand(self, gamma: Vector) -> Tuple[int, ...]:
        simple = self.simple_roots
        gram = [[self.ip.dot(a, b) for b in simple] for a in simple]
        rhs = [self.ip.dot(a, gamma) for a in simple]
        coefficients = solve_linear(gram, rhs)
        if coefficients is None or combine(coefficients, simple) != tuple(gamma):
            raise ActionValidationError("roots.positive", f"root {_fmt(gamma)} is not in the span of the simple roots")
        if any(c < 0 or c.denominator != 1 for c in coefficients):
            raise ActionValidationError(
                "roots.positive", f"root {_fmt(gamma)} is not a nonnegative integer combination of simple roots"
            )
        return tuple(int(c) for c in coefficients)

    def _check_closure(self) -> None:
        roots = set(self.all_roots)
        for alpha in self.positive_roots:
            for gamma in roots:
                if self.reflect(gamma, alpha) not in roots:
                    raise ActionValidationError("roots.positive", "root system is not closed under reflections")

    @property
    def rank(self) -> int:
        return self.ip.rank

    @property
    def all_roots(self) -> Tuple[Vector, ...]:
        return tuple(self.positive_roots) + tuple(scale(Fraction(-1), a) for a in self.positive_roots)

    @property
    def expansions(self) -> Tuple[Tuple[int, ...], ...]:
        """Simple-root coordinates of each positive root, in positive_roots order."""
        return self._expansions

    @property
    def is_torus(self) -> bool:
        return not self.positive_roots

    def reflect(self, x: Vector, alpha: Vector) -> Vector:
        c = 2 * self.ip.dot(x, alpha) / self.ip.norm_sq(alpha)
        if c == 0:
            return tuple(x)
        return sub(x, scale(c, alpha))


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# ─── Points ─────────────────────────────────────────────

class SupportSet(FrozenModel):
    """Nonempty set of coordinate indices, stored sorted."""
    indices: Tuple[int, ...]

    @field_validator("indices")
    @classmethod
    def _normalize(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("support must be nonempty")
        if any(i < 0 for i in v):
            raise ValueError("support indices must be nonnegative")
        return tuple(sorted(set(v)))

    @classmethod
    def of(cls, *indices: int) -> "SupportSet":
        return cls(indices=tuple(indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def issubset(self, other: "SupportSet") -> bool:
        return set(self.indices) <= set(other.indices)


class PointSample(FrozenModel):
    """Coordinate masses t_i = |x_i|²/|x|² of a point of P^n."""
    masses: Tuple[Rational, ...]

    @field_validator("masses")
    @classmethod
    def _check_masses(cls, v: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
        if any(t < 0 for t in v):
            raise ValueError("masses must be nonnegative")
        if sum(v, ZERO) != 1:
            raise ValueError("masses must sum to 1")
        return v

    @property
    def support(self) -> SupportSet:
        return SupportSet(indices=tuple(i for i, t in enumerate(self.masses) if t > 0))


# ─── Input Documents ────────────────────────────────────

class RootsDocument(FrozenModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    simple: List[List[Rational]] = []
    positive: List[List[Rational]] = []


class ActionDocument(FrozenModel):
    """Schema of the JSON action document read by the CLI."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    rank: int = Field(..., ge=1)
    weights: List[List[Rational]] = Field(..., min_length=1)
    gram: Optional[List[List[Rational]]] = None
    labels: Optional[List[str]] = None
    roots: Optional[RootsDocument] = None

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)
