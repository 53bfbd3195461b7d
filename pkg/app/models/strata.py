from enum import Enum
from typing import Optional, Tuple

from pydantic import Field, model_validator

from app.models.action import SupportSet
from app.models.base import FrozenModel
from app.utils.rational import Rational, RationalVector, Vector, is_zero


class StratumIndex(FrozenModel):
    """
    One β of the index set with its stratum data. z_support collects the
    weights on the level hyperplane ⟨α,β⟩ = ‖β‖², y_support those on or
    above it.
    """
    beta: RationalVector
    norm_sq: Rational
    z_support: SupportSet
    y_support: SupportSet
    codim: int = Field(..., ge=0)
    fiber_dim: int = Field(..., ge=0)
    stabilizer_roots: Tuple[RationalVector, ...] = ()

    @model_validator(mode="after")
    def _check_supports(self) -> "StratumIndex":
        if not self.z_support.issubset(self.y_support):
            raise ValueError("z_support must be contained in y_support")
        if self.fiber_dim != len(self.y_support) - len(self.z_support):
            raise ValueError("fiber_dim must equal |y_support| - |z_support|")
        return self

    @property
    def is_zero(self) -> bool:
        return is_zero(self.beta)


class StabilityTag(str, Enum):
    unstable = "Unstable"
    semistable = "Semistable"
    stable = "Stable"


class StabilityClass(FrozenModel):
    tag: StabilityTag
    beta: Optional[RationalVector] = None

    @model_validator(mode="after")
    def _check_beta(self) -> "StabilityClass":
        if self.tag == StabilityTag.unstable:
            if self.beta is None or is_zero(self.beta):
                raise ValueError("Unstable carries a nonzero beta")
        elif self.beta is not None:
            raise ValueError(f"{self.tag.value} carries no beta")
        return self

    @classmethod
    def stable(cls) -> "StabilityClass":
        return cls(tag=StabilityTag.stable)

    @classmethod
    def semistable(cls) -> "StabilityClass":
        return cls(tag=StabilityTag.semistable)

    @classmethod
    def unstable(cls, beta: Vector) -> "StabilityClass":
        return cls(tag=StabilityTag.unstable, beta=beta)

    @property
    def is_semistable(self) -> bool:
        return self.tag != StabilityTag.unstable


class DescentResult(FrozenModel):
    """Outcome of a numerical ‖μ‖² descent run. `limit` is the final moment value."""
    limit: Tuple[float, ...]
    steps: int
    residual: float
    converged: bool
