from typing import Optional, Tuple

from pydantic import Field, model_validator

from app.models.action import SupportSet
from app.models.base import FrozenModel
from app.models.cohomology import PoincareSeries
from app.utils.rational import Rational, RationalVector


class EpsilonWindow(FrozenModel):
    """
    Wall levels s > 0 along the ray s·β. eps_max bounds the first chamber,
    eps_limit is the largest ε with a nonempty quotient.
    """
    beta: RationalVector
    walls: Tuple[Rational, ...]
    eps_max: Optional[Rational] = None
    eps_limit: Optional[Rational] = None
    empty_for_all_eps: bool

    @model_validator(mode="after")
    def _check_window(self) -> "EpsilonWindow":
        if list(self.walls) != sorted(set(self.walls)):
            raise ValueError("walls must be sorted and distinct")
        if self.empty_for_all_eps != (self.eps_max is None):
            raise ValueError("eps_max is present exactly when the window is nonempty")
        return self


class QuotientReport(FrozenModel):
    beta: RationalVector
    epsilon: Rational
    nonempty: bool
    complex_dim: Optional[int] = Field(None, ge=0)
    betti: Optional[PoincareSeries] = None
    locally_free: bool
    # every semistable support meets z_support
    within_stratum: bool = True
    semistable_supports: Tuple[SupportSet, ...] = ()

    @model_validator(mode="after")
    def _check_report(self) -> "QuotientReport":
        if self.nonempty != bool(self.semistable_supports):
            raise ValueError("nonempty must match the semistable supports")
        if (self.complex_dim is not None or self.betti is not None) and not (self.nonempty and self.locally_free):
            raise ValueError("complex_dim and betti require a nonempty, locally free quotient")
        return self


class QuotientChamber(FrozenModel):
    """Open interval (eps_lo, eps_hi) of ε with its representative report."""
    eps_lo: Rational
    eps_hi: Rational
    report: QuotientReport
