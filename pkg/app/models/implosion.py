from typing import Tuple

from pydantic import model_validator

from app.models.action import RootDatum
from app.models.base import FrozenModel
from app.models.errors import ActionValidationError
from app.utils.rational import RationalVector


class ParabolicData(FrozenModel):
    """A root datum with a subset S_P of its simple roots (0-based indices)."""
    rd: RootDatum
    sp: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_sp(self) -> "ParabolicData":
        count = len(self.rd.simple_roots)
        if any(i < 0 or i >= count for i in self.sp):
            raise ActionValidationError("sp", f"simple-root indices must lie in 0..{count - 1}")
        if len(set(self.sp)) != len(self.sp):
            raise ActionValidationError("sp", "simple-root indices must be distinct")
        return self

    @property
    def parabolic_simple_roots(self) -> Tuple[Tuple, ...]:
        return tuple(self.rd.simple_roots[i] for i in sorted(self.sp))


class DominantRepresentative(FrozenModel):
    representative: RationalVector
    # 1-based simple-reflection labels, applied left to right
    word: Tuple[int, ...]


class FaceData(FrozenModel):
    vanishing_roots: Tuple[RationalVector, ...]
    face_equations: Tuple[RationalVector, ...]
    stabilizer_is_torus: bool
