from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple

from pydantic import PrivateAttr, model_validator

from app.models.base import FrozenModel
from app.models.errors import ActionValidationError
from app.utils.rational import ONE, ZERO, Rational, RationalVector, leading_minors_positive


class HullPosition(str, Enum):
    outside = "Outside"
    boundary = "Boundary"
    interior = "Interior"


class Interval(FrozenModel):
    """Closed rational interval [lo, hi]."""
    lo: Rational
    hi: Rational

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi


class InnerProduct(FrozenModel):
    """
    Invariant inner product on t, given by its Gram matrix in the
    coordinates the weights are written in.
    """
    gram: Tuple[RationalVector, ...]

    _identity: bool = PrivateAttr(default=False)

    @model_validator(mode="after")
    def _check_gram(self) -> "InnerProduct":
        r = len(self.gram)
        if r == 0:
            raise ActionValidationError("gram", "gram must be a nonempty square matrix")
        if any(len(row) != r for row in self.gram):
            raise ActionValidationError("gram", "gram must be square")
        for i in range(r):
            for j in range(i + 1, r):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ActionValidationError("gram", "gram not symmetric")
        if not leading_minors_positive(self.gram):
            raise ActionValidationError("gram", "gram not positive definite")
        return self

    def model_post_init(self, __context) -> None:
        r = len(self.gram)
        # runs before _check_gram, so the shape is not yet known to be square
        self._identity = all(len(row) == r for row in self.gram) and all(
            self.gram[i][j] == (ONE if i == j else ZERO) for i in range(r) for j in range(r)
        )

    @classmethod
    def identity(cls, rank: int) -> "InnerProduct":
        return cls(gram=tuple(tuple(ONE if i == j else ZERO for j in range(rank)) for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        if self._identity:
            return sum((a * b for a, b in zip(u, v)), ZERO)
        total = ZERO
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.gram[i]
            total += a * sum((g * b for g, b in zip(row, v)), ZERO)
        return total

    def norm_sq(self, u: Sequence[Fraction]) -> Fraction:
        return self.dot(u, u)
