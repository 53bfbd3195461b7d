"""
Poincaré series N(q)/(1-q)^e with N an integer polynomial in q = t².

Arithmetic goes through sympy's dense integer polynomials; the record
itself only stores the ascending coefficient list so it stays hashable
and serializes to plain JSON.
"""

from math import comb
from typing import List, Optional, Sequence, Tuple

from pydantic import Field, computed_field
from sympy import Poly, ZZ, symbols

from app.models.base import FrozenModel
from app.utils.rational import RationalVector

q = symbols("q")

_ONE_MINUS_Q = Poly(1 - q, q, domain=ZZ)


def _poly(coefficients: Sequence[int]) -> Poly:
    # Poly.from_list takes coefficients from the leading term down
    return Poly.from_list(list(reversed(coefficients)) or [0], q, domain=ZZ)


def _coefficients(poly: Poly) -> Tuple[int, ...]:
    if poly.is_zero:
        return ()
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


class PoincareSeries(FrozenModel):
    numerator: Tuple[int, ...] = ()
    denom_power: int = Field(0, ge=0)

    # ─── Construction ───────────────────────────────────

    @classmethod
    def from_poly(cls, poly: Poly, denom_power: int = 0) -> "PoincareSeries":
        """Canonical form: (1-q) divided out of the numerator while possible."""
        while denom_power > 0 and not poly.is_zero and poly.eval(1) == 0:
            quotient, remainder = poly.div(_ONE_MINUS_Q)
            if not remainder.is_zero:
                break
            poly = quotient
            denom_power -= 1
        if poly.is_zero:
            denom_power = 0
        return cls(numerator=_coefficients(poly), denom_power=denom_power)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int], denom_power: int = 0) -> "PoincareSeries":
        return cls.from_poly(_poly(coefficients), denom_power)

    @classmethod
    def zero(cls) -> "PoincareSeries":
        return cls()

    @classmethod
    def one(cls) -> "PoincareSeries":
        return cls(numerator=(1,))

    # ─── Arithmetic ─────────────────────────────────────

    @property
    def poly(self) -> Poly:
        return _poly(self.numerator)

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def is_polynomial(self) -> bool:
        return self.denom_power == 0

    def _lift(self, power: int) -> Poly:
        # numerator over (1-q)^power, power >= denom_power
        return self.poly * _ONE_MINUS_Q ** (power - self.denom_power)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        e = max(self.denom_power, other.denom_power)
        return PoincareSeries.from_poly(self._lift(e) + other._lift(e), e)

    def __neg__(self) -> "PoincareSeries":
        return PoincareSeries(numerator=tuple(-c for c in self.numerator), denom_power=self.denom_power)

    def __sub__(self, other: "PoincareSeries") -> "PoincareSeries":
        return self + (-other)

    def shift(self, degree: int) -> "PoincareSeries":
        """Multiply by q^degree."""
        if self.is_zero or degree == 0:
            return self
        return PoincareSeries(numerator=(0,) * degree + self.numerator, denom_power=self.denom_power)

    def times_one_minus_q(self, power: int) -> "PoincareSeries":
        """Multiply by (1-q)^power, power >= 0."""
        return PoincareSeries.from_poly(self.poly * _ONE_MINUS_Q ** power, self.denom_power)

    # ─── Inspection ─────────────────────────────────────

    def expand(self, degree: int) -> List[int]:
        """Power-series coefficients of q^0..q^degree."""
        e = self.denom_power
        if e == 0:
            return [self.numerator[k] if k < len(self.numerator) else 0 for k in range(degree + 1)]
        # coefficients of 1/(1-q)^e
        series = [comb(k + e - 1, e - 1) for k in range(degree + 1)]
        out = [0] * (degree + 1)
        for i, c in enumerate(self.numerator):
            for k in range(degree + 1 - i):
                out[i + k] += c * series[k]
        return out

    def is_palindromic(self) -> bool:
        return self.numerator == tuple(reversed(self.numerator))

    @computed_field
    @property
    def text(self) -> str:
        num = _format_poly(self.numerator)
        if self.denom_power == 0:
            return num
        if len([c for c in self.numerator if c]) > 1:
            num = f"({num})"
        denom = "(1-q)" if self.denom_power == 1 else f"(1-q)^{self.denom_power}"
        return f"{num}/{denom}"


def _format_poly(coefficients: Sequence[int]) -> str:
    terms = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += sign + body
    return out


class StratumTerm(FrozenModel):
    """One summand q^d(β)·P(β) of the perfection identity."""
    beta: RationalVector
    codim: int
    contribution: PoincareSeries


class PerfectionCertificate(FrozenModel):
    lhs: PoincareSeries
    rhs: PoincareSeries
    equal: bool
    terms: Tuple[StratumTerm, ...]
    # True when the β = 0 term came from the reduced polytope, not the recursion
    independent: bool
    h_polynomial: Optional[PoincareSeries] = None
