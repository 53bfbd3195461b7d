"""
Exact rational helpers shared by every service.

Rationals are `fractions.Fraction` (always in lowest terms with a positive
denominator, so equality is structural). `Rational` is the pydantic-facing
annotation: documents may carry ints or "p/q" strings, reports always carry
"p/q" strings.
"""

from fractions import Fraction
from typing import Annotated, Any, List, Optional, Sequence, Tuple

from pydantic import PlainSerializer, PlainValidator
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    # Floats are refused: every input must be exact.
    raise ValueError(f"expected an integer or a 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]

RationalVector = Tuple[Rational, ...]


def to_vector(values: Sequence[Any]) -> Vector:
    return tuple(parse_rational(v) for v in values)


def format_vector(v: Sequence[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


# ─── Vector Arithmetic ──────────────────────────────────

def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def combine(coefficients: Sequence[Fraction], points: Sequence[Vector]) -> Vector:
    """Σ c_i p_i, exact."""
    rank = len(points[0])
    out = [ZERO] * rank
    for c, p in zip(coefficients, points):
        if c == 0:
            continue
        for k in range(rank):
            out[k] += c * p[k]
    return tuple(out)


def is_zero(v: Vector) -> bool:
    return all(x == 0 for x in v)


# ─── Exact Linear Algebra ───────────────────────────────

def _domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    entries = [[QQ(x.numerator, x.denominator) for x in row] for row in rows]
    return DomainMatrix(entries, (len(entries), ncols), QQ)


def _to_fractions(matrix: DomainMatrix) -> List[Fraction]:
    return [Fraction(int(x.p), int(x.q)) for x in matrix.to_Matrix()]


def solve_linear(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Exact solution of a square system over QQ, or None when the matrix is singular."""
    n = len(matrix)
    if n == 0:
        return []
    a = _domain_matrix([tuple(map(Fraction, row)) for row in matrix], n)
    if a.det() == 0:
        return None
    b = _domain_matrix([(Fraction(x),) for x in rhs], 1)
    return _to_fractions(a.lu_solve(b))


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    work = [tuple(map(Fraction, r)) for r in rows if any(x != 0 for x in r)]
    if not work:
        return 0
    return _domain_matrix(work, len(work[0])).rank()


def leading_minors_positive(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    rows = [tuple(map(Fraction, r)) for r in matrix]
    return all(
        _domain_matrix([row[:k] for row in rows[:k]], k).det() > 0
        for k in range(1, len(rows) + 1)
    )
