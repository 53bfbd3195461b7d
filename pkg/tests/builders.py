"""Construction helpers shared by the test modules and fixtures."""

import random
from fractions import Fraction

from app.models.action import RootDatum, WeightSystem
from app.models.geometry import InnerProduct
from app.utils.rational import to_vector


def weights(*rows, gram=None, labels=None) -> WeightSystem:
    """weights(2, 1, -1) for rank 1, weights((1, 0), (0, 1)) otherwise."""
    vectors = [row if isinstance(row, (tuple, list)) else (row,) for row in rows]
    return WeightSystem.of(vectors, gram=gram, labels=labels)


def root_datum(simple, positive, gram=None) -> RootDatum:
    rank = len(simple[0]) if simple else len(gram)
    ip = InnerProduct(gram=tuple(to_vector(r) for r in gram)) if gram else InnerProduct.identity(rank)
    return RootDatum(
        ip=ip,
        simple_roots=tuple(to_vector(a) for a in simple),
        positive_roots=tuple(to_vector(a) for a in positive),
    )


def random_system(rng: random.Random, max_rank: int, max_n: int, bound: int = 5) -> WeightSystem:
    rank = rng.randint(1, max_rank)
    count = rng.randint(1, max_n + 1)
    rows = [tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in range(count)]
    return WeightSystem.of(rows)


def random_rational(rng: random.Random, bound: int = 6, denominator: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, denominator))


def random_vector(rng: random.Random, rank: int) -> tuple:
    return tuple(random_rational(rng) for _ in range(rank))
