import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.models.errors import (
    DegenerateCorralError,
    EmptyInputError,
    RankMismatchError,
    StrataError,
    ZeroDirectionError,
)
from app.models.geometry import HullPosition, InnerProduct, Interval
from app.services.geometry import (
    affine_minimizer,
    affine_rank,
    hull_position_of_origin,
    min_norm_point,
    ray_hull_window,
)
from app.utils.rational import leading_minors_positive, matrix_rank, solve_linear, sub, to_vector
from tests.oracles import face_enumeration_min_norm


def V(*rows):
    return [to_vector(r if isinstance(r, tuple) else (r,)) for r in rows]


I1 = InnerProduct.identity(1)
I2 = InnerProduct.identity(2)


# ─── Min-Norm Point ─────────────────────────────────────

@pytest.mark.parametrize("points, expected", [
    (V((3, 4)), (3, 4)),
    (V((1, 0), (0, 1)), (Fraction(1, 2), Fraction(1, 2))),
    (V((-1, 0), (1, 1)), (Fraction(-1, 5), Fraction(2, 5))),
    (V((1, 0), (0, 1), (-1, -1)), (0, 0)),
])
def test_min_norm_point_examples(points, expected):
    assert min_norm_point(points, I2) == to_vector(expected)


def test_min_norm_point_respects_gram():
    ip = InnerProduct(gram=(to_vector((2, 0)), to_vector((0, 1))))
    # minimize 2a² + (1-a)²
    assert min_norm_point(V((1, 0), (0, 1)), ip) == (Fraction(1, 3), Fraction(2, 3))


def test_min_norm_point_ignores_duplicates():
    assert min_norm_point(V(2, 2, 1), I1) == (Fraction(1),)


def test_min_norm_point_rejects_bad_input():
    with pytest.raises(EmptyInputError):
        min_norm_point([], I1)
    with pytest.raises(RankMismatchError):
        min_norm_point([to_vector((1,)), to_vector((1, 2))], I1)
    with pytest.raises(RankMismatchError):
        min_norm_point(V((1, 2)), I1)


def test_degenerate_corral_is_a_library_error(monkeypatch):
    monkeypatch.setattr("app.services.geometry.affine_minimizer", lambda points, ip: None)
    with pytest.raises(DegenerateCorralError) as info:
        min_norm_point(V((1, 0), (0, 1)), I2)
    assert isinstance(info.value, StrataError)
    assert info.value.exit_code == 1


def test_min_norm_matches_face_enumeration_oracle():
    rng = random.Random(7)
    for _ in range(200):
        rank = rng.randint(1, 4)
        count = rng.randint(1, 8)
        points = [tuple(Fraction(rng.randint(-6, 6)) for _ in range(rank)) for _ in range(count)]
        ip = InnerProduct.identity(rank)

        p = min_norm_point(points, ip)
        assert p == face_enumeration_min_norm(points, ip)
        for other in points:
            assert ip.dot(p, sub(other, p)) >= 0


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=6))
def test_origin_in_hull_iff_min_norm_is_zero(rows):
    points = V(*rows)
    at_origin = min_norm_point(points, I2) == (0, 0)
    assert at_origin == (hull_position_of_origin(points, I2) != HullPosition.outside)


# ─── Hull Position ──────────────────────────────────────

@pytest.mark.parametrize("points, expected", [
    (V(1, -1), HullPosition.interior),
    (V(1, 0), HullPosition.boundary),
    (V(1, 2), HullPosition.outside),
    (V(0), HullPosition.boundary),
])
def test_hull_position_rank_one(points, expected):
    assert hull_position_of_origin(points, I1) == expected


@pytest.mark.parametrize("points, expected", [
    (V((1, 0), (0, 1)), HullPosition.outside),
    (V((1, 0), (0, 1), (-1, -1)), HullPosition.interior),
    # 0 inside a segment is still on the boundary of the ambient plane
    (V((1, 0), (-1, 0)), HullPosition.boundary),
    (V((1, 0), (-1, 0), (0, 1)), HullPosition.boundary),
])
def test_hull_position_rank_two(points, expected):
    assert hull_position_of_origin(points, I2) == expected


# ─── Ray Windows ────────────────────────────────────────

def test_ray_hull_window_examples():
    assert ray_hull_window(to_vector((1,)), V(1, 2), I1) == Interval(lo=Fraction(1), hi=Fraction(2))
    half = Fraction(1, 2)
    assert ray_hull_window(to_vector((1, 1)), V((1, 0), (0, 1)), I2) == Interval(lo=half, hi=half)
    assert ray_hull_window(to_vector((1,)), V(-1, -2), I1) is None


def test_ray_hull_window_starts_at_origin_when_hull_contains_it():
    window = ray_hull_window(to_vector((2,)), V(-1, 3), I1)
    assert window == Interval(lo=Fraction(0), hi=Fraction(3, 2))
    assert window.contains(Fraction(1))


def test_ray_hull_window_rejects_zero_direction():
    with pytest.raises(ZeroDirectionError):
        ray_hull_window(to_vector((0, 0)), V((1, 0)), I2)


@given(
    st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5),
    st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=3),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda d: d != (0, 0)),
)
def test_ray_hull_window_grows_with_the_hull(rows, extra, direction):
    direction = to_vector(direction)
    small = ray_hull_window(direction, V(*rows), I2)
    large = ray_hull_window(direction, V(*rows, *extra), I2)
    if small is None:
        return
    assert large is not None
    assert large.lo <= small.lo and small.hi <= large.hi


# ─── Affine Helpers ─────────────────────────────────────

@pytest.mark.parametrize("points, expected", [
    (V((3, 4)), 0),
    (V((1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 2))), 1),
    (V((0, 0), (1, 0), (0, 1)), 2),
])
def test_affine_rank(points, expected):
    assert affine_rank(points) == expected


def test_affine_minimizer():
    assert affine_minimizer(V((1, 0), (0, 1)), I2) == [Fraction(1, 2), Fraction(1, 2)]
    assert affine_minimizer(V((1, 0), (1, 0)), I2) is None


# ─── Rational Linear Algebra ────────────────────────────

def test_solve_linear():
    half = Fraction(1, 2)
    assert solve_linear(V((2, 1), (1, 3)), to_vector((3, 4))) == [1, 1]
    assert solve_linear(V((0, 2), (4, 0)), to_vector((1, 1))) == [Fraction(1, 4), half]
    assert solve_linear(V((1, 2), (2, 4)), to_vector((1, 2))) is None
    assert solve_linear([], []) == []


@pytest.mark.parametrize("rows, expected", [
    ([], 0),
    (V((0, 0)), 0),
    (V((1, 2, 3), (2, 4, 6)), 1),
    (V((1, 0, 0), (0, Fraction(1, 3), 0), (1, 1, 0)), 2),
])
def test_matrix_rank(rows, expected):
    assert matrix_rank(rows) == expected


@pytest.mark.parametrize("gram, expected", [
    (V((2, -1), (-1, 2)), True),
    (V((1, 2), (2, 1)), False),
    (V((0, 0), (0, 1)), False),
    (V((Fraction(1, 3),)), True),
])
def test_leading_minors_positive(gram, expected):
    assert leading_minors_positive(gram) is expected
