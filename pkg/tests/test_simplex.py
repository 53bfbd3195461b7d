from fractions import Fraction

from hypothesis import given, strategies as st

from app.utils.simplex import LPStatus, solve_lp


def F(*values):
    return [Fraction(v) for v in values]


def test_optimal_vertex():
    # min -x0 - 2x1  with slacks: x0 + x1 <= 4, x0 + 3x1 <= 6
    result = solve_lp(F(-1, -2, 0, 0), [F(1, 1, 1, 0), F(1, 3, 0, 1)], F(4, 6))
    assert result.status == LPStatus.optimal
    assert result.value == -5
    assert result.x == F(3, 1, 0, 0)


def test_infeasible():
    result = solve_lp(F(0, 0), [F(1, 1)], F(-1))
    assert result.status == LPStatus.infeasible
    assert result.value is None


def test_unbounded():
    result = solve_lp(F(-1, 0), [F(1, -1)], F(1))
    assert result.status == LPStatus.unbounded


def test_redundant_rows_are_dropped():
    result = solve_lp(F(1, 0), [F(1, 1), F(2, 2)], F(1, 2))
    assert result.status == LPStatus.optimal
    assert result.value == 0
    assert result.x == F(0, 1)


def test_negative_rhs_rows_are_normalized():
    # -x0 = -3 forces x0 = 3
    result = solve_lp(F(1), [F(-1)], F(-3))
    assert result.status == LPStatus.optimal
    assert result.x == F(3)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 6)), min_size=1, max_size=5))
def test_box_problem_optimum(items):
    # min c.x  with  0 <= x_i <= u_i, written with slacks s_i
    k = len(items)
    cost = [Fraction(c) for c, _ in items] + [Fraction(0)] * k
    rows = []
    for i in range(k):
        row = [Fraction(0)] * (2 * k)
        row[i] = row[k + i] = Fraction(1)
        rows.append(row)
    rhs = [Fraction(u) for _, u in items]

    result = solve_lp(cost, rows, rhs)
    assert result.status == LPStatus.optimal
    assert result.value == sum(min(c, 0) * u for c, u in items)
    assert all(x >= 0 for x in result.x)
    for i in range(k):
        assert result.x[i] + result.x[k + i] == rhs[i]
