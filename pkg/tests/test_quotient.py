import random
from fractions import Fraction

import pytest

from app.models.action import SupportSet
from app.models.cohomology import PoincareSeries
from app.models.errors import NonPositiveEpsilonError, ZeroBetaError
from app.services.geometry import ray_hull_window
from app.services.quotient import critical_quotient, epsilon_window, quotient_family, unstable_quotient
from app.services.strata import classify_support, find_stratum, index_set
from app.utils.rational import sub, to_vector
from tests.builders import random_system, weights


def stratum(ws, *beta):
    return find_stratum(index_set(ws), to_vector(beta))


def nonzero_strata(ws):
    return [si for si in index_set(ws) if not si.is_zero]


def same_chamber(a, b):
    return a.model_dump(exclude={"epsilon"}) == b.model_dump(exclude={"epsilon"})


# ─── Windows ────────────────────────────────────────────

def test_window_of_the_middle_weight():
    ws = weights(2, 1, -1)
    window = epsilon_window(stratum(ws, 1), ws)
    assert window.walls == (1, 2)
    assert window.eps_max == 1
    assert window.eps_limit == 1
    assert not window.empty_for_all_eps


@pytest.mark.parametrize("ws, beta", [
    (weights(2, 1, -1), 2),
    (weights(2, 1, -1), -1),
    (weights(1, 1, -1), 1),
])
def test_degenerate_strata_are_empty_for_all_eps(ws, beta):
    window = epsilon_window(stratum(ws, beta), ws)
    assert window.empty_for_all_eps
    assert window.eps_max is None
    assert window.eps_limit is None


def test_zero_beta_has_no_window():
    ws = weights(2, 1, -1)
    with pytest.raises(ZeroBetaError):
        epsilon_window(stratum(ws, 0), ws)
    with pytest.raises(ZeroBetaError):
        unstable_quotient(stratum(ws, 0), ws, Fraction(1, 2))


# ─── Quotients ──────────────────────────────────────────

def test_point_quotient():
    ws = weights(2, 1, -1)
    report = unstable_quotient(stratum(ws, 1), ws, Fraction(1, 2))
    assert report.nonempty
    assert report.locally_free
    assert report.within_stratum
    assert report.complex_dim == 0
    assert report.betti == PoincareSeries.one()
    assert report.semistable_supports == (SupportSet.of(0, 1),)


@pytest.mark.parametrize("beta, eps", [(1, Fraction(2)), (2, Fraction(1, 2)), (2, Fraction(7))])
def test_empty_quotients(beta, eps):
    ws = weights(2, 1, -1)
    report = unstable_quotient(stratum(ws, beta), ws, eps)
    assert not report.nonempty
    assert report.betti is None
    assert report.complex_dim is None
    assert report.semistable_supports == ()


@pytest.mark.parametrize("eps", [Fraction(0), Fraction(-1, 2)])
def test_epsilon_must_be_positive(eps):
    ws = weights(2, 1, -1)
    with pytest.raises(NonPositiveEpsilonError):
        unstable_quotient(stratum(ws, 1), ws, eps)


def test_rank_two_quotient_is_a_point():
    # β = (1,0) with two more weights above its level
    ws = weights((1, 0), (2, 1), (2, -1), (-1, 0))
    si = stratum(ws, 1, 0)
    assert si.z_support == SupportSet.of(0)
    assert si.y_support == SupportSet.of(0, 1, 2)

    window = epsilon_window(si, ws)
    assert window.eps_max == 1
    report = unstable_quotient(si, ws, Fraction(1, 2))
    assert report.locally_free
    assert report.complex_dim == 0
    assert report.betti == PoincareSeries.one()


# ─── Families ───────────────────────────────────────────

def test_family_of_the_middle_weight():
    ws = weights(2, 1, -1)
    family = quotient_family(stratum(ws, 1), ws)
    assert len(family) == 1
    chamber = family[0]
    assert (chamber.eps_lo, chamber.eps_hi) == (0, 1)
    assert chamber.report.epsilon == Fraction(1, 2)
    assert chamber.report.betti == PoincareSeries.one()


def test_family_of_a_degenerate_stratum_is_empty():
    ws = weights(2, 1, -1)
    assert quotient_family(stratum(ws, 2), ws) == []


def test_family_crossing_out_of_the_stratum():
    # walls at 1, 2, 3; past ε = 1 the quotient keeps a support missing z_support
    ws = weights(3, 2, 1, -1)
    family = quotient_family(stratum(ws, 1), ws)
    assert [(c.eps_lo, c.eps_hi) for c in family] == [(0, 1), (1, 2)]
    inside, outside = (c.report for c in family)
    assert inside.within_stratum
    assert inside.semistable_supports == tuple(SupportSet(indices=s) for s in [(0, 2), (1, 2), (0, 1, 2)])
    assert not outside.within_stratum
    assert outside.semistable_supports == tuple(SupportSet(indices=s) for s in [(0, 1), (0, 2), (0, 1, 2)])
    assert inside.betti.text == outside.betti.text == "1+q"


@pytest.mark.parametrize("ws", [weights(1, -1), weights(1, 1, -1), weights(2, 1, -1)])
def test_chambers_are_stable(ws):
    for si in nonzero_strata(ws):
        for chamber in quotient_family(si, ws):
            width = chamber.eps_hi - chamber.eps_lo
            first = unstable_quotient(si, ws, chamber.eps_lo + width / 4)
            second = unstable_quotient(si, ws, chamber.eps_hi - width / 5)
            assert same_chamber(first, second)
            assert same_chamber(first, chamber.report)


# ─── Critical Level ─────────────────────────────────────

def test_critical_quotient_of_a_fixed_point():
    ws = weights(2, 1, -1)
    report = critical_quotient(stratum(ws, 1), ws)
    assert report.epsilon == 0
    assert report.nonempty
    assert report.complex_dim == 0
    assert report.betti == PoincareSeries.one()
    assert report.semistable_supports == (SupportSet.of(1),)


def test_critical_quotient_of_a_pinned_line():
    # z_support {0,1} carries the trivial action after the shift
    ws = weights(1, 1, -1)
    report = critical_quotient(stratum(ws, 1), ws)
    assert report.locally_free
    assert report.complex_dim == 1
    assert report.betti == PoincareSeries.from_coefficients([1, 1])
    assert report.semistable_supports == (SupportSet.of(0), SupportSet.of(1), SupportSet.of(0, 1))


def test_critical_quotient_rank_two():
    # z-weights (1,1) and (1,-1) meet the level line x = 1 at β = (1,0)
    ws = weights((1, 1), (1, -1), (-1, 0))
    report = critical_quotient(stratum(ws, 1, 0), ws)
    assert report.locally_free
    assert report.complex_dim == 0
    assert report.betti == PoincareSeries.one()


# ─── Random Systems ─────────────────────────────────────

def test_quotient_invariants_on_random_systems():
    rng = random.Random(29)
    checked = 0
    for _ in range(30):
        ws = random_system(rng, max_rank=2, max_n=4, bound=3)
        for si in nonzero_strata(ws):
            beta = tuple(si.beta)
            for i in si.y_support.indices:
                assert ws.ip.dot(ws.weights[i], beta) >= si.norm_sq

            window = epsilon_window(si, ws)
            if window.empty_for_all_eps:
                assert not unstable_quotient(si, ws, Fraction(1, 3)).nonempty
                continue

            full = ray_hull_window(beta, ws.select(si.y_support.indices), ws.ip)
            for k in range(1, 8):
                eps = window.eps_limit * Fraction(k, 6)
                report = unstable_quotient(si, ws, eps)
                assert report.nonempty == full.contains(1 + eps)

            samples = [unstable_quotient(si, ws, window.eps_max * f)
                       for f in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))]
            assert samples[0].semistable_supports == samples[1].semistable_supports
            assert samples[1].semistable_supports == samples[2].semistable_supports

            report = samples[1]
            assert report.nonempty
            assert report.within_stratum
            for s in report.semistable_supports:
                assert tuple(classify_support(s, ws).beta) == beta
            if report.locally_free:
                assert report.betti.numerator[0] == 1
                assert report.betti.is_palindromic()
            checked += 1
    assert checked > 0


def test_shifted_weights_sit_above_the_level():
    ws = weights((2, 1), (1, 0), (3, -1), (-1, 2))
    for si in nonzero_strata(ws):
        beta = tuple(si.beta)
        eps = Fraction(1, 5)
        level = tuple((1 + eps) * x for x in beta)
        for i in si.y_support.indices:
            shifted = sub(ws.weights[i], level)
            assert ws.ip.dot(shifted, beta) >= -eps * si.norm_sq
