import logging
import random
from fractions import Fraction

import numpy as np
import pytest

from app.models.action import PointSample
from app.models.errors import RankMismatchError
from app.services.descent import simulate_descent
from app.services.strata import classify_support
from tests.builders import random_system, weights

TOL = 1e-11


def distance(limit, beta, ws) -> float:
    gram = np.array([[float(x) for x in row] for row in ws.ip.gram])
    d = np.array(limit) - np.array([float(x) for x in beta])
    return float(np.sqrt(d @ gram @ d))


def test_fixed_point_needs_no_steps():
    result = simulate_descent(weights(2, 1, -1), PointSample(masses=(1, 0, 0)))
    assert result.limit == (2.0,)
    assert result.steps == 0
    assert result.converged


@pytest.mark.parametrize("masses, beta", [
    (("1/2", "1/2", 0), 1),
    (("1/3", "1/3", "1/3"), 0),
    ((0, "1/4", "3/4"), 0),
])
def test_descent_examples(masses, beta):
    result = simulate_descent(weights(2, 1, -1), PointSample(masses=masses), tol=TOL)
    assert result.converged
    assert abs(result.limit[0] - beta) < 1e-4


def test_descent_rank_two_with_gram():
    ws = weights((1, 0), (0, 1), gram=[[2, 0], [0, 1]])
    result = simulate_descent(ws, PointSample(masses=("1/2", "1/2")), tol=TOL)
    assert result.converged
    assert distance(result.limit, (Fraction(1, 3), Fraction(2, 3)), ws) < 1e-4


def test_non_convergence_is_reported(caplog):
    with caplog.at_level(logging.WARNING, logger="descent"):
        result = simulate_descent(weights(2, 1, -1), PointSample(masses=("1/2", "1/2", 0)), max_steps=1)
    assert not result.converged
    assert result.steps == 1
    assert "[Descent] no convergence" in caplog.text


def test_rejects_bad_parameters():
    ws = weights(2, 1, -1)
    with pytest.raises(ValueError):
        simulate_descent(ws, PointSample(masses=(1, 0, 0)), step=0)
    with pytest.raises(ValueError):
        simulate_descent(ws, PointSample(masses=(1, 0, 0)), tol=-1)
    with pytest.raises(RankMismatchError):
        simulate_descent(ws, PointSample(masses=("1/2", "1/2")))


def random_masses(rng: random.Random, count: int) -> PointSample:
    raw = [0 if rng.random() < 0.3 else rng.randint(1, 9) for _ in range(count)]
    if not any(raw):
        raw[rng.randrange(count)] = 1
    total = sum(raw)
    return PointSample(masses=tuple(Fraction(x, total) for x in raw))


def test_descent_agrees_with_exact_strata(caplog):
    rng = random.Random(3)
    runs = converged = 0
    with caplog.at_level(logging.WARNING, logger="descent"):
        for _ in range(10):
            ws = random_system(rng, max_rank=2, max_n=5)
            for _ in range(10):
                p = random_masses(rng, len(ws.weights))
                result = simulate_descent(ws, p, tol=TOL)
                runs += 1
                if not result.converged:
                    continue
                converged += 1
                stability = classify_support(p.support, ws)
                beta = (0,) * ws.rank if stability.is_semistable else stability.beta
                assert distance(result.limit, beta, ws) < 1e-4

    assert runs == 100
    assert converged >= 98
    assert caplog.text.count("[Descent] no convergence") == runs - converged


def test_boundary_face_converges_within_the_budget():
    # 0 lies on the edge between (1,0) and (-1,0): the (0,1) mass decays only like 1/s
    ws = weights((1, 0), (-1, 0), (0, 1))
    result = simulate_descent(ws, PointSample(masses=("1/3", "1/3", "1/3")))
    assert result.converged
    assert result.steps < 5000
    assert distance(result.limit, (0, 0), ws) < 1e-3
