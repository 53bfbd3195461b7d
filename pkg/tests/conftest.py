import os
import random

import hypothesis
import pytest

from app.config import get_settings
from tests.builders import root_datum

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("standard", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "standard"))


# ─── Root Data ──────────────────────────────────────────

@pytest.fixture
def a1():
    return root_datum([(2,)], [(2,)])


@pytest.fixture
def a2():
    return root_datum(
        [(1, -1, 0), (0, 1, -1)],
        [(1, -1, 0), (0, 1, -1), (1, 0, -1)],
    )


@pytest.fixture
def a3():
    simple = [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1)]
    positive = [
        tuple(1 if k == i else -1 if k == j else 0 for k in range(4))
        for i in range(4) for j in range(i + 1, 4)
    ]
    return root_datum(simple, positive)


@pytest.fixture
def b2():
    # α1 = (1,-1) long, α2 = (0,1) short
    return root_datum([(1, -1), (0, 1)], [(1, -1), (0, 1), (1, 0), (1, 1)])


# ─── Randomness / Settings ──────────────────────────────

@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def settings_env(monkeypatch):
    """Override Settings fields through the environment for one test."""
    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(key, str(value))
        get_settings.cache_clear()
    yield apply
    get_settings.cache_clear()
