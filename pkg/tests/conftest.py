from __future__ import annotations

import pytest

from mackeyflags.scenarios import SCENARIOS


@pytest.fixture
def sato():
    return SCENARIOS["sato"].schema


@pytest.fixture
def ex23():
    return SCENARIOS["ex2_3"].schema
