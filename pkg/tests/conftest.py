import random

import pytest
from fastapi.testclient import TestClient

from app.models.code import FrequencyTable
from app.services.code_service import build_code

A, B, C, D = 1, 2, 3, 4


@pytest.fixture(scope="session")
def running_freqs():
    """a:5 b:2 c:1 d:1"""
    return FrequencyTable.from_counts({A: 5, B: 2, C: 1, D: 1})


@pytest.fixture(scope="session")
def running_code(running_freqs):
    """a=0 b=10 c=110 d=111"""
    return build_code(running_freqs)


@pytest.fixture(scope="session")
def running_text():
    return [A] * 5 + [B] * 2 + [C, D]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def client():
    from app.main import app

    with TestClient(app) as c:
        yield c
