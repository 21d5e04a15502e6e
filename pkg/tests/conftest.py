import random

import pytest

from bddzip.core.levelstrings import generate_levels
from bddzip.core.robdd import build_robdd
from oracles import EXAMPLE_X


@pytest.fixture
def example_x():
    return EXAMPLE_X


@pytest.fixture
def example_graph():
    return build_robdd(EXAMPLE_X)


@pytest.fixture
def example_levels(example_graph):
    return generate_levels(example_graph)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Entorno sin variables BDDZIP_* y con el directorio de trabajo aislado"""
    for name in ("BDDZIP_MAX_DECODED_BITS", "BDDZIP_MAX_INPUT_BYTES", "BDDZIP_LOG_LEVEL",
                 "BDDZIP_LOG_FILE", "BDDZIP_AUDIT_LOG", "BDDZIP_BENCH_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path
