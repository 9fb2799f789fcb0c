import random
from pathlib import Path

import pytest

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260816)
