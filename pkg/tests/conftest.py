from __future__ import annotations

import sys
from pathlib import Path

import pytest

from facetkb.embeddings import load_embeddings
from facetkb.lexicon import load_lexicon

FIXTURES = Path(__file__).parent / "fixtures"
DEMO = Path(__file__).parent.parent / "demo"


def scorer_command(script: str, *args: str) -> list[str]:
    return [sys.executable, str(FIXTURES / script), *args]


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(FIXTURES / "lexicon.json")


@pytest.fixture(scope="session")
def embeddings():
    return load_embeddings(FIXTURES / "embeddings.txt")


@pytest.fixture(scope="session")
def templates_path():
    return FIXTURES / "templates.json"


@pytest.fixture(scope="session")
def demo_dir():
    return DEMO
