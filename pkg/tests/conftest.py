from pathlib import Path

import pytest

from tenkey.corpus import normalize

DATA_DIR = Path(__file__).parent / "data"
FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def casual_corpus():
    """The checked-in casual-English message archive used across suites."""
    return normalize((DATA_DIR / "casual_corpus.txt").read_text(encoding="utf-8"))
