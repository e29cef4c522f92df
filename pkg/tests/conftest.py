# tests/conftest.py
from pathlib import Path

import pytest

from spm.counting import p_table_oracle
from spm.diagram import build_bfs
from spm.models import Partition

FIXTURES = Path(__file__).parent / "fixtures"


def P(*parts: int) -> Partition:
    return Partition(parts)


def assert_all_pass(results):
    failed = [(r.name, r.failures[:5]) for r in results if not r.passed]
    assert not failed, failed


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def spm():
    """build_bfs(n) for 0 <= n <= 14, built once per session."""
    return {n: build_bfs(n) for n in range(15)}


@pytest.fixture(scope="session")
def oracle_tables():
    return p_table_oracle(25)
