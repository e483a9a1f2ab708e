from __future__ import annotations

from pathlib import Path

import pytest

from app.exactq import Base
from app.lnscore import SumTable, build_table

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run tests marked slow"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: minutes-long reproduction runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def table_3_2() -> SumTable:
    return build_table(Base(p=3, q=2))


@pytest.fixture(scope="session")
def table_4_3() -> SumTable:
    return build_table(Base(p=4, q=3))


@pytest.fixture(scope="session")
def table_1025_1024() -> SumTable:
    return build_table(Base(p=1025, q=1024))


@pytest.fixture(params=["3/2", "4/3"])
def small_table(request, table_3_2, table_4_3) -> SumTable:
    return table_3_2 if request.param == "3/2" else table_4_3


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
