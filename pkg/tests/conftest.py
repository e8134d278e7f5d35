# pylint: disable=redefined-outer-name
"""
Pytest configuration for the fk3census package. It is loaded by pytest automatically.
"""
from pathlib import Path
from typing import Callable

import pytest

from fk3census.census import enumerate_fk3_fourfolds, enumerate_k3_records, enumerate_k3_surfaces
from fk3census.models import FamilyRecord, K3Record, WeightSystem

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser: pytest.Parser) -> None:
    """
    `--regold` rewrites the golden catalogs instead of comparing against them.
    """
    parser.addoption("--regold", action="store_true", default=False, help="rewrite the golden files in tests/golden")


@pytest.fixture
def assert_golden(request: pytest.FixtureRequest) -> Callable[[str, bytes], None]:
    """
    Compare emitted bytes against a golden file. A missing golden file is a failure; `--regold` rewrites them all.
    """
    regold = request.config.getoption("--regold")

    def _assert_golden(name: str, data: bytes) -> None:
        path = GOLDEN_DIR / name
        if regold:
            GOLDEN_DIR.mkdir(exist_ok=True)
            path.write_bytes(data)
            return
        if not path.exists():
            pytest.fail(f"{name} has no golden file in {GOLDEN_DIR} (run pytest --regold to create it)")
        assert data == path.read_bytes(), f"{name} differs from its golden file"

    return _assert_golden


@pytest.fixture(scope="session")
def k3_surfaces() -> list[WeightSystem]:
    """
    The K3 census, computed once per session.
    """
    return enumerate_k3_surfaces()


@pytest.fixture(scope="session")
def k3_records() -> list[K3Record]:
    return enumerate_k3_records()


@pytest.fixture(scope="session")
def fk3_records(k3_surfaces: list[WeightSystem]) -> list[FamilyRecord]:
    """
    The FK3 census built from the session K3 census, computed once per session.
    """
    return enumerate_fk3_fourfolds(k3_surfaces=k3_surfaces)
