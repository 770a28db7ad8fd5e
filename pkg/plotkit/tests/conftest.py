"""Shared fixtures: bundled sample runs live in tests/data."""

from pathlib import Path

import pytest

from plotkit import load_run

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def srt_dir() -> Path:
    return DATA / "dip_srt"


@pytest.fixture(scope="session")
def wnlrt_dir() -> Path:
    return DATA / "dip_wnlrt"


@pytest.fixture()
def srt_run(srt_dir):
    return load_run(srt_dir)


@pytest.fixture()
def wnlrt_run(wnlrt_dir):
    return load_run(wnlrt_dir)
