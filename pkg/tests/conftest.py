"""Pytest configuration and fixtures for amm-verify tests."""

import random
from typing import Iterator

import pytest

from amm_verify.config import AmmConfig, reload_config


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch: pytest.MonkeyPatch) -> Iterator[AmmConfig]:
    """Default configuration for every test, with no environment override."""
    monkeypatch.delenv("AMM_THREADS", raising=False)
    yield reload_config()
    reload_config()


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so sampled properties are reproducible."""
    return random.Random(20240607)
