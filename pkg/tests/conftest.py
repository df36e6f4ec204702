"""Shared test configuration and fixtures."""

import os

import mpmath as mp
import pytest

from zeta_forge.precision import PrecisionContext, make_context

FORGE_KEYS = [
    "ZETA_FORGE_DIGITS", "ZETA_FORGE_GUARD", "ZETA_FORGE_LOG_DIR", "ZETA_FORGE_LOG_FILE",
    "ZETA_FORGE_OUTPUT_DIR", "ZETA_FORGE_JOBS", "ZETA_FORGE_QUAD_LEVELS",
    "ZETA_FORGE_LOG_EVALUATIONS", "ZETA_FORGE_DEFAULT_ENCODING",
]


@pytest.fixture(autouse=True)
def clean_env():
    """Remove zeta_forge env vars before and after each test."""
    saved = {k: os.environ.pop(k, None) for k in FORGE_KEYS}
    yield
    for k in FORGE_KEYS:
        if saved[k] is not None:
            os.environ[k] = saved[k]
        else:
            os.environ.pop(k, None)


@pytest.fixture(autouse=True)
def restore_mp_precision():
    """mpmath precision is process-global; every test starts from the default."""
    mp.mp.dps = 15
    yield
    mp.mp.dps = 15


@pytest.fixture
def ctx30() -> PrecisionContext:
    return make_context(30)


@pytest.fixture
def ctx40() -> PrecisionContext:
    return make_context(40)


@pytest.fixture
def ctx20() -> PrecisionContext:
    return make_context(20)
