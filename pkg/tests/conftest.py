from functools import lru_cache

import pytest

from packetforge.arthur import default_base
from packetforge.config import settings
from packetforge.core import hi


@lru_cache(maxsize=None)
def _base(alpha: str, xi: int = 1):
    return default_base(hi(alpha), xi)


@pytest.fixture
def base_at():
    """Standard cuspidal base at a given α, shared across tests."""
    return _base


@pytest.fixture
def restore_settings():
    saved = settings.model_dump()
    yield settings
    for key, value in saved.items():
        setattr(settings, key, value)
