"""Shared fixtures and hypothesis configuration for the suite."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def seeded_frame(seed: int, height: int = 32, width: int = 32) -> np.ndarray:
    """Deterministic random RGB frame."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8)


def seeded_plane(seed: int, height: int = 16, width: int = 16) -> np.ndarray:
    """Deterministic random float plane in [0, 255]."""
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 255.0, size=(height, width))


@pytest.fixture
def frame32() -> np.ndarray:
    return seeded_frame(7)
