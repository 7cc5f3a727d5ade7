import pytest

from jcci.cluster import default_designs
from jcci.grid import GridTrace
from jcci.registry import default_registry


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture(scope="session")
def load(registry):
    return registry.load_profile("light_medium")


@pytest.fixture(scope="session")
def designs(registry):
    return default_designs(registry)


@pytest.fixture
def pixel(registry):
    return registry.device("pixel_3a")


@pytest.fixture
def poweredge(registry):
    return registry.device("poweredge_r740")


def flat_trace(days: int = 3, intensity: float = 250.0, interval: int = 300) -> GridTrace:
    """Constant-intensity trace starting at a UTC midnight."""
    start = 1_617_235_200  # 2021-04-01 00:00:00 UTC
    count = days * 86_400 // interval
    return GridTrace(
        tuple(start + i * interval for i in range(count)),
        (intensity,) * count,
        interval,
        "UTC",
    )


def two_level_trace(
    days: int = 3,
    low: float = 80.0,
    high: float = 320.0,
    low_start_hour: int = 10,
    low_end_hour: int = 16,
    interval: int = 300,
) -> GridTrace:
    """Square-wave daily trace: cheap window in the middle of each day."""
    start = 1_617_235_200
    count = days * 86_400 // interval
    timestamps = []
    intensities = []
    for i in range(count):
        ts = start + i * interval
        hour = (ts - start) % 86_400 / 3600.0
        timestamps.append(ts)
        intensities.append(low if low_start_hour <= hour < low_end_hour else high)
    return GridTrace(tuple(timestamps), tuple(intensities), interval, "UTC")
