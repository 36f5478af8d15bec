import pytest

from electrical_lie.arith.poly import PolyRing


@pytest.fixture
def ring():
    return PolyRing(["x", "y", "z"])
