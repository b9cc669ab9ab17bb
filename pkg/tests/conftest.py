import pytest

from helpers import load_fixture


@pytest.fixture(scope="session")
def f1():
    """Seven-place net with two silent transitions; six reachable markings."""
    return load_fixture("f1.json")


@pytest.fixture(scope="session")
def f2():
    """Two-place net where the a-observation never separates p from q."""
    return load_fixture("f2.json")
