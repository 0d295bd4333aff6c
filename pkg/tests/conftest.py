import pytest

from ordcover.ordinals import enumerate_ordinals, tower


@pytest.fixture(scope="session")
def pool3():
    """Deterministic sample below the height-3 tower."""
    return enumerate_ordinals(2, 2, tower(3))


@pytest.fixture(scope="session")
def pool2():
    """Small sample below w^w, cheap enough for quadratic checks."""
    return enumerate_ordinals(2, 1, tower(2))
