import pytest

from kacss.config import Config
from kacss.graph import Instance
from tests.unit.graphs import bidirected, cycle


@pytest.fixture
def default_config() -> Config:
    return Config()


@pytest.fixture
def cycle5() -> Instance:
    return cycle(5)


@pytest.fixture
def triangle() -> Instance:
    return bidirected(3)
