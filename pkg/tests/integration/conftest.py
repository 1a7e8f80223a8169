import pytest

from kacss.config import Config
from kacss.graph import Instance, parse_instance
from kacss.utils import read_text_file_to_string
from tests import get_data_filename
from tests.unit.conftest import default_config

__all__ = ["default_config"]


@pytest.fixture
def wheel4(default_config: Config) -> Instance:
    return parse_instance(read_text_file_to_string(get_data_filename("wheel4_k2.kacss")))


@pytest.fixture
def weighted5(default_config: Config) -> Instance:
    return parse_instance(read_text_file_to_string(get_data_filename("weighted5.kacss")))
