import pytest

from rdfqa import default_dictionary, load_dataset
from rdfqa.fixtures import fixture_path


@pytest.fixture(scope="session")
def family():
    return load_dataset(fixture_path("family.nt"))


@pytest.fixture(scope="session")
def zoo():
    return load_dataset(fixture_path("zoo_clean.nt"))


@pytest.fixture(scope="session")
def words():
    return default_dictionary()
