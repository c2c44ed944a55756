import pytest

from binagg.spaces import builtin_space, builtin_space_names


@pytest.fixture(scope="session")
def pref3():
    return builtin_space("pref3")


@pytest.fixture(scope="session")
def pref4():
    return builtin_space("pref4")


@pytest.fixture(scope="session")
def doctrinal():
    return builtin_space("doctrinal")


@pytest.fixture(scope="session")
def classifier4():
    return builtin_space("classifier4")


@pytest.fixture(scope="session")
def all_builtin_spaces():
    return [(name, builtin_space(name)) for name in builtin_space_names()]
