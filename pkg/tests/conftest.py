import pytest

from mwrgames.textio import fixture_path, load_game

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE]


@pytest.fixture(scope="session")
def running():
    return load_game(fixture_path("running.game"))


@pytest.fixture(scope="session")
def restricted():
    return load_game(fixture_path("restricted.game"))


@pytest.fixture(scope="session")
def penalty_game():
    return load_game(fixture_path("penalty.qgame"))
