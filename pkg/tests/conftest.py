import pytest
from hypothesis import settings

settings.register_profile("exact", max_examples=25, deadline=None)
settings.load_profile("exact")

_LINES = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_LINES, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
