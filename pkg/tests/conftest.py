import os

import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session", autouse=True)
def table_cache(tmp_path_factory):
    # keep computed tables out of the working tree
    path = tmp_path_factory.mktemp("charlevel-cache")
    old = os.environ.get("CHARLEVEL_CACHE")
    os.environ["CHARLEVEL_CACHE"] = str(path)
    yield path
    if old is None:
        os.environ.pop("CHARLEVEL_CACHE", None)
    else:
        os.environ["CHARLEVEL_CACHE"] = old


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
