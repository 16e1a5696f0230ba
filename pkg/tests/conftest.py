from pathlib import Path

import pytest

from sympyramid.io import parse_table

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def example_table():
    return parse_table((FIXTURES / "example_table.json").read_text())


@pytest.fixture(scope="session")
def example_table_path():
    return FIXTURES / "example_table.json"


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")
    config._acceptance = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    item.config._acceptance.append((number, title, call.excinfo is None))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    merged = {}
    for number, title, passed in getattr(config, "_acceptance", []):
        merged[number, title] = merged.get((number, title), True) and passed
    if not merged:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), passed in sorted(merged.items()):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] AC{number}: {title}")
