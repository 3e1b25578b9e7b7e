import pytest

from partaug.groups import load_group


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_group(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def S3(groups):
    return groups("S3")


@pytest.fixture(scope="session")
def C2(groups):
    return groups("C2")


ACCEPTANCE_LINES: list = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        doc = dict(report.user_properties).get("criterion")
        if doc:
            ACCEPTANCE_LINES.append(f"[{'PASS' if report.passed else 'FAIL'}] {doc}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
