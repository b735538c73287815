import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from profinite_workbench.groups import (  # noqa: E402
    alternating_group,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
)

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.fixture(scope="session")
def S3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def A5():
    return alternating_group(5)


@pytest.fixture(scope="session")
def Q8():
    return quaternion_group()


@pytest.fixture(scope="session")
def D4():
    return dihedral_group(4)


@pytest.fixture(scope="session")
def C9():
    return cyclic_group(9)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker:
        _ACCEPTANCE.append((marker, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m:
        rep.criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    merged = {}
    for key, outcome in _ACCEPTANCE:
        merged[key] = merged.get(key, True) and outcome == "passed"
    for (n, title), ok in sorted(merged.items()):
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")
