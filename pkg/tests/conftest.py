import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flatmoduli.groupio import catalog_names, load_catalog  # noqa: E402

CATALOG = catalog_names()
SMALL = [n for n in CATALOG if load_catalog(n).dim <= 3]

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture(params=CATALOG)
def catalog_group(request):
    return load_catalog(request.param)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = ("PASS" if report.passed else "FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for key, desc in CRITERIA:
        status, _ = _ACCEPTANCE.get(key, ("NOT RUN", ""))
        terminalreporter.write_line(f"{key.replace('test_criterion_', 'criterion ')}: {status}  {desc}")
