import shutil
from pathlib import Path

import pytest

FIXTURE_DIR = Path(__file__).parent


@pytest.fixture
def fixture_dir(tmp_path):
    """Scratch copy of the bundled testcases and references."""
    dest = tmp_path / "cases"
    dest.mkdir()
    for path in FIXTURE_DIR.glob("testcase-*"):
        shutil.copy(path, dest / path.name)
    return dest


@pytest.fixture
def testcase_text():
    def load(n):
        return (FIXTURE_DIR / f"testcase-{n}.json").read_text()
    return load


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict for the end-of-run summary."""
    def record(number, title):
        ACCEPTANCE_RESULTS[number] = (title, request.node)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    outcomes = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            if getattr(rep, "when", None) == "call" or (getattr(rep, "when", None) == "setup" and rep.failed):
                outcomes[rep.nodeid] = rep.outcome
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, node = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if outcomes.get(node.nodeid) == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
