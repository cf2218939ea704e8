import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion("1", "description")`` at the start of the test.  The
    outcome is filled in from the test report.
    """
    entry = {}

    def declare(number, description):
        entry["number"] = number
        entry["description"] = description

    yield declare
    if entry:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {entry['number']}: {entry['description']}"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
