import time

import pytest

_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion; detail is filled in by the test."""
    info = {"name": request.node.name, "detail": ""}
    t0 = time.perf_counter()
    yield info
    elapsed = time.perf_counter() - t0
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    _RESULTS.append((status, info["name"], f"{info['detail']} [{elapsed:.1f}s]"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in _RESULTS:
        terminalreporter.write_line(f"{status}  {name}: {detail}")
