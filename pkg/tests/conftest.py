import pytest

_RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = getattr(item, "acceptance_detail", "")
    _RESULTS[number] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, detail = _RESULTS[number]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))


@pytest.fixture
def detail(request):
    """Attach a short summary string to an acceptance line."""

    def put(text: str):
        request.node.acceptance_detail = text

    return put
