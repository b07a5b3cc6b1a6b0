import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Call with (number, title); the PASS/FAIL line is filled in from the test outcome."""
    holder = {}

    def register(number: int, title: str, detail: str = ""):
        holder.update(number=number, title=title, detail=detail)
        return holder

    yield register
    if "number" in holder:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        line = f"criterion {holder['number']:>2}: {'PASS' if ok else 'FAIL'}  {holder['title']}"
        if holder.get("detail"):
            line += f"  [{holder['detail']}]"
        ACCEPTANCE_LINES[holder["number"]] = line
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
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
