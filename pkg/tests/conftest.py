import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    if rep.when == "call" or rep.failed:
        doc = (item.function.__doc__ or "").strip().splitlines()[0]
        num = int(item.name.split("_")[2])
        prev = _criteria.get(num)
        if prev is None or prev[0]:
            _criteria[num] = (rep.passed, doc, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, doc, dur = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({dur:.1f}s)  {doc}")
