"""Collects ``criterion`` markers and prints one PASS/FAIL line per acceptance criterion."""

import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, part=None): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or not (rep.when == "call" or rep.failed):
        return
    number, title = m.args[:2]
    part = m.kwargs.get("part")
    entry = _RESULTS.setdefault(number, {"title": title, "parts": {}})
    ok = rep.passed and rep.when == "call"
    entry["parts"][part] = entry["parts"].get(part, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        ok = all(e["parts"].values())
        detail = "; ".join(f"{p}: {'PASS' if v else 'FAIL'}" for p, v in e["parts"].items() if p)
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {e['title']}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
