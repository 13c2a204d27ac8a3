"""Collects acceptance outcomes and prints one line per criterion."""
import pytest

CRITERIA = {
    1: "golden values of the simple classes at n = 3",
    2: "TD_F(f) + C1_F(f) >= |X| on every zoo member, n = 2, 3, 4",
    3: "C0 <= m for zoo classes with m < |X| at n = 3, 4, tight within 1",
    4: "Rubinstein k = 2: zero count, aBS >= 4, aC >= aBS, aC0 >= 3.96",
    5: "ETD pin on singletons(3)",
    6: "MEMB values; C0 <= MEMB, ETD <= MEMB, MEMB + D >= |X| at n = 2, 3",
    7: "weak symmetry verdicts and evasiveness prediction",
    8: "randomized property suites (500 functions, V <= 10)",
    9: "byte-identical verify output apart from timing",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(crit, []).append((report.nodeid.split("::")[-1], report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result()._criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        runs = _outcomes.get(crit)
        if not runs:
            tr.write_line(f"criterion {crit}: NOT RUN  {CRITERIA[crit]}")
            continue
        ok = all(o == "passed" for _, o in runs)
        failed = [name for name, o in runs if o != "passed"]
        tail = "" if ok else f"  (failing: {', '.join(failed)})"
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {CRITERIA[crit]}{tail}")
