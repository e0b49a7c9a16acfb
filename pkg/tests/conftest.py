"""Per-criterion PASS/FAIL summary for the acceptance suite."""

import re

CRITERIA = {
    1: "Hilbert basis engine",
    2: "Parikh image of automata",
    3: "emptiness, cardinality and inclusion",
    4: "EQUAL parikh automaton",
    5: "pumping decompositions",
    6: "PAL affine automaton",
    7: "natural registers and two-state normal form",
    8: "register growth bound",
    9: "counter machine compiler",
    10: "commutative closure",
    11: "blocker word search",
    12: "linear path schemes",
}

_NAME = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        _outcomes.setdefault(n, []).append(not failed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {title}")
