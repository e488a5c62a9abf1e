from __future__ import annotations

import sympy

from arithcurv.ratfunc import RatFunc

SYMBOLS = {name: sympy.Symbol(name) for name in ("a", "b", "c", "d", "s", "t", "x")}
A, B, C, D = (SYMBOLS[k] for k in "abcd")


def to_sympy(f: RatFunc):
    return sympy.sympify(str(f).replace("^", "**"), locals=SYMBOLS)


def sym_equal(f: RatFunc, expr) -> bool:
    return sympy.cancel(to_sympy(f) - expr) == 0


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
