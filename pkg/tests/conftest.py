"""Shared fixtures, frozen oracle data and the acceptance summary hook."""


import pytest

from motzkin_lab import StepWeights

WEIGHT_SETS = [(1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 3)]

# Hand-derived or DP-frozen reference data, never recomputed by the code under test.
EXCURSIONS = [1, 1, 2, 4, 9, 21, 51, 127, 323]
BRIDGES = [1, 1, 3, 7, 19, 51, 141, 393]
MEANDERS = [1, 2, 5, 13, 35, 96, 267]

ACCEPTANCE_LINES: list = []


@pytest.fixture(params=WEIGHT_SETS, ids=lambda t: "w=%d,%d,%d" % t)
def weights(request):
    return StepWeights(*request.param)


@pytest.fixture
def unit():
    return StepWeights(1, 1, 1)


@pytest.fixture
def record_acceptance():
    def record(number: int, title: str, passed: bool, detail: str):
        line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


