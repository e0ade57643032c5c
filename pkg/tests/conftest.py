import itertools

import pytest

from prefixsort.perm import Permutation

ACCEPTANCE_LINES: list[str] = []


def all_perms(n):
    for middle in itertools.permutations(range(1, n + 1)):
        yield Permutation((0, *middle, n + 1))


def unsorted_perms(n):
    for p in all_perms(n):
        if p.values != tuple(range(n + 2)):
            yield p


@pytest.fixture
def record_criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def record(number, description, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
