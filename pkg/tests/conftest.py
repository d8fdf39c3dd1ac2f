"""Shared brute-force oracles. They deliberately avoid the package's code paths."""
import itertools

import pytest

ACCEPTANCE = []


def brute_code(x):
    """t_i = 1 + #{k < i : x_k < x_i}, by direct counting."""
    return [1 + sum(1 for k in range(i) if x[k] < x[i]) for i in range(len(x))]


def brute_word(x):
    """k_i = #{s : x_s < x_i}, by direct counting."""
    return tuple(sum(1 for s in x if s < v) for v in x)


def longest_increasing(w):
    best = 0
    for r in range(len(w), 0, -1):
        for idx in itertools.combinations(range(len(w)), r):
            if all(w[a] < w[b] for a, b in zip(idx, idx[1:])):
                return r
    return best


def record_acceptance(criterion, ok, detail=""):
    ACCEPTANCE.append((criterion, bool(ok), detail))


@pytest.fixture
def accept():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")
