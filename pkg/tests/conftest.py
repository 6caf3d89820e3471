import itertools

import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def partition_numbers(n_max):
    """p(0..n_max) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def box_counts(a, b):
    """Coefficients of qbinom(a, b) by listing every partition in a b x a box."""
    counts = [0] * (a * b + 1)
    for parts in itertools.combinations_with_replacement(range(a + 1), b):
        counts[sum(parts)] += 1
    return counts


def naive_convolve(x, y):
    out = [0] * (len(x) + len(y) - 1) if x and y else []
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            out[i + j] += u * v
    while out and out[-1] == 0:
        out.pop()
    return out


@pytest.fixture(scope="session")
def pnum():
    return partition_numbers(200)
