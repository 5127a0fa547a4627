import itertools
import math
from fractions import Fraction

import pytest

ACCEPTANCE_LINES: list[str] = []


def leibniz_det(rows):
    """Determinant as a signed sum over permutations (independent of elimination)."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def exact_is_pd(rows) -> bool:
    n = len(rows)
    return all(leibniz_det([r[:k] for r in rows[:k]]) > 0 for k in range(1, n + 1))


def lambda_min_lower_bound(rows) -> Fraction:
    """A rational lam > 0 with G - lam*I positive definite, checked exactly."""
    n = len(rows)
    lam = Fraction(min(rows[i][i] for i in range(n)))
    while lam > Fraction(1, 10 ** 6):
        shifted = [[Fraction(rows[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        if exact_is_pd(shifted):
            return lam
        lam /= 2
    raise AssertionError("matrix is not positive definite")


def box_bound(target: int, lam: Fraction) -> int:
    """Smallest B with B^2 * lam >= target, so |v_i| <= B whenever v^T G v <= target."""
    B = math.isqrt(int(target / lam))
    while B * B * lam < target:
        B += 1
    return B


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
