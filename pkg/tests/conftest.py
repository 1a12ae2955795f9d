"""Shared test oracles: dense/rational linear-system solvers and KS helper.

The dense and rational solvers deliberately avoid the library's
difference recursions so chain quantities are checked through an
independent route.
"""

from fractions import Fraction

import numpy as np
import pytest

from wordwait.markov import BirthDeathChain


def dense_hitting(chain: BirthDeathChain, lower: int, upper: int) -> np.ndarray:
    """h by a dense linear solve of the harmonic system."""
    n = chain.n
    A = np.zeros((n + 1, n + 1))
    b = np.zeros(n + 1)
    for x in range(n + 1):
        if x <= lower:
            A[x, x] = 1.0
            b[x] = 0.0
        elif x >= upper:
            A[x, x] = 1.0
            b[x] = 1.0
        else:
            A[x, x] = 1.0 - chain.stay[x]
            A[x, x + 1] = -chain.up[x]
            A[x, x - 1] = -chain.down[x]
    return np.linalg.solve(A, b)


def dense_expected_time(chain: BirthDeathChain, target: int) -> np.ndarray:
    """u by a dense linear solve of the first-step equations."""
    n = chain.n
    A = np.zeros((n + 1, n + 1))
    b = np.zeros(n + 1)
    for x in range(n + 1):
        if x == target:
            A[x, x] = 1.0
        else:
            A[x, x] = 1.0 - chain.stay[x]
            b[x] = 1.0
            if x + 1 <= n:
                A[x, x + 1] = -chain.up[x]
            if x - 1 >= 0:
                A[x, x - 1] = -chain.down[x]
    return np.linalg.solve(A, b)


def solve_rational(A, b):
    """Gaussian elimination with exact Fraction arithmetic."""
    n = len(b)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [v - factor * p for v, p in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def rational_hitting(up, down, stay, lower, upper):
    """Exact h for a chain given as Fractions."""
    n = len(up) - 1
    A = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    b = [Fraction(0)] * (n + 1)
    for x in range(n + 1):
        if x <= lower:
            A[x][x] = Fraction(1)
        elif x >= upper:
            A[x][x] = Fraction(1)
            b[x] = Fraction(1)
        else:
            A[x][x] = 1 - stay[x]
            A[x][x + 1] = -up[x]
            A[x][x - 1] = -down[x]
    return solve_rational(A, b)


def rational_expected_time(up, down, stay, target):
    n = len(up) - 1
    A = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    b = [Fraction(0)] * (n + 1)
    for x in range(n + 1):
        if x == target:
            A[x][x] = Fraction(1)
        else:
            A[x][x] = 1 - stay[x]
            b[x] = Fraction(1)
            if x + 1 <= n:
                A[x][x + 1] = -up[x]
            if x - 1 >= 0:
                A[x][x - 1] = -down[x]
    return solve_rational(A, b)


def random_chain(rng: np.random.Generator, n: int, min_rate: float = 0.05) -> BirthDeathChain:
    """Random irreducible chain on 0..n with rates bounded away from zero."""
    up = np.zeros(n + 1)
    down = np.zeros(n + 1)
    up[:-1] = rng.uniform(min_rate, 0.6, size=n)
    down[1:] = rng.uniform(min_rate, 0.6, size=n)
    scale = np.maximum((up + down) / 0.9, 1.0)  # keep stay >= 0.1
    up /= scale
    down /= scale
    return BirthDeathChain(up=up, down=down, stay=1.0 - up - down)


def ks_exponential(samples: np.ndarray) -> float:
    """KS statistic of samples against an exponential fitted by its mean."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    cdf = 1.0 - np.exp(-x / x.mean())
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - cdf, cdf - (i - 1) / n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)
