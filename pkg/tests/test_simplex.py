import random
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from lipfree.simplex import solve_lp_max


def test_textbook_instance():
    # max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18
    sol = solve_lp_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert sol.value == 36
    assert sol.x == (2, 6)


def test_rational_data():
    sol = solve_lp_max([F(1, 3)], [[F(1, 2)]], [F(3, 4)])
    assert sol.value == F(1, 2)
    assert sol.x == (F(3, 2),)


def test_degenerate_rhs():
    sol = solve_lp_max([1, 1], [[1, -1], [-1, 1], [1, 1]], [0, 0, 2])
    assert sol.value == 2
    assert sol.x == (1, 1)


def test_zero_objective():
    sol = solve_lp_max([0, 0], [[1, 1]], [5])
    assert sol.value == 0


def test_unbounded_detected():
    with pytest.raises(RuntimeError):
        solve_lp_max([1], [[-1]], [1])


def test_beale_cycling_example_terminates():
    # classic degenerate instance that cycles under naive Dantzig pivoting
    c = [F(3, 4), -150, F(1, 50), -6]
    rows = [
        [F(1, 4), -60, F(-1, 25), 9],
        [F(1, 2), -90, F(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    sol = solve_lp_max(c, rows, [0, 0, 1])
    assert sol.value == F(1, 20)


def test_agrees_with_scipy_on_random_instances():
    rng = random.Random(777)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = rng.randint(1, 8)
        c = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
        rows = [
            [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(m)
        ]
        rhs = [F(rng.randint(0, 8), rng.randint(1, 2)) for _ in range(m)]
        # keep the LP bounded: cap every variable
        for i in range(n):
            row = [0] * n
            row[i] = 1
            rows.append(row)
            rhs.append(F(10))
        sol = solve_lp_max(c, rows, rhs)
        ref = linprog(
            [-float(v) for v in c],
            A_ub=np.array([[float(v) for v in row] for row in rows]),
            b_ub=np.array([float(v) for v in rhs]),
            bounds=[(0, None)] * n,
            method="highs",
        )
        assert ref.status == 0
        assert abs(float(sol.value) + ref.fun) < 1e-8
        # the exact optimum is feasible
        for row, b in zip(rows, rhs):
            assert sum(a * x for a, x in zip(row, sol.x)) <= b
