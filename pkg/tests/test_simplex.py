import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from baryrecog import simplex


def test_textbook_maximum():
    # max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6 (slacks s1, s2)
    A = [[1, 1, 1, 0], [1, 3, 0, 1]]
    res = simplex.maximize([3, 2, 0, 0], A, [4, 6])
    assert res.status == simplex.OPTIMAL
    assert res.objective == pytest.approx(12.0)
    assert res.x[:2] == pytest.approx([4.0, 0.0])


def test_infeasible_system():
    # x + y = 1 and x + y = 2 cannot both hold.
    res = simplex.maximize([1, 0], [[1, 1], [1, 1]], [1, 2])
    assert res.status == simplex.INFEASIBLE


def test_unbounded_ray():
    res = simplex.maximize([1, 0], [[1, -1]], [0])
    assert res.status == simplex.UNBOUNDED


def test_redundant_rows_keep_solution():
    A = [[1, 1, 0], [2, 2, 0], [0, 1, 1]]
    res = simplex.maximize([1, 0, 0], A, [1, 2, 1])
    assert res.status == simplex.OPTIMAL
    assert res.objective == pytest.approx(1.0)


def test_degenerate_problem_terminates():
    # Beale-style cycling example written in equality form with slacks.
    A = np.array(
        [
            [0.25, -8, -1, 9, 1, 0, 0],
            [0.5, -12, -0.5, 3, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ]
    )
    c = np.array([0.75, -20, 0.5, -6, 0, 0, 0])
    res = simplex.maximize(c, A, [0, 0, 1])
    assert res.status == simplex.OPTIMAL
    assert res.objective == pytest.approx(1.25)


@given(st.integers(min_value=0, max_value=10_000))
def test_matches_scipy_highs(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 8)), int(rng.integers(2, 14))
    A = rng.standard_normal((m, n)) * np.exp(rng.uniform(-4, 4, size=(1, n)))
    b = A @ (rng.uniform(0, 1, n) * (rng.random(n) < 0.7)) if seed % 3 else rng.standard_normal(m)
    c = rng.standard_normal(n)
    ref = linprog(-c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    res = simplex.maximize(c, A, b)
    expected = {0: simplex.OPTIMAL, 2: simplex.INFEASIBLE, 3: simplex.UNBOUNDED}[ref.status]
    assert res.status == expected
    if expected == simplex.OPTIMAL:
        assert res.objective == pytest.approx(-ref.fun, rel=1e-6, abs=1e-8)
        assert np.abs(A @ res.x - b).max() <= 1e-7 * max(1.0, np.abs(b).max())
        assert res.x.min() >= 0.0
