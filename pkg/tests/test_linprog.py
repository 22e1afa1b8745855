import numpy as np
import pytest
from scipy.optimize import linprog as scipy_linprog

from maxent_ice import linprog


def _compare(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None):
    ours = linprog.solve_lp(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    ref = scipy_linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                        bounds=(0, None), method="highs")
    if ref.status == 0:
        assert ours.status == "optimal"
        assert ours.value == pytest.approx(ref.fun, abs=1e-7)
    elif ref.status == 2:
        assert ours.status == "infeasible"
    elif ref.status == 3:
        assert ours.status == "unbounded"
    return ours


def test_simple_lp():
    # min -x - y  s.t. x + y <= 1, x,y >= 0
    res = _compare([-1.0, -1.0], a_ub=[[1.0, 1.0]], b_ub=[1.0])
    assert res.value == pytest.approx(-1.0)


def test_equality_lp():
    res = _compare([1.0, 2.0], a_eq=[[1.0, 1.0]], b_eq=[1.0])
    assert res.value == pytest.approx(1.0)
    np.testing.assert_allclose(res.x, [1.0, 0.0], atol=1e-9)


def test_infeasible():
    res = linprog.solve_lp([1.0], a_ub=[[1.0]], b_ub=[-1.0])
    assert res.status == "infeasible"


def test_unbounded():
    # min -x subject to x - y <= 1 is unbounded along the ray x = y + 1
    res = linprog.solve_lp([-1.0, 0.0], a_ub=[[1.0, -1.0]], b_ub=[1.0])
    assert res.status == "unbounded"


def test_random_lps_match_scipy():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, 5))
        c = rng.normal(size=n)
        a_ub = rng.normal(size=(m, n))
        b_ub = rng.uniform(0.5, 2.0, size=m)  # feasible at origin
        _compare(c, a_ub=a_ub, b_ub=b_ub)


def test_random_equality_lps_match_scipy():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(3, 8))
        c = rng.normal(size=n)
        # mixture constraints: weights sum to one (always feasible)
        a_eq = np.ones((1, n))
        b_eq = np.array([1.0])
        a_ub = rng.normal(size=(2, n))
        b_ub = rng.uniform(0.0, 1.0, size=2) + a_ub.max(axis=1)
        _compare(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
