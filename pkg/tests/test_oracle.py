import numpy as np
import pytest

from maxent_ice import behavior, games, oracle
from tests.conftest import random_game


def test_hull_membership_inside():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    dist, eta = oracle.hull_membership_lp([0.25, 0.25], verts)
    assert dist == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(eta @ verts, [0.25, 0.25], atol=1e-8)


def test_hull_membership_outside():
    verts = np.array([[0.0, 0.0], [1.0, 0.0]])
    dist, _ = oracle.hull_membership_lp([0.5, 0.3], verts)
    # nearest hull point under the max norm is (0.5, 0.0)
    assert dist == pytest.approx(0.3, abs=1e-9)


def test_hull_membership_vertex():
    verts = np.array([[2.0, -1.0], [0.0, 0.0]])
    dist, eta = oracle.hull_membership_lp([2.0, -1.0], verts)
    assert dist == pytest.approx(0.0, abs=1e-9)
    assert eta[0] == pytest.approx(1.0, abs=1e-8)


def test_frank_wolfe_agrees_with_exact():
    rng = np.random.default_rng(3)
    for _ in range(10):
        verts = rng.normal(size=(6, 3))
        point = rng.normal(size=3) * 0.5
        d_exact, _ = oracle.hull_membership_lp(point, verts, method="exact-lp")
        d_fw, _ = oracle.hull_membership_lp(point, verts,
                                            method="frank-wolfe", tol=1e-6)
        # Frank-Wolfe certifies an l2 upper bound; it may overestimate the
        # support-norm distance but never report inside when outside.
        assert d_fw >= d_exact - 1e-6


def test_certify_slack_zero_for_demo_itself(mg1):
    mods = games.internal_modifications(mg1)
    sigma = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    cert = oracle.certify_slack(sigma, sigma, mods, mods, mg1, mg1)
    assert cert.nu == pytest.approx(0.0, abs=1e-9)


def test_certify_slack_positive_when_outside(mg1):
    mods = games.internal_modifications(mg1)
    # demonstrated behavior concentrated on (0,0); predicted on (1,1)
    tilde = behavior.point_mass(4, 0)
    hat = behavior.point_mass(4, 3)
    cert = oracle.certify_slack(hat, tilde, mods, mods, mg1, mg1)
    assert cert.nu > 1e-6


def test_sample_directions_include_signed_axes():
    dirs = oracle.sample_directions(3, 50, seed=0)
    for axis in range(3):
        for sign in (1.0, -1.0):
            e = np.zeros(3)
            e[axis] = sign
            assert any(np.allclose(d, e) for d in dirs)
    norms = np.abs(dirs).sum(axis=1)
    np.testing.assert_allclose(norms, 1.0, atol=1e-9)


def test_primal_value_decomposition(mg1):
    mods = games.internal_modifications(mg1)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    hat = behavior.BehaviorDistribution([0.3, 0.2, 0.2, 0.3])
    c = 5.0
    val = oracle.primal_value(hat, tilde, mods, mods, mg1, mg1, c)
    cert = oracle.certify_slack(hat, tilde, mods, mods, mg1, mg1)
    assert val == pytest.approx(behavior.entropy(hat) - c * cert.nu, abs=1e-8)


def test_brute_force_primal_small(mg1):
    mods = games.internal_modifications(mg1)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    sigma = oracle.brute_force_primal(tilde, mods, mods, mg1, mg1, C=10.0)
    value = oracle.primal_value(sigma, tilde, mods, mods, mg1, mg1, 10.0)
    assert sigma.probs.sum() == pytest.approx(1.0, abs=1e-9)
    # optimum at least matches the demonstration itself (feasible, nu=0)
    assert value >= behavior.entropy(tilde) - 1e-6


def test_brute_force_primal_beats_feasible_points(rng):
    g = random_game(rng, max_actions=16)
    mods = games.internal_modifications(g)
    tilde = behavior.BehaviorDistribution(rng.dirichlet(np.ones(g.num_outcomes)))
    c = 8.0
    sigma_bf = oracle.brute_force_primal(tilde, mods, mods, g, g, C=c)
    best = oracle.primal_value(sigma_bf, tilde, mods, mods, g, g, c)
    for _ in range(5):
        other = behavior.BehaviorDistribution(
            rng.dirichlet(np.ones(g.num_outcomes)))
        val = oracle.primal_value(other, tilde, mods, mods, g, g, c)
        assert best >= val - 1e-6
