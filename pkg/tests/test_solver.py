import json

import numpy as np
import pytest

from maxent_ice import behavior, games, oracle, solver
from tests.conftest import random_game


def _demo_problem(rng, max_actions=16):
    g = random_game(rng, max_actions=max_actions)
    mods = games.internal_modifications(g)
    tilde = behavior.BehaviorDistribution(rng.dirichlet(np.ones(g.num_outcomes)))
    return g, mods, tilde


def test_params_validation():
    with pytest.raises(ValueError):
        solver.SolverParams(C=0.0)
    with pytest.raises(ValueError):
        solver.SolverParams(C=1.0, T=0)
    with pytest.raises(ValueError):
        solver.SolverParams(C=1.0, gamma=-1.0)


def test_default_gamma():
    assert solver.default_gamma(2, 1.0) == pytest.approx(np.sqrt(2 * np.log(2)))
    assert solver.default_gamma(8, 2.0) == pytest.approx(
        np.sqrt(2 * np.log(8)) / 2.0)
    assert solver.default_gamma(5, 0.0) == 1.0


def test_dual_gradient_matches_finite_differences(rng):
    g, mods, tilde = _demo_problem(rng)
    demo = games.demonstrated_regrets(g, mods, tilde.probs)
    rmat = solver._as_tensor(
        np.stack([games.regret_row_block(g, f) for f in mods]), g.feature_dim)
    n, k = demo.shape
    lam = rng.normal(size=(n, k)) * 0.3
    grad = solver._gradient(lam, demo, rmat)
    eps = 1e-6
    for _ in range(10):
        i, j = rng.integers(n), rng.integers(k)
        bump = np.zeros_like(lam)
        bump[i, j] = eps
        fd = (solver._objective(lam + bump, demo, rmat)
              - solver._objective(lam - bump, demo, rmat)) / (2 * eps)
        assert grad[i, j] == pytest.approx(fd, rel=1e-5, abs=1e-8)


def test_eg_step_invariants(rng):
    n, k, c = 6, 3, 4.0
    alpha = np.abs(rng.normal(size=(n, k)))
    beta = np.abs(rng.normal(size=(n, k)))
    scale = c / (alpha.sum() + beta.sum() + 1.0)
    alpha, beta, xi = alpha * scale, beta * scale, c - (alpha.sum() + beta.sum()) * scale
    for t in range(1, 50):
        g = rng.normal(size=(n, k))
        alpha, beta, xi, _ = solver.eg_step(alpha, beta, g, 0.5 / np.sqrt(t), c, xi)
        total = xi + alpha.sum() + beta.sum()
        assert total == pytest.approx(c, abs=1e-12)
        assert xi >= 0 and alpha.min() >= 0 and beta.min() >= 0


def test_eg_step_zero_gradient_keeps_alpha_equal_beta():
    n, k, c = 4, 2, 2.0
    alpha = np.full((n, k), 0.1)
    beta = np.full((n, k), 0.1)
    xi = c - alpha.sum() - beta.sum()
    alpha2, beta2, _, _ = solver.eg_step(alpha, beta, np.zeros((n, k)), 0.3, c, xi)
    np.testing.assert_allclose(alpha2, beta2, atol=1e-15)


def test_solve_small_game_converges(mg1):
    mods = games.internal_modifications(mg1)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    model = solver.fit(mg1, mods, tilde, params=solver.SolverParams(C=10.0))
    assert model.dual.gap <= 1e-4
    assert model.predicted.probs.sum() == pytest.approx(1.0, abs=1e-12)
    w = model.recovered_w
    assert np.abs(w).sum() <= 10.0 + 1e-9


def test_fit_matches_brute_force(mg1):
    mods = games.internal_modifications(mg1)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    model = solver.fit(mg1, mods, tilde, params=solver.SolverParams(C=10.0))
    sigma_bf = oracle.brute_force_primal(tilde, mods, mods, mg1, mg1, C=10.0)
    value_bf = oracle.primal_value(sigma_bf, tilde, mods, mods, mg1, mg1, 10.0)
    assert np.abs(model.predicted.probs - sigma_bf.probs).max() <= 1e-3
    ours = oracle.primal_value(model.predicted, tilde, mods, mods, mg1, mg1, 10.0)
    assert ours == pytest.approx(value_bf, abs=1e-4)


def test_fit_default_budget_warns(mg1, caplog):
    mods = games.internal_modifications(mg1)
    tilde = behavior.uniform(4)
    with caplog.at_level("WARNING"):
        model = solver.fit(mg1, mods, tilde)
    assert any("C = 10*K" in r.message for r in caplog.records)
    assert model.dual.C == pytest.approx(10.0 * mg1.feature_dim)


def test_uniform_demo_predicts_uniform(mg1):
    # a uniform demonstration has zero expected regrets; max entropy wins
    mods = games.internal_modifications(mg1)
    model = solver.fit(mg1, mods, behavior.uniform(4),
                       params=solver.SolverParams(C=5.0))
    np.testing.assert_allclose(model.predicted.probs, 0.25, atol=1e-6)


def test_transfer_prediction_shape(mg1, rng):
    target = random_game(rng, max_actions=9)
    if target.feature_dim != mg1.feature_dim:
        feats = rng.normal(size=(target.num_players, target.num_outcomes,
                                 mg1.feature_dim))
        target = games.Game(action_counts=target.action_counts, features=feats)
    mods = games.internal_modifications(mg1)
    tmods = games.internal_modifications(target)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    model = solver.fit(mg1, mods, tilde, game_target=target,
                       mods_target=tmods,
                       params=solver.SolverParams(C=4.0, T=2000))
    assert model.predicted.num_outcomes == target.num_outcomes


def test_model_roundtrip(tmp_path, mg1):
    mods = games.internal_modifications(mg1)
    tilde = behavior.BehaviorDistribution([0.4, 0.1, 0.2, 0.3])
    model = solver.fit(mg1, mods, tilde, params=solver.SolverParams(C=10.0))
    path = tmp_path / "model.json"
    solver.save_model(model, path, target_game_ref="mg1")
    doc = solver.load_model(path)
    assert doc["C"] == pytest.approx(10.0)
    assert doc["target_game"] == "mg1"
    np.testing.assert_allclose(doc["w_hat"], model.recovered_w, atol=1e-12)
    assert json.dumps(doc)  # stays JSON-serializable


def test_iteration_bound_monotone():
    assert solver.iteration_bound(0.1, 8, 1.0) < solver.iteration_bound(0.01, 8, 1.0)
    with pytest.raises(ValueError):
        solver.iteration_bound(0.0, 8, 1.0)
