"""Independent rationality checks for predicted behavior.

Everything here deliberately avoids the exponentiated-gradient solver's code
paths: hull membership is decided by a small dense simplex LP (optionally
Frank-Wolfe), and the reference primal solver hands the optimization to a
conic solver.  These are the cross-checks the main solver is validated against.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from maxent_ice import behavior, games
from maxent_ice.behavior import BehaviorDistribution
from maxent_ice.games import Game, ModificationSet
from maxent_ice.linprog import solve_lp

log = logging.getLogger("maxent_ice")

__all__ = [
    "RationalityCertificate",
    "ViolationCheck",
    "hull_membership_lp",
    "slack_against_hull",
    "certify_slack",
    "primal_value",
    "check_strong_rationality",
    "sample_directions",
    "brute_force_primal",
]

BRUTE_FORCE_MAX_OUTCOMES = 4096


def hull_membership_lp(point, vertices, method: str = "exact-lp", tol: float = 1e-9,
                       max_iters: int = 2000):
    """Minimal l-inf distance from a point to the convex hull of vertices.

    Returns (distance, mixture weights).  Distance 0 certifies membership.
    method 'frank-wolfe' runs away-free Frank-Wolfe with a certified
    linearization gap and falls back to the exact LP if it fails to converge.
    """
    point = np.asarray(point, dtype=float).ravel()
    verts = np.atleast_2d(np.asarray(vertices, dtype=float))
    if verts.shape[0] < 1 or verts.shape[1] != point.size:
        raise ValueError("need at least one vertex of matching dimension")
    if method == "frank-wolfe":
        res = _hull_frank_wolfe(point, verts, tol, max_iters)
        if res is not None:
            return res
        log.debug("frank-wolfe did not certify gap <= %g; using exact LP", tol)
    return _hull_exact(point, verts)


def _hull_exact(point: np.ndarray, verts: np.ndarray):
    n, k = verts.shape
    # variables: (eta_1..eta_n, t); minimize t
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.zeros((2 * k, n + 1))
    b_ub = np.zeros(2 * k)
    a_ub[:k, :n] = verts.T
    a_ub[:k, -1] = -1.0
    b_ub[:k] = point
    a_ub[k:, :n] = -verts.T
    a_ub[k:, -1] = -1.0
    b_ub[k:] = -point
    a_eq = np.zeros((1, n + 1))
    a_eq[0, :n] = 1.0
    res = solve_lp(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=[1.0])
    if res.status != "optimal":
        raise RuntimeError(f"hull membership LP came back {res.status}")
    eta = np.clip(res.x[:n], 0.0, None)
    eta = eta / eta.sum()
    return max(res.value, 0.0), eta


def _hull_frank_wolfe(point: np.ndarray, verts: np.ndarray, tol: float, max_iters: int):
    n = verts.shape[0]
    eta = np.full(n, 1.0 / n)
    for t in range(max_iters):
        q = verts.T @ eta - point
        k_star = int(np.argmax(np.abs(q)))
        grad = np.sign(q[k_star]) * verts[:, k_star]  # subgradient of max_k |q_k|
        j = int(np.argmin(grad))
        gap = float(grad @ eta - grad[j])
        if gap <= tol:
            return float(np.max(np.abs(q))), eta
        step = 2.0 / (t + 2.0)
        direction = -eta
        direction[j] += 1.0
        eta = eta + step * direction
    return None


@dataclass(frozen=True)
class RationalityCertificate:
    """Certified slack: the worst l-inf hull deviation over target modifications."""

    nu: float
    eta: np.ndarray  # (|mods_target|, |mods_obs|) mixture weights
    method: str
    tolerance: float
    per_mod_distance: np.ndarray = field(default=None)

    def to_dict(self, mods_target: ModificationSet | None = None) -> dict:
        labels = (
            [f.label for f in mods_target]
            if mods_target is not None
            else [str(i) for i in range(self.eta.shape[0])]
        )
        return {
            "nu": self.nu,
            "method": self.method,
            "tolerance": self.tolerance,
            "eta": {lab: row.tolist() for lab, row in zip(labels, self.eta)},
        }


def slack_against_hull(points: np.ndarray, vertices: np.ndarray,
                       method: str = "exact-lp", tol: float = 1e-9):
    """For each row p of points, min over mixtures of ||p - eta^T vertices||_inf.

    Returns (distances, mixtures); the certified slack is distances.max().
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dists = np.empty(points.shape[0])
    etas = np.empty((points.shape[0], np.atleast_2d(vertices).shape[0]))
    for i, p in enumerate(points):
        dists[i], etas[i] = hull_membership_lp(p, vertices, method=method, tol=tol)
    return dists, etas


def certify_slack(
    sigma_hat: BehaviorDistribution,
    sigma_tilde: BehaviorDistribution,
    mods_obs: ModificationSet,
    mods_target: ModificationSet,
    game_obs: Game,
    game_target: Game,
    method: str = "exact-lp",
    tolerance: float = 1e-9,
) -> RationalityCertificate:
    """Smallest slack under which sigma_hat's regret vectors are explained
    by mixtures of the demonstrated behavior's regret vectors."""
    demo = games.demonstrated_regrets(game_obs, mods_obs, sigma_tilde.probs)
    pts = games.demonstrated_regrets(game_target, mods_target, sigma_hat.probs)
    dists, etas = slack_against_hull(pts, demo, method=method, tol=tolerance)
    return RationalityCertificate(
        nu=float(dists.max()),
        eta=etas,
        method=method,
        tolerance=tolerance,
        per_mod_distance=dists,
    )


def primal_value(
    sigma_hat: BehaviorDistribution,
    sigma_tilde: BehaviorDistribution,
    mods_obs: ModificationSet,
    mods_target: ModificationSet,
    game_obs: Game,
    game_target: Game,
    C: float,
) -> float:
    """Slack-penalized entropy H(sigma_hat) - C * nu(sigma_hat)."""
    cert = certify_slack(sigma_hat, sigma_tilde, mods_obs, mods_target,
                         game_obs, game_target)
    return behavior.entropy(sigma_hat) - C * cert.nu


def sample_directions(k: int, num_dirs: int, seed: int) -> np.ndarray:
    """All 2K signed axes plus uniform draws from the l1 sphere."""
    axes = np.vstack([np.eye(k), -np.eye(k)])
    extra = max(num_dirs - 2 * k, 0)
    if extra == 0:
        return axes[:num_dirs] if num_dirs < 2 * k else axes
    rng = np.random.default_rng(seed)
    mags = rng.dirichlet(np.ones(k), size=extra)
    signs = rng.integers(0, 2, size=(extra, k)) * 2 - 1
    return np.vstack([axes, mags * signs])


@dataclass(frozen=True)
class ViolationCheck:
    max_violation: float
    worst_direction: np.ndarray


def check_strong_rationality(
    sigma_hat: BehaviorDistribution,
    sigma_tilde: BehaviorDistribution,
    mods: ModificationSet,
    game: Game,
    nu: float,
    num_dirs: int = 1000,
    seed: int = 0,
) -> ViolationCheck:
    """Sampled check that the prediction never out-regrets the demonstration.

    Over sampled weight vectors w, returns the largest value of
    regret(sigma_hat, w) - regret(sigma_tilde, w) - nu * ||w||_1.
    A positive value is a concrete utility vector witnessing that the agents
    would prefer the demonstrated behavior.
    """
    if nu < 0:
        raise ValueError("nu must be >= 0")
    demo = games.demonstrated_regrets(game, mods, sigma_tilde.probs)
    pred = games.demonstrated_regrets(game, mods, sigma_hat.probs)
    dirs = sample_directions(game.feature_dim, num_dirs, seed)
    pred_reg = (pred @ dirs.T).max(axis=0)
    demo_reg = (demo @ dirs.T).max(axis=0)
    viol = pred_reg - demo_reg - nu * np.abs(dirs).sum(axis=1)
    worst = int(np.argmax(viol))
    return ViolationCheck(max_violation=float(viol[worst]),
                          worst_direction=dirs[worst].copy())


def brute_force_primal(
    sigma_tilde: BehaviorDistribution,
    mods_obs: ModificationSet,
    mods_target: ModificationSet,
    game_obs: Game,
    game_target: Game,
    C: float,
    tol: float = 1e-6,
) -> BehaviorDistribution:
    """Reference primal solver: maximize H(sigma) - C*nu directly.

    Hands the convex program (entropy objective, per-modification mixture
    constraints, shared slack) to a conic solver.  Small instances only;
    used as the correctness oracle for the gradient-based solver.
    """
    import cvxpy as cp

    n = game_target.num_outcomes
    if n > BRUTE_FORCE_MAX_OUTCOMES:
        raise ValueError(
            f"brute-force oracle refuses |outcomes| = {n} > {BRUTE_FORCE_MAX_OUTCOMES}"
        )
    demo = games.demonstrated_regrets(game_obs, mods_obs, sigma_tilde.probs)
    sigma = cp.Variable(n, nonneg=True)
    nu = cp.Variable(nonneg=True)
    constraints = [cp.sum(sigma) == 1]
    objective = cp.sum(cp.entr(sigma)) - C * nu
    if len(mods_target) > 0:
        eta = cp.Variable((len(mods_target), len(mods_obs)), nonneg=True)
        constraints.append(cp.sum(eta, axis=1) == 1)
        for i, f in enumerate(mods_target):
            rblock = games.regret_row_block(game_target, f)
            gap = rblock.T @ sigma - demo.T @ eta[i]
            constraints += [gap <= nu, -gap <= nu]
    problem = cp.Problem(cp.Maximize(objective), constraints)
    problem.solve(solver=cp.CLARABEL)
    if sigma.value is None:
        problem.solve(solver=cp.SCS, eps=tol)
    if sigma.value is None:
        raise RuntimeError(f"reference primal solve failed: {problem.status}")
    return BehaviorDistribution(np.clip(sigma.value, 0.0, None))
