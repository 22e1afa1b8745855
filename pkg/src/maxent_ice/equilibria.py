"""Ground-truth behavior generation via internal-regret matching.

Each player tracks cumulative regrets for every action switch and plays the
stationary distribution of the induced switch-probability matrix; the
empirical joint distribution of play approaches the correlated-equilibrium
set, with the maximal switch regret shrinking like 1/sqrt(iterations).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from maxent_ice.behavior import BehaviorDistribution
from maxent_ice.games import Game

log = logging.getLogger("maxent_ice")

__all__ = ["EquilibriumRun", "regret_matching", "welfare_tilted_selection"]


@dataclass(frozen=True)
class EquilibriumRun:
    sigma: BehaviorDistribution
    epsilon_achieved: float
    iterations: int
    welfare: float
    seed: int = 0


def _stationary(q: np.ndarray, warm: np.ndarray) -> np.ndarray:
    """Stationary distribution of a row-stochastic matrix."""
    n = q.shape[0]
    m = q.T - np.eye(n)
    m[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        p = np.linalg.solve(m, b)
    except np.linalg.LinAlgError:
        p = warm.copy()
        for _ in range(200):
            p = p @ q
    p = np.clip(p, 0.0, None)
    total = p.sum()
    return p / total if total > 0 else np.full(n, 1.0 / n)


def _strategy_from_regrets(reg: np.ndarray, warm: np.ndarray) -> np.ndarray:
    pos = np.maximum(reg, 0.0)
    np.fill_diagonal(pos, 0.0)
    mu = pos.sum(axis=1).max()
    if mu <= 0.0:
        return np.full(reg.shape[0], 1.0 / reg.shape[0])
    q = pos / mu
    np.fill_diagonal(q, 1.0 - q.sum(axis=1))
    return _stationary(q, warm)


def regret_matching(
    game: Game, w_star, iters: int, seed: int, update_every: int = 16
) -> EquilibriumRun:
    """Run sampled internal-regret matching for `iters` rounds.

    Strategies are refreshed every `update_every` rounds so the inner loop
    vectorizes; sampled play within a window uses the frozen strategies.
    The reported epsilon is recomputed exactly from the empirical play counts.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    w_star = np.asarray(w_star, dtype=float)
    n_players = game.num_players
    counts_shape = game.action_counts
    rng = np.random.default_rng(seed)

    util_flat = [game.features[i] @ w_star for i in range(n_players)]
    # per player: utility tensor with that player's own axis moved last
    util_moved = [
        np.moveaxis(util_flat[i].reshape(counts_shape), i, -1) for i in range(n_players)
    ]
    regs = [np.zeros((c, c)) for c in counts_shape]
    strategies = [np.full(c, 1.0 / c) for c in counts_shape]
    outcome_counts = np.zeros(game.num_outcomes, dtype=np.int64)
    radix = game._radix

    done = 0
    while done < iters:
        window = min(update_every, iters - done)
        for i in range(n_players):
            strategies[i] = _strategy_from_regrets(regs[i], strategies[i])
        digits = np.empty((window, n_players), dtype=np.int64)
        for i in range(n_players):
            cdf = np.cumsum(strategies[i])
            cdf[-1] = 1.0
            digits[:, i] = np.searchsorted(cdf, rng.random(window), side="right")
        flat = digits @ radix
        np.add.at(outcome_counts, flat, 1)
        for i in range(n_players):
            others = tuple(digits[:, j] for j in range(n_players) if j != i)
            counterfactual = util_moved[i][others]  # (window, A_i)
            realized = counterfactual[np.arange(window), digits[:, i]]
            np.add.at(regs[i], digits[:, i], counterfactual - realized[:, None])
        done += window

    probs = outcome_counts / iters
    welfare = float(sum(probs @ u for u in util_flat))
    eps = _empirical_switch_regret(game, probs, util_flat)
    return EquilibriumRun(
        sigma=BehaviorDistribution(probs),
        epsilon_achieved=eps,
        iterations=iters,
        welfare=welfare,
        seed=seed,
    )


def _empirical_switch_regret(game: Game, probs: np.ndarray, util_flat) -> float:
    """Max expected switch regret of the empirical distribution, from scratch."""
    digits = game.outcome_digits()
    flat = np.arange(game.num_outcomes, dtype=np.int64)
    worst = 0.0
    for i in range(game.num_players):
        n = game.action_counts[i]
        own = digits[:, i]
        values = np.empty((game.num_outcomes, n))
        for y in range(n):
            values[:, y] = util_flat[i][flat + (y - own) * game._radix[i]]
        weighted = probs[:, None] * (values - util_flat[i][:, None])
        acc = np.zeros((n, n))
        np.add.at(acc, own, weighted)
        np.fill_diagonal(acc, 0.0)
        if acc.size:
            worst = max(worst, float(acc.max()))
    return worst


def mixed_equilibrium(
    game: Game,
    w_star: np.ndarray,
    iters: int = 20_000,
    seeds: range | tuple = range(32),
    update_every: int = 16,
) -> EquilibriumRun:
    """Uniform mixture of independent regret-matching runs.

    Switch regret is linear in the joint distribution, so averaging runs
    with regret at most eps yields a distribution with regret at most eps
    (the set of approximate correlated equilibria is convex).  The mixture
    spreads mass over the basins the individual runs fall into, giving a
    far higher-entropy equilibrium than any single run while keeping the
    same regret guarantee.  Reported epsilon is recomputed for the mixture.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    probs = np.zeros(game.num_outcomes)
    total_welfare = 0.0
    for s in seeds:
        run = regret_matching(game, w_star, iters=iters, seed=s,
                              update_every=update_every)
        probs += run.sigma.probs
        total_welfare += run.welfare
    probs /= len(seeds)
    util_flat = [game.features[i] @ w_star for i in range(game.num_players)]
    eps = _empirical_switch_regret(game, probs, util_flat)
    return EquilibriumRun(
        sigma=BehaviorDistribution(probs),
        epsilon_achieved=eps,
        iterations=iters * len(seeds),
        welfare=total_welfare / len(seeds),
        seed=seeds[0],
    )


def welfare_tilted_selection(runs, epsilon_cap: float):
    """Among runs meeting the regret cap, pick the welfare maximizer.

    Returns (run, under_cap); if nothing meets the cap, falls back to the
    minimum-regret run with under_cap False.
    """
    runs = list(runs)
    if not runs:
        raise ValueError("no equilibrium runs to select from")
    eligible = [r for r in runs if r.epsilon_achieved <= epsilon_cap]
    if eligible:
        return max(eligible, key=lambda r: r.welfare), True
    log.warning("no equilibrium run under epsilon cap %g; returning min-regret run",
                epsilon_cap)
    return min(runs, key=lambda r: r.epsilon_achieved), False
