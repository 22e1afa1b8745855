"""Comparison models: smoothed count estimation and a log-linear utility model.

The log-linear baseline scores an outcome by the summed per-player features,
so a fitted weight vector transfers to any game with the same feature
semantics.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from maxent_ice.behavior import BehaviorDistribution, SampleSet, empirical
from maxent_ice.games import Game

log = logging.getLogger("maxent_ice")

__all__ = ["LogisticModel", "mle_uniform_prior", "fit_logistic", "predict_logistic"]

_W_CAP = 50.0


def mle_uniform_prior(samples: SampleSet, game: Game) -> BehaviorDistribution:
    """Add-one smoothed maximum likelihood over joint actions."""
    n = game.num_outcomes
    counts = empirical(samples, game).probs * len(samples)
    return BehaviorDistribution((counts + 1.0) / (len(samples) + n))


@dataclass
class LogisticModel:
    w: np.ndarray
    ridge: float
    converged: bool

    def to_dict(self) -> dict:
        return {"w": self.w.tolist(), "ridge": self.ridge, "converged": self.converged}

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "LogisticModel":
        with open(path) as fh:
            doc = json.load(fh)
        return cls(w=np.asarray(doc["w"], dtype=float), ridge=float(doc["ridge"]),
                   converged=bool(doc["converged"]))


def _summed_features(game: Game) -> np.ndarray:
    return game.features.sum(axis=0)  # (num_outcomes, K)


def _log_likelihood(w, phi, mean_phi, ridge):
    scores = phi @ w
    m = scores.max()
    log_z = m + np.log(np.exp(scores - m).sum())
    return float(mean_phi @ w - log_z - ridge * (w @ w))


def _grad(w, phi, mean_phi, ridge):
    scores = phi @ w
    p = np.exp(scores - scores.max())
    p /= p.sum()
    return mean_phi - p @ phi - 2.0 * ridge * w


def fit_logistic(samples: SampleSet, game: Game, ridge: float = 1e-3,
                 max_iters: int = 500, grad_tol: float = 1e-8) -> LogisticModel:
    """Fit weights by gradient ascent with backtracking line search.

    Maximizes the average log likelihood of the observed outcomes under
    sigma(w) proportional to exp(w . phi(a)), minus a ridge penalty.  With
    ridge 0 and separable data the weights are capped at ||w||_inf <= 50 and
    the model comes back flagged as not converged.
    """
    if ridge < 0:
        raise ValueError("ridge must be >= 0")
    phi = _summed_features(game)
    emp = empirical(samples, game)
    mean_phi = emp.probs @ phi
    w = np.zeros(game.feature_dim)
    converged = False
    step = 1.0
    for _ in range(max_iters):
        g = _grad(w, phi, mean_phi, ridge)
        if np.abs(g).max() <= grad_tol:
            converged = True
            break
        base = _log_likelihood(w, phi, mean_phi, ridge)
        step = min(step * 2.0, 1e6)
        while step > 1e-18:
            cand = w + step * g
            if _log_likelihood(cand, phi, mean_phi, ridge) > base:
                w = cand
                break
            step *= 0.5
        if np.abs(w).max() > _W_CAP:
            w = np.clip(w, -_W_CAP, _W_CAP)
            log.warning("logistic weights hit the cap; data may be separable")
            break
    return LogisticModel(w=w, ridge=ridge, converged=converged)


def predict_logistic(model: LogisticModel, game: Game) -> BehaviorDistribution:
    """Apply fitted weights to any game sharing the feature dimension."""
    if model.w.size != game.feature_dim:
        raise ValueError("model and game disagree on feature dimension")
    scores = _summed_features(game) @ model.w
    p = np.exp(scores - scores.max())
    return BehaviorDistribution(p)
