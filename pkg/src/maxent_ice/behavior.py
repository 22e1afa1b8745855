"""Joint-action distributions: sampling, estimation, entropy and regret functionals.

All randomness goes through numpy's PCG64 generator with explicit seeds so
experiment outputs are bit-reproducible across platforms.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from maxent_ice.games import Game, ModificationSet, RegretMatrix, regret_row_block

log = logging.getLogger("maxent_ice")

__all__ = [
    "BehaviorDistribution",
    "SampleSet",
    "uniform",
    "point_mass",
    "empirical",
    "draw",
    "expected_regret_vector",
    "regret_wrt_class",
    "sample_bound",
    "entropy",
    "log_loss",
    "save_distribution",
    "load_distribution",
    "save_samples",
    "load_samples",
]


@dataclass(frozen=True)
class BehaviorDistribution:
    """A distribution over flat outcome indices; normalized on construction."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size < 1:
            raise ValueError("empty distribution")
        if not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite")
        if p.min() < -1e-12:
            raise ValueError("probabilities must be nonnegative")
        p = np.clip(p, 0.0, None)
        total = p.sum()
        if total <= 0:
            raise ValueError("probabilities must have positive mass")
        p = p / total
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def num_outcomes(self) -> int:
        return self.probs.size


def uniform(n: int) -> BehaviorDistribution:
    return BehaviorDistribution(np.full(n, 1.0 / n))


def point_mass(n: int, a: int) -> BehaviorDistribution:
    p = np.zeros(n)
    p[a] = 1.0
    return BehaviorDistribution(p)


@dataclass(frozen=True)
class SampleSet:
    """Observed flat outcome indices with the seed that produced them."""

    outcomes: np.ndarray
    seed: int = 0

    def __post_init__(self):
        arr = np.asarray(self.outcomes, dtype=np.int64).ravel()
        if arr.size < 1:
            raise ValueError("sample set must contain at least one outcome")
        arr.setflags(write=False)
        object.__setattr__(self, "outcomes", arr)

    def __len__(self) -> int:
        return self.outcomes.size


def empirical(samples: SampleSet, game: Game) -> BehaviorDistribution:
    """Empirical distribution of the observed outcomes."""
    n = game.num_outcomes
    if samples.outcomes.min() < 0 or samples.outcomes.max() >= n:
        raise IndexError("sample outcome index out of range for game")
    counts = np.bincount(samples.outcomes, minlength=n).astype(float)
    return BehaviorDistribution(counts / len(samples))


def draw(sigma: BehaviorDistribution, m: int, seed: int) -> SampleSet:
    """m i.i.d. draws by inverse CDF over the fixed outcome order (PCG64)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(sigma.probs)
    cdf[-1] = 1.0
    u = rng.random(m)
    outcomes = np.searchsorted(cdf, u, side="right")
    return SampleSet(outcomes=outcomes, seed=seed)


def expected_regret_vector(sigma: BehaviorDistribution, r: RegretMatrix) -> np.ndarray:
    """sigma^T R, a K-vector."""
    if sigma.num_outcomes != r.rows.shape[0]:
        raise ValueError("distribution and regret matrix sizes disagree")
    return sigma.probs @ r.rows


def regret_wrt_class(
    sigma: BehaviorDistribution, w, mods: ModificationSet, game: Game
) -> float:
    """max over f in the class of (sigma^T R^f) . w."""
    if len(mods) == 0:
        raise ValueError("modification set is empty")
    w = np.asarray(w, dtype=float)
    best = -np.inf
    for f in mods:
        val = float((sigma.probs @ regret_row_block(game, f)) @ w)
        best = max(best, val)
    return best


def sample_bound(epsilon: float, delta: float, num_mods: int,
                 feature_dim: int) -> int:
    """Observations sufficient for the empirical regret features of every
    modification to stay within epsilon*Delta of their expectations in every
    coordinate, with probability at least 1 - delta (Hoeffding plus a union
    bound over num_mods * feature_dim deviation events)."""
    if not (0 < epsilon and 0 < delta < 1):
        raise ValueError("need epsilon > 0 and 0 < delta < 1")
    if num_mods < 1 or feature_dim < 1:
        raise ValueError("need at least one modification and one feature")
    return int(math.ceil(
        (2.0 / epsilon**2) * math.log(2.0 * num_mods * feature_dim / delta)))


def entropy(sigma: BehaviorDistribution) -> float:
    """Shannon entropy in nats."""
    p = sigma.probs
    nz = p > 0
    return float(-np.sum(p[nz] * np.log(p[nz])))


def log_loss(truth: BehaviorDistribution, pred: BehaviorDistribution) -> float:
    """Cross entropy -sum_a truth_a log pred_a in nats; +inf if pred misses support."""
    if truth.num_outcomes != pred.num_outcomes:
        raise ValueError("distributions are over different outcome spaces")
    support = truth.probs > 0
    if np.any(pred.probs[support] <= 0):
        log.warning("log_loss: prediction assigns zero mass on the truth's support")
        return float("inf")
    return float(-np.sum(truth.probs[support] * np.log(pred.probs[support])))


def save_distribution(sigma: BehaviorDistribution, path) -> None:
    with open(path, "w") as fh:
        json.dump(sigma.probs.tolist(), fh)


def load_distribution(path) -> BehaviorDistribution:
    with open(path) as fh:
        return BehaviorDistribution(np.asarray(json.load(fh), dtype=float))


def save_samples(samples: SampleSet, path) -> None:
    """One flat outcome index per line, header 'outcome'."""
    with open(path, "w") as fh:
        fh.write("outcome\n")
        for a in samples.outcomes:
            fh.write(f"{int(a)}\n")


def load_samples(path, seed: int = 0) -> SampleSet:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "outcome":
            raise ValueError("sample CSV must start with an 'outcome' header")
        outcomes = [int(line) for line in fh if line.strip()]
    return SampleSet(outcomes=np.asarray(outcomes, dtype=np.int64), seed=seed)
