"""Shared fixtures: a tiny hand-built 2x2 game and random game factories."""

import numpy as np
import pytest

from maxent_ice import games


def make_mg1():
    """2 players x 2 actions, K=2.  Player 0 earns feature 0 on (0,0) and
    feature 1 on (1,1); player 1 is indifferent everywhere."""
    feats = np.zeros((2, 4, 2))
    feats[0, 0] = (1.0, 0.0)  # outcome (0,0)
    feats[0, 3] = (0.0, 1.0)  # outcome (1,1)
    return games.Game(action_counts=(2, 2), features=feats,
                      feature_names=("match_low", "match_high"))


@pytest.fixture
def mg1():
    return make_mg1()


def random_game(rng, max_actions=64, max_players=4, k_max=4):
    """A random game with at most max_actions outcomes."""
    while True:
        n_players = rng.integers(1, max_players + 1)
        counts = tuple(int(c) for c in rng.integers(2, 5, size=n_players))
        if np.prod(counts) <= max_actions:
            break
    k = int(rng.integers(1, k_max + 1))
    feats = rng.normal(size=(n_players, int(np.prod(counts)), k))
    return games.Game(action_counts=counts, features=feats)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
