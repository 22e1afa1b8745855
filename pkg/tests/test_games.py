import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxent_ice import games
from tests.conftest import make_mg1, random_game


def test_encode_decode_roundtrip(mg1):
    for flat in range(mg1.num_outcomes):
        assert games.encode_outcome(mg1, games.decode_outcome(mg1, flat)) == flat


def test_encode_player0_most_significant(mg1):
    assert games.encode_outcome(mg1, (1, 0)) == 2
    assert games.encode_outcome(mg1, (0, 1)) == 1


def test_encode_rejects_bad_digits(mg1):
    with pytest.raises(IndexError):
        games.encode_outcome(mg1, (2, 0))
    with pytest.raises(IndexError):
        games.encode_outcome(mg1, (0,))


@given(st.lists(st.integers(2, 4), min_size=1, max_size=4),
       st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_encode_decode_property(counts, raw):
    g = games.Game(action_counts=tuple(counts),
                   features=np.zeros((len(counts), int(np.prod(counts)), 1)))
    flat = raw % g.num_outcomes
    digits = games.decode_outcome(g, flat)
    assert all(0 <= d < c for d, c in zip(digits, counts))
    assert games.encode_outcome(g, digits) == flat


def test_utility_linear_in_w(mg1):
    w = np.array([2.0, -3.0])
    assert games.utility(mg1, (0, 0), 0, w) == pytest.approx(2.0)
    assert games.utility(mg1, (1, 1), 0, w) == pytest.approx(-3.0)
    assert games.utility(mg1, (0, 1), 0, w) == 0.0
    assert games.utility(mg1, 3, 1, w) == 0.0


def test_internal_modifications_count(mg1):
    mods = games.internal_modifications(mg1)
    # n(n-1) switches per player
    assert len(mods) == 2 * 2 * 1
    assert not any(f.is_identity() for f in mods)


def test_swap_modifications_count(mg1):
    mods = games.swap_modifications(mg1)
    assert len(mods) == 2 * 2**2
    assert sum(f.is_identity() for f in mods) == 2


def test_identity_modification_has_zero_regret(mg1):
    ident = games.ModificationFunction(player=0, table=(0, 1))
    assert np.all(games.regret_row_block(mg1, ident) == 0.0)


def test_regret_rows_match_definition(mg1):
    # switch player 0's action 0 -> 1: outcome (0,b) maps to (1,b)
    f = games.ModificationFunction.switch(0, 0, 1, 2)
    rows = games.regret_row_block(mg1, f)
    for a in range(4):
        da, db = games.decode_outcome(mg1, a)
        mapped = games.encode_outcome(mg1, (f.apply(da), db))
        np.testing.assert_allclose(
            rows[a], mg1.features[0, mapped] - mg1.features[0, a])


def test_demonstrated_regrets_is_expectation(rng):
    g = random_game(rng)
    mods = games.internal_modifications(g)
    probs = rng.dirichlet(np.ones(g.num_outcomes))
    demo = games.demonstrated_regrets(g, mods, probs)
    for j, f in enumerate(mods):
        np.testing.assert_allclose(
            demo[j], probs @ games.regret_row_block(g, f))


def test_max_regret_entry(rng):
    g = random_game(rng)
    mods = games.internal_modifications(g)
    blocks = [games.regret_row_block(g, f) for f in mods]
    expected = max(float(np.abs(b).max()) for b in blocks)
    assert games.max_regret_entry(g, mods) == pytest.approx(expected)


def test_save_load_roundtrip(tmp_path, mg1):
    path = tmp_path / "game.json"
    games.save_game(mg1, path)
    g2 = games.load_game(path)
    assert g2.action_counts == mg1.action_counts
    np.testing.assert_allclose(g2.features, mg1.features)
    assert g2.feature_names == mg1.feature_names


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"players": 2, "actions": [2],
                                "feature_dim": 1, "features": []}))
    with pytest.raises(ValueError):
        games.load_game(path)


def test_game_validation():
    with pytest.raises(ValueError):
        games.Game(action_counts=(2, 2), features=np.zeros((2, 3, 1)))
    with pytest.raises(ValueError):
        games.Game(action_counts=(0,), features=np.zeros((1, 1, 1)))
    bad = np.full((1, 2, 1), np.nan)
    with pytest.raises(ValueError):
        games.Game(action_counts=(2,), features=bad)


def test_mg1_fixture_matches_builder(mg1):
    other = make_mg1()
    np.testing.assert_allclose(mg1.features, other.features)
