"""Linearly parameterized normal-form games and action-modification machinery.

A game holds one K-dimensional feature vector per (player, outcome); player
utilities are dot products of those features with a shared weight vector.
Modification functions remap a single player's recommended action, and their
regret matrices tabulate the per-outcome feature gain of deviating.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Game",
    "ModificationFunction",
    "ModificationSet",
    "RegretMatrix",
    "encode_outcome",
    "decode_outcome",
    "utility",
    "internal_modifications",
    "swap_modifications",
    "regret_matrix",
    "modification_outcome_map",
    "regret_row_block",
    "demonstrated_regrets",
    "max_regret_entry",
    "save_game",
    "load_game",
]


@dataclass(frozen=True)
class Game:
    """Normal-form game with linearly parameterized utilities.

    features[i, a] is the K-vector of outcome features for player i at flat
    outcome index a.  Outcome indices are mixed-radix over per-player action
    counts with player 0 most significant.
    """

    action_counts: tuple[int, ...]
    features: np.ndarray  # (num_players, num_outcomes, feature_dim)
    feature_names: tuple[str, ...] = ()

    def __post_init__(self):
        counts = tuple(int(c) for c in self.action_counts)
        object.__setattr__(self, "action_counts", counts)
        if len(counts) < 1 or any(c < 1 for c in counts):
            raise ValueError("need at least one player, each with >= 1 action")
        feats = np.ascontiguousarray(np.asarray(self.features, dtype=float))
        n_out = math.prod(counts)
        if feats.ndim != 3 or feats.shape[0] != len(counts) or feats.shape[1] != n_out:
            raise ValueError(
                f"features must have shape (players={len(counts)}, outcomes={n_out}, K); "
                f"got {feats.shape}"
            )
        if feats.shape[2] < 1:
            raise ValueError("feature dimension must be >= 1")
        if not np.all(np.isfinite(feats)):
            raise ValueError("features must be finite")
        feats.setflags(write=False)
        object.__setattr__(self, "features", feats)
        names = tuple(self.feature_names) or tuple(
            f"f{k}" for k in range(feats.shape[2])
        )
        if len(names) != feats.shape[2]:
            raise ValueError("feature_names length must equal feature_dim")
        object.__setattr__(self, "feature_names", names)
        # radix weights, player 0 most significant
        weights = np.ones(len(counts), dtype=np.int64)
        for i in range(len(counts) - 2, -1, -1):
            weights[i] = weights[i + 1] * counts[i + 1]
        weights.setflags(write=False)
        object.__setattr__(self, "_radix", weights)
        object.__setattr__(self, "_digits_cache", None)

    @property
    def num_players(self) -> int:
        return len(self.action_counts)

    @property
    def num_outcomes(self) -> int:
        return self.features.shape[1]

    @property
    def feature_dim(self) -> int:
        return self.features.shape[2]

    def outcome_digits(self) -> np.ndarray:
        """All outcomes as an (num_outcomes, num_players) int array, cached."""
        cached = self._digits_cache
        if cached is None:
            flat = np.arange(self.num_outcomes, dtype=np.int64)
            cached = (flat[:, None] // self._radix[None, :]) % np.array(
                self.action_counts, dtype=np.int64
            )
            cached.setflags(write=False)
            object.__setattr__(self, "_digits_cache", cached)
        return cached


def encode_outcome(game: Game, digits) -> int:
    """Flat index of a joint action (player 0 most significant)."""
    digits = tuple(int(d) for d in digits)
    if len(digits) != game.num_players:
        raise IndexError("wrong number of action digits")
    for i, (d, c) in enumerate(zip(digits, game.action_counts)):
        if not 0 <= d < c:
            raise IndexError(f"action {d} out of range for player {i}")
    return int(np.dot(digits, game._radix))


def decode_outcome(game: Game, flat: int) -> tuple[int, ...]:
    """Joint action digits of a flat outcome index."""
    flat = int(flat)
    if not 0 <= flat < game.num_outcomes:
        raise IndexError(f"outcome index {flat} out of range")
    out = []
    for c, w in zip(game.action_counts, game._radix):
        out.append(int(flat // w) % c)
    return tuple(out)


def utility(game: Game, a, player: int, w) -> float:
    """Utility of player at outcome a (flat index or digit tuple) under weights w."""
    flat = a if isinstance(a, (int, np.integer)) else encode_outcome(game, a)
    if not 0 <= int(flat) < game.num_outcomes:
        raise IndexError(f"outcome index {flat} out of range")
    if not 0 <= player < game.num_players:
        raise IndexError(f"player {player} out of range")
    w = np.asarray(w, dtype=float)
    if w.shape != (game.feature_dim,):
        raise ValueError("weight vector has wrong dimension")
    return float(game.features[player, int(flat)] @ w)


@dataclass(frozen=True)
class ModificationFunction:
    """A remapping of one player's recommended actions.

    table[x] is the action played when action x is recommended.
    """

    player: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        n = len(self.table)
        if any(not 0 <= t < n for t in self.table):
            raise ValueError("modification table entries out of range")

    @classmethod
    def switch(cls, player: int, x: int, y: int, num_actions: int) -> "ModificationFunction":
        """Replace recommendation x with y, leave everything else unchanged."""
        if not (0 <= x < num_actions and 0 <= y < num_actions):
            raise ValueError("switch actions out of range")
        table = list(range(num_actions))
        table[x] = y
        return cls(player=player, table=tuple(table))

    def apply(self, a_i: int) -> int:
        return self.table[a_i]

    def is_identity(self) -> bool:
        return all(t == i for i, t in enumerate(self.table))

    @property
    def label(self) -> str:
        diffs = [(x, y) for x, y in enumerate(self.table) if x != y]
        if len(diffs) == 1:
            x, y = diffs[0]
            return f"p{self.player}:{x}->{y}"
        body = ",".join(str(t) for t in self.table)
        return f"p{self.player}:[{body}]"


@dataclass(frozen=True)
class ModificationSet:
    """Ordered class of modification functions; order fixes all tie-breaks."""

    entries: tuple[ModificationFunction, ...]
    class_kind: str = "custom"  # internal | swap | custom

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> ModificationFunction:
        return self.entries[i]


def internal_modifications(game: Game) -> ModificationSet:
    """All single-action switches, sorted by (player, from, to), identity excluded."""
    entries = []
    for i, n in enumerate(game.action_counts):
        for x in range(n):
            for y in range(n):
                if x != y:
                    entries.append(ModificationFunction.switch(i, x, y, n))
    return ModificationSet(entries=tuple(entries), class_kind="internal")


def swap_modifications(game: Game) -> ModificationSet:
    """All action remappings per player (identity included), lexicographic."""
    entries = []
    for i, n in enumerate(game.action_counts):
        for table in itertools.product(range(n), repeat=n):
            entries.append(ModificationFunction(player=i, table=table))
    return ModificationSet(entries=tuple(entries), class_kind="swap")


def modification_outcome_map(game: Game, f: ModificationFunction) -> np.ndarray:
    """perm[a] = flat index of the outcome after applying f to player f.player."""
    if not 0 <= f.player < game.num_players:
        raise IndexError(f"player {f.player} out of range")
    if len(f.table) != game.action_counts[f.player]:
        raise ValueError("modification table size does not match the game")
    digits = game.outcome_digits()
    old = digits[:, f.player]
    new = np.asarray(f.table, dtype=np.int64)[old]
    return np.arange(game.num_outcomes, dtype=np.int64) + (new - old) * game._radix[f.player]


@dataclass(frozen=True)
class RegretMatrix:
    """Per-outcome feature gain of one modification: row a = theta[f(a)] - theta[a]."""

    owner: ModificationFunction
    rows: np.ndarray  # (num_outcomes, feature_dim)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)


def regret_row_block(game: Game, f: ModificationFunction) -> np.ndarray:
    """Raw (num_outcomes, K) regret rows for f, without the wrapper."""
    perm = modification_outcome_map(game, f)
    feats = game.features[f.player]
    return feats[perm] - feats


def regret_matrix(game: Game, f: ModificationFunction) -> RegretMatrix:
    return RegretMatrix(owner=f, rows=regret_row_block(game, f))


def demonstrated_regrets(game: Game, mods: ModificationSet, probs: np.ndarray) -> np.ndarray:
    """Expected regret vectors sigma^T R^f, stacked as a (|mods|, K) array."""
    probs = np.asarray(probs, dtype=float)
    out = np.empty((len(mods), game.feature_dim))
    for j, f in enumerate(mods):
        out[j] = probs @ regret_row_block(game, f)
    return out


def max_regret_entry(game: Game, mods: ModificationSet) -> float:
    """Largest absolute entry over all regret matrices of the class."""
    best = 0.0
    for f in mods:
        block = regret_row_block(game, f)
        if block.size:
            best = max(best, float(np.abs(block).max()))
    return best


def save_game(game: Game, path) -> None:
    """Write the dense JSON game format."""
    doc = {
        "players": game.num_players,
        "actions": list(game.action_counts),
        "feature_dim": game.feature_dim,
        "feature_names": list(game.feature_names),
        "features": [
            game.features[i, a].tolist()
            for i in range(game.num_players)
            for a in range(game.num_outcomes)
        ],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_game(path) -> Game:
    """Read a game file: either a dense feature table or a routing generator."""
    with open(path) as fh:
        doc = json.load(fh)
    return game_from_dict(doc)


def game_from_dict(doc: dict) -> Game:
    if "generator" in doc:
        from maxent_ice import routing

        config = routing.RoutingConfig.from_dict(doc["generator"])
        game, _ = routing.build(config)
        return game
    counts = [int(c) for c in doc["actions"]]
    n_players = int(doc["players"])
    if len(counts) != n_players:
        raise ValueError("actions list does not match player count")
    k = int(doc["feature_dim"])
    n_out = math.prod(counts)
    flat = np.asarray(doc["features"], dtype=float)
    if flat.shape != (n_players * n_out, k):
        raise ValueError(
            f"features must be {n_players * n_out} rows of {k} floats; got {flat.shape}"
        )
    feats = flat.reshape(n_players, n_out, k)
    names = tuple(doc.get("feature_names") or ())
    return Game(action_counts=tuple(counts), features=feats, feature_names=names)
