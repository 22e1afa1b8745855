"""Congestion routing games: drivers pick fixed routes over a shared network.

An outcome is one route choice per driver.  Edge travel times follow a
BPR-style latency curve in the edge load, gas burn grows with congestion, and
signalized edges add stopped time proportional to the competing load.  Outcome
features are the negated per-driver totals (time, distance, gas, stopped
time), so positive utility weights express cost aversion.  Time features are
expressed in hours (configs carry minutes) to keep regret magnitudes O(1).
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field, asdict, replace

import numpy as np

from maxent_ice.games import Game

__all__ = [
    "Edge",
    "Driver",
    "RoutingConfig",
    "VARIANT_KINDS",
    "build",
    "variant",
    "default_config",
    "desk_config",
]

FEATURE_NAMES = ("travel_time_h", "distance_km", "gas_l", "stopped_time_h")
VARIANT_KINDS = ("add_highway", "add_driver", "gas_shortage", "congestion")


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length_km: float
    base_time_min: float
    capacity: int
    gas_rate_l_per_km: float
    has_signal: bool


@dataclass(frozen=True)
class Driver:
    origin: int
    destination: int
    routes: tuple[tuple[int, ...], ...]  # each route is a sequence of edge indices


@dataclass(frozen=True)
class RoutingConfig:
    num_nodes: int
    edges: tuple[Edge, ...]
    drivers: tuple[Driver, ...]
    true_w: tuple[float, float, float, float]
    bpr_coeff: float = 0.15
    bpr_power: float = 4.0
    major_edges: tuple[int, ...] = ()
    seed: int = 0

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["edges"] = [asdict(e) for e in self.edges]
        doc["drivers"] = [
            {"origin": d.origin, "destination": d.destination,
             "routes": [list(r) for r in d.routes]}
            for d in self.drivers
        ]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "RoutingConfig":
        edges = tuple(Edge(**e) for e in doc["edges"])
        drivers = tuple(
            Driver(
                origin=d["origin"],
                destination=d["destination"],
                routes=tuple(tuple(r) for r in d["routes"]),
            )
            for d in doc["drivers"]
        )
        return cls(
            num_nodes=doc["num_nodes"],
            edges=edges,
            drivers=drivers,
            true_w=tuple(doc["true_w"]),
            bpr_coeff=doc.get("bpr_coeff", 0.15),
            bpr_power=doc.get("bpr_power", 4.0),
            major_edges=tuple(doc.get("major_edges", ())),
            seed=doc.get("seed", 0),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def load(cls, path) -> "RoutingConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _validate(config: RoutingConfig) -> None:
    n_edges = len(config.edges)
    for e in config.edges:
        if not (0 <= e.u < config.num_nodes and 0 <= e.v < config.num_nodes):
            raise ValueError("edge endpoint references a missing node")
        if e.capacity < 1 or e.length_km < 0 or e.base_time_min < 0:
            raise ValueError("edge parameters out of range")
    for d in config.drivers:
        if len(d.routes) < 2:
            raise ValueError("every driver needs at least two routes")
        for route in d.routes:
            node = d.origin
            for ei in route:
                if not 0 <= ei < n_edges:
                    raise ValueError(f"route references missing edge {ei}")
                e = config.edges[ei]
                if e.u == node:
                    node = e.v
                elif e.v == node:
                    node = e.u
                else:
                    raise ValueError("route is not a connected path")
            if node != d.destination:
                raise ValueError("route does not reach the driver's destination")
    if len(config.true_w) != 4:
        raise ValueError("true_w must have four entries")


def build(config: RoutingConfig):
    """Materialize the dense game and its true utility weights."""
    _validate(config)
    n_drivers = len(config.drivers)
    n_edges = len(config.edges)
    counts = tuple(len(d.routes) for d in config.drivers)

    lengths = np.array([e.length_km for e in config.edges])
    base_time = np.array([e.base_time_min for e in config.edges])
    caps = np.array([e.capacity for e in config.edges], dtype=float)
    gas_rate = np.array([e.gas_rate_l_per_km for e in config.edges])
    signal = np.array([e.has_signal for e in config.edges], dtype=float)

    # usage[i][r, e] = 1 if driver i's route r uses edge e
    usage = []
    for d in config.drivers:
        mat = np.zeros((len(d.routes), n_edges))
        for r, route in enumerate(d.routes):
            for ei in route:
                mat[r, ei] += 1.0
        usage.append(mat)

    n_out = int(np.prod(counts))
    radix = np.ones(n_drivers, dtype=np.int64)
    for i in range(n_drivers - 2, -1, -1):
        radix[i] = radix[i + 1] * counts[i + 1]
    flat = np.arange(n_out, dtype=np.int64)
    digits = (flat[:, None] // radix[None, :]) % np.array(counts, dtype=np.int64)

    loads = np.zeros((n_out, n_edges))
    for i in range(n_drivers):
        loads += usage[i][digits[:, i]]

    ratio = loads / caps
    edge_time = base_time * (1.0 + config.bpr_coeff * ratio**config.bpr_power)
    edge_gas = lengths * gas_rate * (1.0 + 0.3 * ratio)
    edge_stop = signal * 0.5 * np.clip(loads - 1.0, 0.0, None)

    features = np.empty((n_drivers, n_out, 4))
    for i in range(n_drivers):
        used = usage[i][digits[:, i]]  # (n_out, n_edges)
        time_min = (edge_time * used).sum(axis=1)
        dist_km = used @ lengths
        gas_l = (edge_gas * used).sum(axis=1)
        stop_min = (edge_stop * used).sum(axis=1)
        features[i, :, 0] = -time_min / 60.0
        features[i, :, 1] = -dist_km
        features[i, :, 2] = -gas_l
        features[i, :, 3] = -stop_min / 60.0

    game = Game(action_counts=counts, features=features, feature_names=FEATURE_NAMES)
    return game, np.asarray(config.true_w, dtype=float)


def variant(config: RoutingConfig, kind: str) -> RoutingConfig:
    """One of the four structural perturbations of a base routing world."""
    _validate(config)
    if kind == "gas_shortage":
        w = list(config.true_w)
        w[2] *= 5.0
        return RoutingConfig(**{**_fields(config), "true_w": tuple(w)})
    if kind == "congestion":
        # Construction doubles traversal time on the major roads.  Capacity
        # is left alone: cutting it as well makes the variant equilibrium so
        # different from the observed behavior that no transferred model
        # (ours or the baseline) beats the uniform prediction.
        edges = list(config.edges)
        for ei in config.major_edges:
            e = edges[ei]
            edges[ei] = Edge(
                u=e.u, v=e.v, length_km=e.length_km,
                base_time_min=e.base_time_min * 2.0,
                capacity=e.capacity,
                gas_rate_l_per_km=e.gas_rate_l_per_km,
                has_signal=e.has_signal,
            )
        return RoutingConfig(**{**_fields(config), "edges": tuple(edges)})
    if kind == "add_driver":
        drivers = list(config.drivers) + [config.drivers[0]]
        return RoutingConfig(**{**_fields(config), "drivers": tuple(drivers)})
    if kind == "add_highway":
        edges = list(config.edges)
        drivers = []
        highway_for: dict[tuple[int, int], int] = {}
        for d in config.drivers:
            od = (d.origin, d.destination)
            if od not in highway_for:
                highway_for[od] = len(edges)
                # Narrow enough to congest when several drivers pile on, so
                # the variant keeps a mixed equilibrium instead of everyone
                # deterministically taking the new road.
                edges.append(Edge(
                    u=d.origin, v=d.destination, length_km=6.0, base_time_min=12.0,
                    capacity=2, gas_rate_l_per_km=0.06, has_signal=False,
                ))
            drivers.append(Driver(
                origin=d.origin, destination=d.destination,
                routes=d.routes + ((highway_for[od],),),
            ))
        return RoutingConfig(
            **{**_fields(config), "edges": tuple(edges), "drivers": tuple(drivers)})
    raise ValueError(f"unknown variant kind {kind!r}; expected one of {VARIANT_KINDS}")


def _fields(config: RoutingConfig) -> dict:
    return {
        "num_nodes": config.num_nodes,
        "edges": config.edges,
        "drivers": config.drivers,
        "true_w": config.true_w,
        "bpr_coeff": config.bpr_coeff,
        "bpr_power": config.bpr_power,
        "major_edges": config.major_edges,
        "seed": config.seed,
    }


# Fixed 3x3 grid network: nodes 0..8 row-major, 12 edges.  The middle row
# (edges 2 and 3) is the fast high-capacity arterial targeted by the
# congestion variant.
_GRID_EDGES = (
    Edge(0, 1, 2.0, 3.0, 4, 0.08, True),    # 0
    Edge(1, 2, 2.0, 3.0, 4, 0.08, True),    # 1
    Edge(3, 4, 2.0, 2.0, 8, 0.07, False),   # 2  arterial
    Edge(4, 5, 2.0, 2.0, 8, 0.07, False),   # 3  arterial
    Edge(6, 7, 3.0, 4.0, 2, 0.09, True),    # 4
    Edge(7, 8, 3.0, 4.0, 2, 0.09, True),    # 5
    Edge(0, 3, 1.0, 2.0, 4, 0.08, True),    # 6
    Edge(1, 4, 1.0, 2.0, 4, 0.08, True),    # 7
    Edge(2, 5, 1.0, 2.0, 4, 0.08, True),    # 8
    Edge(3, 6, 1.0, 2.0, 4, 0.08, True),    # 9
    Edge(4, 7, 1.0, 2.0, 4, 0.08, True),    # 10
    Edge(5, 8, 1.0, 2.0, 4, 0.08, True),    # 11
)

# monotone corner-to-corner paths through the grid
_P_0_TO_8 = {
    "right_right_down_down": (0, 1, 8, 11),
    "via_arterial_east": (0, 7, 3, 11),
    "zigzag_mid": (0, 7, 10, 5),
    "via_arterial_south": (6, 2, 3, 11),
    "arterial_then_south": (6, 2, 10, 5),
    "west_side": (6, 9, 4, 5),
}
_P_2_TO_6 = {
    "top_then_west": (1, 0, 6, 9),
    "via_arterial_west": (1, 7, 2, 9),
    "zigzag_mid": (1, 7, 10, 4),
    "via_arterial_south": (8, 3, 2, 9),
    "arterial_then_south": (8, 3, 10, 4),
    "east_side": (8, 11, 5, 4),
}

_TRUE_W = (1.0, 0.0, 0.2, 0.1)


def _with_capacities(edges: tuple, overrides: dict) -> tuple:
    return tuple(
        replace(e, capacity=overrides[i]) if i in overrides else e
        for i, e in enumerate(edges)
    )


def default_config() -> RoutingConfig:
    """Seven drivers, four routes each (16384 outcomes).

    The arterial capacity is halved relative to the raw grid (8 -> 4) so
    that the seven drivers cannot all fit on the fast middle row: the game
    then supports many interchangeable equilibria instead of a single pure
    one, which keeps equilibrium mixtures well spread over outcomes.
    """
    commute = (
        _P_0_TO_8["via_arterial_east"],
        _P_0_TO_8["zigzag_mid"],
        _P_0_TO_8["via_arterial_south"],
        _P_0_TO_8["arterial_then_south"],
    )
    reverse = (
        _P_2_TO_6["via_arterial_west"],
        _P_2_TO_6["zigzag_mid"],
        _P_2_TO_6["via_arterial_south"],
        _P_2_TO_6["arterial_then_south"],
    )
    drivers = tuple(Driver(0, 8, commute) for _ in range(4)) + tuple(
        Driver(2, 6, reverse) for _ in range(3)
    )
    return RoutingConfig(
        num_nodes=9, edges=_with_capacities(_GRID_EDGES, {2: 4, 3: 4}),
        drivers=drivers, true_w=_TRUE_W, major_edges=(2, 3), seed=0,
    )


def desk_config() -> RoutingConfig:
    """Five drivers, three routes each (243 outcomes), for quick experiments.

    All five drivers share the same corner-to-corner commute and the two
    column edges feeding the exit corner are narrowed to capacity 2, so no
    single route assignment is stable: equilibrium play must randomize over
    who takes which bottleneck, giving high-entropy equilibrium mixtures.
    """
    commute = (
        _P_0_TO_8["right_right_down_down"],
        _P_0_TO_8["via_arterial_south"],
        _P_0_TO_8["west_side"],
    )
    drivers = tuple(Driver(0, 8, commute) for _ in range(5))
    return RoutingConfig(
        num_nodes=9, edges=_with_capacities(_GRID_EDGES, {6: 2, 11: 2}),
        drivers=drivers, true_w=_TRUE_W, major_edges=(2, 3), seed=0,
    )
