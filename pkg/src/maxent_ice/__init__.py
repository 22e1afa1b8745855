"""Maximum-entropy inverse correlated equilibrium (MaxEnt ICE).

Learns predictive joint-action distributions for matrix games from few
observations, recovers utility weights, and transfers behavior to
structurally related unobserved games.
"""

from maxent_ice.games import (
    Game,
    ModificationFunction,
    ModificationSet,
    RegretMatrix,
    internal_modifications,
    swap_modifications,
    regret_matrix,
    utility,
)
from maxent_ice.behavior import BehaviorDistribution, SampleSet

__all__ = [
    "Game",
    "ModificationFunction",
    "ModificationSet",
    "RegretMatrix",
    "internal_modifications",
    "swap_modifications",
    "regret_matrix",
    "utility",
    "BehaviorDistribution",
    "SampleSet",
]
