"""Operators-on-states semantics of signals and version-space learning of them."""

from .core import (
    Interpretation,
    OperatorTable,
    RepCapacity,
    Signal,
    StateId,
    apply_sequence,
    apply_signal,
    compose,
    identity_operator,
)
from .metaspace import (
    InterpretationSpace,
    MetaState,
    Observation,
    OperatorFamily,
    entropy,
    enumerate_space,
    indistinguishable_classes,
    initial_meta_state,
    is_perfect_information,
    partial_operator,
    refine,
)
from .protocols import (
    History,
    HistoryStep,
    LearningPath,
    PathSet,
    PopulationResult,
    Query,
    QueryStrategy,
    all_queries,
    enumerate_histories,
    generate_observation,
    run_population,
    run_session,
    select_query,
)
from .scenario import Scenario, load_scenario, scenario_to_dict, write_scenario

__all__ = [name for name in dir() if not name.startswith("_")]
