"""Learning sessions: query selection, refinement loops, histories, populations.

A teacher holding the community's true interpretation answers queries; the
learner refines its candidate set until it is a singleton.  Everything is
deterministic given (space, truth, strategy, seed); randomness comes from a
Philox counter-based generator so the same seed gives the same stream on
every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Interpretation, Signal, StateId, apply_signal
from .errors import NoInformativeQuery, SpaceTooLarge
from .metaspace import (
    InterpretationSpace,
    MetaState,
    Observation,
    entropy,
    initial_meta_state,
    is_perfect_information,
    partial_operator,
    refine,
)

STRATEGY_KINDS = ("sweep", "greedy-split", "random")
GENERATOR_KINDS = ("round-robin", "seeded-random")

DEFAULT_ENUMERATION_CAP = 256

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); streams never collide."""
    return np.random.Generator(np.random.Philox(key=(stream << 64) | (seed & _MASK64)))


@dataclass(frozen=True)
class Query:
    """One experiment: put the exchange in context `state`, emit `signal`."""

    state: StateId
    signal: Signal

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.state, self.signal.index)


@dataclass(frozen=True)
class QueryStrategy:
    kind: str
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind: {self.kind!r}")


@dataclass(frozen=True)
class HistoryStep:
    step_index: int
    query: Query
    observation: Observation
    candidates_after: int
    entropy_after: float


@dataclass(frozen=True)
class History:
    initial_candidates: int
    steps: tuple[HistoryStep, ...]
    converged: bool
    final_candidates: tuple[int, ...]


@dataclass(frozen=True)
class LearningPath:
    """One epistemic trajectory: the candidate sets traversed, in order."""

    stages: tuple[tuple[int, ...], ...]
    complete: bool


@dataclass(frozen=True)
class PathSet:
    paths: tuple[LearningPath, ...]


@dataclass(frozen=True)
class PopulationResult:
    learner_count: int
    histories: tuple[History, ...]
    rounds_run: int
    all_converged: bool


def all_queries(space: InterpretationSpace) -> list[Query]:
    """Every (state, signal) pair, lexicographic on (state, signal index)."""
    return [
        Query(state, signal)
        for state in space.capacity.states()
        for signal in space.signals
    ]


def generate_observation(truth: Interpretation, query: Query) -> Observation:
    """The teacher's answer: how the true interpretation transforms the state."""
    post = apply_signal(truth, query.signal, query.state)
    return Observation(pre=query.state, signal=query.signal, post=post)


def _informative(
    space: InterpretationSpace, meta: MetaState, query: Query
) -> bool:
    return len(partial_operator(space, meta, query.signal, query.state)) > 1


def _worst_case_split(
    space: InterpretationSpace, meta: MetaState, query: Query
) -> int:
    by_outcome: dict[int, int] = {}
    for i in meta.candidates:
        post = apply_signal(space.members[i], query.signal, query.state)
        by_outcome[post] = by_outcome.get(post, 0) + 1
    return max(by_outcome.values())


def select_query(
    strategy: QueryStrategy,
    space: InterpretationSpace,
    meta: MetaState,
    asked: set[Query],
    rng: np.random.Generator | None = None,
) -> Query:
    """Pick the next experiment under the given strategy.

    Only informative queries (partial operator larger than a singleton) are
    eligible; an already-answered query is never informative again. Ties
    break lexicographically on (state, signal index).
    """
    informative = [
        q
        for q in all_queries(space)
        if q not in asked and _informative(space, meta, q)
    ]
    if not informative:
        raise NoInformativeQuery(
            f"{len(meta.candidates)} candidates remain but no query can split them"
        )
    if strategy.kind == "sweep":
        return informative[0]
    if strategy.kind == "greedy-split":
        best = informative[0]
        best_worst = _worst_case_split(space, meta, best)
        for q in informative[1:]:
            worst = _worst_case_split(space, meta, q)
            if worst < best_worst:
                best, best_worst = q, worst
        return best
    if rng is None:
        rng = make_rng(strategy.seed)
    return informative[int(rng.integers(len(informative)))]


def run_session(
    space: InterpretationSpace,
    truth_id: int,
    strategy: QueryStrategy,
    max_steps: int,
) -> History:
    """Drive one learner from total ignorance toward the truth.

    Stops at perfect information, at max_steps, or when no query can shrink
    the candidate set further.
    """
    truth = space.members[truth_id]
    meta = initial_meta_state(space)
    initial = len(meta.candidates)
    rng = make_rng(strategy.seed)
    steps: list[HistoryStep] = []
    asked: set[Query] = set()
    while len(steps) < max_steps and not is_perfect_information(meta):
        try:
            query = select_query(strategy, space, meta, asked, rng)
        except NoInformativeQuery:
            break
        asked.add(query)
        obs = generate_observation(truth, query)
        meta = refine(space, meta, obs)
        steps.append(
            HistoryStep(
                step_index=len(steps) + 1,
                query=query,
                observation=obs,
                candidates_after=len(meta.candidates),
                entropy_after=entropy(meta),
            )
        )
    return History(
        initial_candidates=initial,
        steps=tuple(steps),
        converged=is_perfect_information(meta),
        final_candidates=meta.candidates,
    )


def enumerate_histories(
    space: InterpretationSpace,
    truth_id: int,
    max_length: int,
    max_members: int = DEFAULT_ENUMERATION_CAP,
) -> PathSet:
    """All distinct candidate-set trajectories reachable for one truth.

    Explores every order of distinct informative queries up to max_length.
    Uninformative queries leave the candidate set unchanged, so skipping
    them loses no trajectory; as a result consecutive stages always
    strictly shrink.  Paths ending at a singleton are complete.
    """
    if len(space.members) > max_members:
        raise SpaceTooLarge(
            f"{len(space.members)} members exceeds enumeration cap {max_members}"
        )
    truth = space.members[truth_id]
    queries = all_queries(space)
    found: dict[tuple[tuple[int, ...], ...], bool] = {}

    def walk(meta: MetaState, used: frozenset[Query], stages: tuple) -> None:
        complete = is_perfect_information(meta)
        found.setdefault(stages, complete)
        if complete or len(stages) - 1 >= max_length:
            return
        for q in queries:
            if q in used or not _informative(space, meta, q):
                continue
            after = refine(space, meta, generate_observation(truth, q))
            walk(after, used | {q}, stages + (after.candidates,))

    start = initial_meta_state(space)
    walk(start, frozenset(), (start.candidates,))
    paths = tuple(
        LearningPath(stages=stages, complete=complete)
        for stages, complete in sorted(found.items())
    )
    return PathSet(paths=paths)


def run_population(
    space: InterpretationSpace,
    truth_id: int,
    learner_count: int,
    generator: str,
    max_rounds: int,
    seed: int = 0,
) -> PopulationResult:
    """Several learners refining private meta-states against one community truth.

    round-robin delivers queries cycling in lexicographic order; seeded-random
    draws each learner's query uniformly from its own Philox stream (keyed by
    seed and learner index). Stops when every learner has converged or
    max_rounds is reached.
    """
    if learner_count < 1:
        raise ValueError("learner_count must be >= 1")
    if generator not in GENERATOR_KINDS:
        raise ValueError(f"unknown interaction generator: {generator!r}")
    truth = space.members[truth_id]
    queries = all_queries(space)
    rngs = [make_rng(seed, stream=i + 1) for i in range(learner_count)]
    metas = [initial_meta_state(space) for _ in range(learner_count)]
    steps: list[list[HistoryStep]] = [[] for _ in range(learner_count)]
    initial = len(space.members)
    rounds = 0
    while rounds < max_rounds and not all(map(is_perfect_information, metas)):
        for learner in range(learner_count):
            if generator == "round-robin":
                query = queries[rounds % len(queries)]
            else:
                query = queries[int(rngs[learner].integers(len(queries)))]
            obs = generate_observation(truth, query)
            metas[learner] = refine(space, metas[learner], obs)
            steps[learner].append(
                HistoryStep(
                    step_index=rounds + 1,
                    query=query,
                    observation=obs,
                    candidates_after=len(metas[learner].candidates),
                    entropy_after=entropy(metas[learner]),
                )
            )
        rounds += 1
    histories = tuple(
        History(
            initial_candidates=initial,
            steps=tuple(steps[i]),
            converged=is_perfect_information(metas[i]),
            final_candidates=metas[i].candidates,
        )
        for i in range(learner_count)
    )
    return PopulationResult(
        learner_count=learner_count,
        histories=histories,
        rounds_run=rounds,
        all_converged=all(h.converged for h in histories),
    )
