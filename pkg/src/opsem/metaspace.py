"""Candidate spaces of interpretations and observation-driven refinement.

The learner's knowledge is a nonempty subset of an enumerated interpretation
space.  Each observed (pre-state, signal, post-state) triple filters out the
candidates that disagree with it; a singleton candidate set is perfect
information.  The full power set of the space is never materialized — a
MetaState is one element of it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import (
    Interpretation,
    OperatorTable,
    RepCapacity,
    Signal,
    StateId,
    apply_signal,
)
from .errors import (
    ContradictoryEvidence,
    EmptyLanguage,
    SpaceMismatch,
    SpaceTooLarge,
)

DEFAULT_SPACE_LIMIT = 1_000_000

FAMILY_KINDS = ("all-functions", "permutations", "constants", "explicit-list")


@dataclass(frozen=True)
class OperatorFamily:
    """Which per-signal operators are admissible; tames space growth."""

    kind: str
    tables: tuple[OperatorTable, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown operator family kind: {self.kind!r}")
        if self.kind == "explicit-list":
            if not self.tables:
                raise ValueError("explicit-list family requires tables")
            if len(set(self.tables)) != len(self.tables):
                raise ValueError("explicit-list tables must be distinct")
        elif self.tables is not None:
            raise ValueError(f"family kind {self.kind!r} takes no explicit tables")

    def per_signal_count(self, capacity: RepCapacity) -> int:
        n = capacity.size
        if self.kind == "all-functions":
            return n**n
        if self.kind == "permutations":
            return math.factorial(n)
        if self.kind == "constants":
            return n
        assert self.tables is not None
        return len(self.tables)

    def per_signal_tables(self, capacity: RepCapacity) -> list[OperatorTable]:
        """All admissible operators, in lexicographic image order."""
        n = capacity.size
        if self.kind == "all-functions":
            images = itertools.product(range(n), repeat=n)
        elif self.kind == "permutations":
            images = itertools.permutations(range(n))
        elif self.kind == "constants":
            images = ((c,) * n for c in range(n))
        else:
            assert self.tables is not None
            for table in self.tables:
                if table.size != n:
                    raise ValueError(
                        f"explicit table size {table.size} does not match capacity {n}"
                    )
            return sorted(self.tables, key=lambda t: t.image)
        return [OperatorTable(tuple(img)) for img in images]


@dataclass(frozen=True)
class InterpretationSpace:
    """The enumerated set of all interpretations under one operator family."""

    capacity: RepCapacity
    signals: tuple[Signal, ...]
    family: OperatorFamily
    members: tuple[Interpretation, ...]

    @property
    def key(self) -> str:
        """Identifier tying meta-states to the space they index into."""
        fam = self.family.kind
        if self.family.tables is not None:
            fam += ":" + ";".join(
                ",".join(map(str, t.image)) for t in self.family.tables
            )
        return f"{self.capacity.size}/{len(self.signals)}/{fam}"

    def __len__(self) -> int:
        return len(self.members)


def enumerate_space(
    capacity: RepCapacity,
    signals: list[Signal] | tuple[Signal, ...],
    family: OperatorFamily,
    max_members: int = DEFAULT_SPACE_LIMIT,
) -> InterpretationSpace:
    """Materialize every interpretation, ids in lexicographic table order.

    Ordering is lexicographic on the concatenation of per-signal image
    tables, first signal most significant; every downstream iteration order
    derives from it.
    """
    if not signals:
        raise EmptyLanguage("a space needs at least one signal")
    per_signal = family.per_signal_count(capacity)
    projected = per_signal ** len(signals)
    if projected > max_members:
        raise SpaceTooLarge(
            f"projected {projected} members exceeds limit {max_members}"
        )
    tables = family.per_signal_tables(capacity)
    members = tuple(
        Interpretation(id=i, tables=combo)
        for i, combo in enumerate(itertools.product(tables, repeat=len(signals)))
    )
    return InterpretationSpace(
        capacity=capacity,
        signals=tuple(signals),
        family=family,
        members=members,
    )


@dataclass(frozen=True)
class MetaState:
    """A nonempty set of still-possible interpretation ids."""

    space_key: str
    candidates: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.candidates:
            raise ValueError("meta-state candidates must be nonempty")
        if list(self.candidates) != sorted(set(self.candidates)):
            raise ValueError("candidates must be sorted and duplicate-free")

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class Observation:
    """Evidence from one interaction: pre-state, signal, post-state."""

    pre: StateId
    signal: Signal
    post: StateId


def _check_meta(space: InterpretationSpace, meta: MetaState) -> None:
    if meta.space_key != space.key:
        raise SpaceMismatch(
            f"meta-state for space {meta.space_key!r} used with {space.key!r}"
        )
    if meta.candidates[-1] >= len(space.members):
        raise SpaceMismatch("candidate id out of range for space")


def initial_meta_state(space: InterpretationSpace) -> MetaState:
    """Total ignorance: every member of the space is still possible."""
    return MetaState(space.key, tuple(range(len(space.members))))


def refine(
    space: InterpretationSpace, meta: MetaState, obs: Observation
) -> MetaState:
    """Keep only the candidates consistent with one observation."""
    _check_meta(space, meta)
    space.capacity.check_state(obs.pre)
    space.capacity.check_state(obs.post)
    survivors = tuple(
        i
        for i in meta.candidates
        if apply_signal(space.members[i], obs.signal, obs.pre) == obs.post
    )
    if not survivors:
        raise ContradictoryEvidence(
            f"observation ({obs.pre}, {obs.signal.index}, {obs.post}) "
            "rules out every remaining candidate"
        )
    return MetaState(space.key, survivors)


def partial_operator(
    space: InterpretationSpace, meta: MetaState, signal: Signal, state: StateId
) -> tuple[StateId, ...]:
    """The set of states the candidates could map `state` to under `signal`."""
    _check_meta(space, meta)
    space.capacity.check_state(state)
    return tuple(
        sorted({apply_signal(space.members[i], signal, state) for i in meta.candidates})
    )


def entropy(meta: MetaState) -> float:
    """Uncertainty of the candidate set, in bits."""
    return math.log2(len(meta.candidates))


def is_perfect_information(meta: MetaState) -> bool:
    return len(meta.candidates) == 1


def indistinguishable_classes(
    space: InterpretationSpace,
    queries: list[tuple[StateId, Signal]] | tuple[tuple[StateId, Signal], ...],
) -> list[tuple[int, ...]]:
    """Partition members by their joint responses to the given queries.

    Members in one class cannot be told apart by any of the queries.
    Duplicate queries are ignored; classes are sorted by smallest member id.
    """
    unique: list[tuple[StateId, Signal]] = []
    seen: set[tuple[int, int]] = set()
    for state, signal in queries:
        space.capacity.check_state(state)
        if (state, signal.index) not in seen:
            seen.add((state, signal.index))
            unique.append((state, signal))
    groups: dict[tuple[int, ...], list[int]] = {}
    for member in space.members:
        response = tuple(apply_signal(member, sig, st) for st, sig in unique)
        groups.setdefault(response, []).append(member.id)
    classes = [tuple(ids) for ids in groups.values()]
    classes.sort(key=lambda cls: cls[0])
    return classes
