"""Finite representational states, signals, operator tables and their action.

An interpretation assigns each signal a total function on the set of
representational states.  Operators are stored as explicit image tables so
that equality, hashing, and exhaustive enumeration stay decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CapacityMismatch, UnknownSignal, UnknownState

# States are dense non-negative integers below the capacity size.
StateId = int


@dataclass(frozen=True)
class RepCapacity:
    """The finite set of representational states an agent can occupy."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("capacity size must be >= 1")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("labels length must equal capacity size")
            if len(set(self.labels)) != self.size:
                raise ValueError("state labels must be unique")

    def check_state(self, state: StateId) -> None:
        if not 0 <= state < self.size:
            raise UnknownState(f"state {state} out of range for capacity {self.size}")

    def states(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class Signal:
    """One signal of the language, identified by a dense index."""

    index: int
    label: str | None = None

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("signal index must be non-negative")


@dataclass(frozen=True)
class OperatorTable:
    """A total function on states, given by its image list.

    image[s] is the state reached by applying the operator in state s.
    """

    image: tuple[StateId, ...]

    def __post_init__(self) -> None:
        size = len(self.image)
        if size < 1:
            raise ValueError("operator table must cover at least one state")
        for target in self.image:
            if not 0 <= target < size:
                raise UnknownState(f"image entry {target} out of range for size {size}")

    @property
    def size(self) -> int:
        return len(self.image)

    def apply(self, state: StateId) -> StateId:
        if not 0 <= state < len(self.image):
            raise UnknownState(f"state {state} out of range for size {len(self.image)}")
        return self.image[state]


@dataclass(frozen=True)
class Interpretation:
    """A map from each signal (by index) to an operator table."""

    id: int
    tables: tuple[OperatorTable, ...]

    def __post_init__(self) -> None:
        if not self.tables:
            raise ValueError("interpretation must cover at least one signal")
        size = self.tables[0].size
        if any(t.size != size for t in self.tables):
            raise CapacityMismatch("all tables must share one capacity")

    @property
    def capacity_size(self) -> int:
        return self.tables[0].size

    def table_for(self, signal: Signal) -> OperatorTable:
        if not 0 <= signal.index < len(self.tables):
            raise UnknownSignal(
                f"signal {signal.index} out of range for language of size {len(self.tables)}"
            )
        return self.tables[signal.index]


def identity_operator(capacity: RepCapacity) -> OperatorTable:
    """The operator that leaves every state unchanged."""
    return OperatorTable(tuple(capacity.states()))


def compose(first: OperatorTable, second: OperatorTable) -> OperatorTable:
    """Apply `first`, then `second`, as a single table."""
    if first.size != second.size:
        raise CapacityMismatch(
            f"cannot compose tables of sizes {first.size} and {second.size}"
        )
    return OperatorTable(tuple(second.image[s] for s in first.image))


def apply_signal(interp: Interpretation, signal: Signal, state: StateId) -> StateId:
    """The state reached from `state` when `signal` is received."""
    return interp.table_for(signal).apply(state)


def apply_sequence(
    interp: Interpretation, seq: Iterable[Signal], state: StateId
) -> StateId:
    """Left-to-right action of a signal sequence; empty sequence is identity."""
    if not 0 <= state < interp.capacity_size:
        raise UnknownState(f"state {state} out of range")
    for signal in seq:
        state = apply_signal(interp, signal, state)
    return state
