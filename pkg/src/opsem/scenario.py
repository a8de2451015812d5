"""Scenario files: strict JSON schema, validation, and round-trip writing.

A scenario pins everything a run needs — capacity, signals, operator family,
ground truth, strategy, limits — so that replays are reproducible from the
file alone.  Unknown keys are rejected to catch typos in experiment
definitions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import OperatorTable, RepCapacity, Signal
from .errors import ParseError, ValidationError
from .metaspace import (
    DEFAULT_SPACE_LIMIT,
    FAMILY_KINDS,
    InterpretationSpace,
    OperatorFamily,
    enumerate_space,
)
from .protocols import GENERATOR_KINDS, STRATEGY_KINDS, QueryStrategy


@dataclass(frozen=True)
class PopulationSpec:
    learners: int
    generator: str
    max_rounds: int


@dataclass(frozen=True)
class Scenario:
    capacity: RepCapacity
    signals: tuple[Signal, ...]
    family: OperatorFamily
    truth_id: int
    truth_explicit: bool
    strategy: QueryStrategy
    max_steps: int
    population: PopulationSpec | None
    max_space: int
    space: InterpretationSpace


def _require_dict(value, loc: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{loc}: expected an object")
    return value


def _check_keys(obj: dict, loc: str, required: set[str], optional: set[str] = frozenset()) -> None:
    keys = set(obj)
    unknown = keys - required - optional
    if unknown:
        raise ValidationError(f"{loc}: unknown key(s) {sorted(unknown)}")
    missing = required - keys
    if missing:
        raise ValidationError(f"{loc}: missing key(s) {sorted(missing)}")


def _int_field(obj: dict, key: str, loc: str, minimum: int | None = None) -> int:
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationError(f"{loc}.{key}: expected an integer")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{loc}.{key}: must be >= {minimum}")
    return value


def _parse_table(raw, loc: str, size: int) -> OperatorTable:
    if not isinstance(raw, list) or len(raw) != size:
        raise ValidationError(f"{loc}: expected a list of {size} state indices")
    for entry in raw:
        if not isinstance(entry, int) or isinstance(entry, bool) or not 0 <= entry < size:
            raise ValidationError(f"{loc}: state index {entry!r} out of range")
    return OperatorTable(tuple(raw))


def load_scenario(path: str | Path, max_space_override: int | None = None) -> Scenario:
    """Parse, validate, and fully resolve a scenario file.

    Enumerates the interpretation space up front so that an explicit truth
    table can be cross-checked against the family.  Raises ParseError for
    malformed JSON, ValidationError for schema violations, SpaceTooLarge if
    the family exceeds the configured cap.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    top = _require_dict(raw, "scenario")
    _check_keys(
        top,
        "scenario",
        {"capacity", "signals", "family", "truth", "strategy", "max_steps"},
        {"population", "limits"},
    )

    cap_obj = _require_dict(top["capacity"], "capacity")
    _check_keys(cap_obj, "capacity", {"size"}, {"labels"})
    size = _int_field(cap_obj, "size", "capacity", minimum=1)
    labels = None
    if "labels" in cap_obj:
        raw_labels = cap_obj["labels"]
        if not isinstance(raw_labels, list) or not all(
            isinstance(x, str) for x in raw_labels
        ):
            raise ValidationError("capacity.labels: expected a list of strings")
        if len(raw_labels) != size:
            raise ValidationError("capacity.labels: length must equal capacity.size")
        if len(set(raw_labels)) != len(raw_labels):
            raise ValidationError("capacity.labels: labels must be unique")
        labels = tuple(raw_labels)
    capacity = RepCapacity(size=size, labels=labels)

    raw_signals = top["signals"]
    if not isinstance(raw_signals, list) or not raw_signals or not all(
        isinstance(x, str) for x in raw_signals
    ):
        raise ValidationError("signals: expected a nonempty list of labels")
    if len(set(raw_signals)) != len(raw_signals):
        raise ValidationError("signals: labels must be unique")
    signals = tuple(Signal(index=i, label=lbl) for i, lbl in enumerate(raw_signals))

    fam_obj = _require_dict(top["family"], "family")
    _check_keys(fam_obj, "family", {"kind"}, {"tables"})
    kind = fam_obj["kind"]
    if kind not in FAMILY_KINDS:
        raise ValidationError(f"family.kind: expected one of {list(FAMILY_KINDS)}")
    fam_tables = None
    if kind == "explicit-list":
        if "tables" not in fam_obj:
            raise ValidationError("family.tables: required for explicit-list")
        raw_tables = fam_obj["tables"]
        if not isinstance(raw_tables, list) or not raw_tables:
            raise ValidationError("family.tables: expected a nonempty list")
        fam_tables = tuple(
            _parse_table(t, f"family.tables[{i}]", size)
            for i, t in enumerate(raw_tables)
        )
        if len(set(fam_tables)) != len(fam_tables):
            raise ValidationError("family.tables: tables must be distinct")
    elif "tables" in fam_obj:
        raise ValidationError(f"family.tables: not allowed for kind {kind!r}")
    family = OperatorFamily(kind=kind, tables=fam_tables)

    limits = {}
    if "limits" in top:
        limits = _require_dict(top["limits"], "limits")
        _check_keys(limits, "limits", set(), {"max_space"})
    max_space = DEFAULT_SPACE_LIMIT
    if "max_space" in limits:
        max_space = _int_field(limits, "max_space", "limits", minimum=1)
    if max_space_override is not None:
        max_space = max_space_override

    space = enumerate_space(capacity, list(signals), family, max_members=max_space)

    truth_obj = _require_dict(top["truth"], "truth")
    _check_keys(truth_obj, "truth", set(), {"tables", "index"})
    if ("tables" in truth_obj) == ("index" in truth_obj):
        raise ValidationError("truth: exactly one of 'tables' or 'index' required")
    if "index" in truth_obj:
        truth_id = _int_field(truth_obj, "index", "truth", minimum=0)
        if truth_id >= len(space.members):
            raise ValidationError(
                f"truth.index: {truth_id} out of range for {len(space.members)} members"
            )
        truth_explicit = False
    else:
        raw_tables = truth_obj["tables"]
        if not isinstance(raw_tables, list) or len(raw_tables) != len(signals):
            raise ValidationError(
                f"truth.tables: expected one table per signal ({len(signals)})"
            )
        tables = tuple(
            _parse_table(t, f"truth.tables[{i}]", size)
            for i, t in enumerate(raw_tables)
        )
        matches = [m.id for m in space.members if m.tables == tables]
        if not matches:
            raise ValidationError("truth.tables: interpretation not in the family")
        truth_id = matches[0]
        truth_explicit = True

    strat_obj = _require_dict(top["strategy"], "strategy")
    _check_keys(strat_obj, "strategy", {"kind"}, {"seed"})
    if strat_obj["kind"] not in STRATEGY_KINDS:
        raise ValidationError(f"strategy.kind: expected one of {list(STRATEGY_KINDS)}")
    seed = _int_field(strat_obj, "seed", "strategy", minimum=0) if "seed" in strat_obj else 0
    strategy = QueryStrategy(kind=strat_obj["kind"], seed=seed)

    max_steps = _int_field(top, "max_steps", "scenario", minimum=0)

    population = None
    if "population" in top:
        pop_obj = _require_dict(top["population"], "population")
        _check_keys(pop_obj, "population", {"learners", "generator", "max_rounds"})
        if pop_obj["generator"] not in GENERATOR_KINDS:
            raise ValidationError(
                f"population.generator: expected one of {list(GENERATOR_KINDS)}"
            )
        population = PopulationSpec(
            learners=_int_field(pop_obj, "learners", "population", minimum=1),
            generator=pop_obj["generator"],
            max_rounds=_int_field(pop_obj, "max_rounds", "population", minimum=0),
        )

    return Scenario(
        capacity=capacity,
        signals=signals,
        family=family,
        truth_id=truth_id,
        truth_explicit=truth_explicit,
        strategy=strategy,
        max_steps=max_steps,
        population=population,
        max_space=max_space,
        space=space,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    """Serializable form; load_scenario(write(...)) gives an equal value."""
    out: dict = {
        "capacity": {"size": scenario.capacity.size},
        "signals": [s.label for s in scenario.signals],
        "family": {"kind": scenario.family.kind},
        "truth": {},
        "strategy": {"kind": scenario.strategy.kind, "seed": scenario.strategy.seed},
        "max_steps": scenario.max_steps,
    }
    if scenario.capacity.labels is not None:
        out["capacity"]["labels"] = list(scenario.capacity.labels)
    if scenario.family.tables is not None:
        out["family"]["tables"] = [list(t.image) for t in scenario.family.tables]
    if scenario.truth_explicit:
        truth = scenario.space.members[scenario.truth_id]
        out["truth"]["tables"] = [list(t.image) for t in truth.tables]
    else:
        out["truth"]["index"] = scenario.truth_id
    if scenario.population is not None:
        out["population"] = {
            "learners": scenario.population.learners,
            "generator": scenario.population.generator,
            "max_rounds": scenario.population.max_rounds,
        }
    out["limits"] = {"max_space": scenario.max_space}
    return out


def write_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n")
