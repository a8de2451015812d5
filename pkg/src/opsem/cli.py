"""Command-line entry points: enumerate, simulate, histories, population.

Exit codes: 0 success, 1 scenario validation error, 2 runtime error such as
an over-cap space.  Output files are written to a temp name and renamed on
success, so a failed run never leaves partial artifacts.
"""

from __future__ import annotations

import io
import json
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

import click

from .errors import OpsemError, ParseError, ValidationError
from .protocols import run_population, run_session, enumerate_histories
from .reporting import (
    emit_event_log,
    path_set_to_dict,
    population_rows,
    summary_row,
    write_summary,
)
from .scenario import Scenario, load_scenario

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def _write_atomic(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        target = out_dir / name
        os.replace(tmp, target)
        return target
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load(scenario_path: str, seed: int | None) -> Scenario:
    scenario = load_scenario(scenario_path)
    if seed is not None:
        scenario = replace(scenario, strategy=replace(scenario.strategy, seed=seed))
    return scenario


def _fail(exc: OpsemError) -> None:
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, (ParseError, ValidationError)):
        sys.exit(EXIT_VALIDATION)
    sys.exit(EXIT_RUNTIME)


def _common(fn):
    fn = click.option("--seed", type=int, default=None, help="Override the scenario seed.")(fn)
    fn = click.option("--out", required=True, type=click.Path(file_okay=False), help="Output directory.")(fn)
    fn = click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=False), help="Scenario JSON file.")(fn)
    return fn


@click.group()
def main():
    """Simulate learning of signal interpretations by candidate elimination."""


@main.command("enumerate")
@_common
def enumerate_cmd(scenario_path: str, out: str, seed: int | None):
    """Write the interpretation-space manifest (space.json)."""
    try:
        scenario = _load(scenario_path, seed)
        manifest = {
            "member_count": len(scenario.space.members),
            "capacity": scenario.capacity.size,
            "signals": [s.label for s in scenario.signals],
            "family": scenario.family.kind,
            "members": [
                {"id": m.id, "tables": [list(t.image) for t in m.tables]}
                for m in scenario.space.members
            ],
        }
        _write_atomic(Path(out), "space.json", json.dumps(manifest, indent=2) + "\n")
    except OpsemError as exc:
        _fail(exc)


@main.command("simulate")
@_common
def simulate_cmd(scenario_path: str, out: str, seed: int | None):
    """Run one learning session; write events.jsonl and summary.csv."""
    try:
        scenario = _load(scenario_path, seed)
        history = run_session(
            scenario.space, scenario.truth_id, scenario.strategy, scenario.max_steps
        )
        events = io.StringIO()
        emit_event_log(
            history, events,
            strategy=scenario.strategy.kind, seed=scenario.strategy.seed,
        )
        summary = io.StringIO()
        row = summary_row(
            Path(scenario_path).stem,
            len(scenario.space.members),
            scenario.strategy.kind,
            scenario.strategy.seed,
            history,
        )
        write_summary([row], summary)
        _write_atomic(Path(out), "events.jsonl", events.getvalue())
        _write_atomic(Path(out), "summary.csv", summary.getvalue())
    except OpsemError as exc:
        _fail(exc)


@main.command("histories")
@_common
def histories_cmd(scenario_path: str, out: str, seed: int | None):
    """Enumerate all distinct learning paths; write paths.json."""
    try:
        scenario = _load(scenario_path, seed)
        n_queries = scenario.capacity.size * len(scenario.signals)
        max_length = min(scenario.max_steps, n_queries)
        paths = enumerate_histories(scenario.space, scenario.truth_id, max_length)
        _write_atomic(
            Path(out),
            "paths.json",
            json.dumps(path_set_to_dict(paths), indent=2) + "\n",
        )
    except OpsemError as exc:
        _fail(exc)


@main.command("population")
@_common
def population_cmd(scenario_path: str, out: str, seed: int | None):
    """Run a learner population; write per-learner rows to summary.csv."""
    try:
        scenario = _load(scenario_path, seed)
        if scenario.population is None:
            raise ValidationError("scenario has no population section")
        result = run_population(
            scenario.space,
            scenario.truth_id,
            scenario.population.learners,
            scenario.population.generator,
            scenario.population.max_rounds,
            seed=scenario.strategy.seed,
        )
        summary = io.StringIO()
        rows = population_rows(
            Path(scenario_path).stem,
            len(scenario.space.members),
            scenario.population.generator,
            scenario.strategy.seed,
            result,
        )
        write_summary(rows, summary)
        _write_atomic(Path(out), "summary.csv", summary.getvalue())
    except OpsemError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
