"""Deterministic run artifacts: JSON-lines event logs and CSV summaries.

Event-log lines are built by hand so key order and number formatting are
byte-stable across runs and platforms; golden tests depend on that.
"""

from __future__ import annotations

import csv
import json
import math
from typing import IO

from .protocols import History, PathSet, PopulationResult

SUMMARY_HEADER = ["run_id", "members", "strategy", "seed", "steps", "converged", "final_entropy"]


def _compact(value) -> str:
    return json.dumps(value, separators=(",", ":"))


def emit_event_log(
    history: History,
    stream: IO[str],
    strategy: str | None = None,
    seed: int | None = None,
) -> int:
    """Write one run as JSON lines: start record, one per step, end record.

    Returns the number of lines written (always steps + 2). The effective
    seed and strategy are echoed in the start record for provenance.
    """
    lines = 0
    start = f'{{"type":"start","candidates":{history.initial_candidates}'
    if strategy is not None:
        start += f',"strategy":{_compact(strategy)}'
    if seed is not None:
        start += f',"seed":{seed}'
    stream.write(start + "}\n")
    lines += 1
    for step in history.steps:
        obs = step.observation
        stream.write(
            f'{{"type":"step","idx":{step.step_index},"state":{obs.pre},'
            f'"signal":{obs.signal.index},"post":{obs.post},'
            f'"candidates":{step.candidates_after},'
            f'"entropy":{step.entropy_after:.6f}}}\n'
        )
        lines += 1
    stream.write(
        f'{{"type":"end","converged":{_compact(history.converged)},'
        f'"final_candidates":{_compact(list(history.final_candidates))}}}\n'
    )
    return lines + 1


def summary_row(
    run_id: str, members: int, strategy: str, seed: int, history: History
) -> list:
    final_entropy = math.log2(len(history.final_candidates))
    return [
        run_id,
        members,
        strategy,
        seed,
        len(history.steps),
        "true" if history.converged else "false",
        f"{final_entropy:.6f}",
    ]


def write_summary(rows: list[list], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    writer.writerows(rows)


def path_set_to_dict(paths: PathSet) -> dict:
    complete = sum(1 for p in paths.paths if p.complete)
    return {
        "path_count": len(paths.paths),
        "complete_count": complete,
        "paths": [
            {"stages": [list(stage) for stage in p.stages], "complete": p.complete}
            for p in paths.paths
        ],
    }


def population_rows(
    run_id: str, members: int, generator: str, seed: int, result: PopulationResult
) -> list[list]:
    rows = []
    for i, history in enumerate(result.histories):
        rows.append(
            summary_row(f"{run_id}-learner{i}", members, generator, seed, history)
        )
    return rows
