"""Acceptance suite: one test per release criterion, exact assertions.

Run with `pytest tests/test_acceptance.py -v -s` to get one PASS line per
criterion.
"""

import itertools
import json
import math
import random

from click.testing import CliRunner

from opsem import (
    MetaState,
    OperatorFamily,
    Query,
    QueryStrategy,
    RepCapacity,
    Signal,
    entropy,
    enumerate_histories,
    enumerate_space,
    generate_observation,
    initial_meta_state,
    partial_operator,
    refine,
    run_population,
    run_session,
)
from opsem.cli import main

from conftest import scenario_json


def _space(size, n_signals, kind="all-functions"):
    signals = [Signal(i, chr(ord("a") + i)) for i in range(n_signals)]
    return enumerate_space(RepCapacity(size), signals, OperatorFamily(kind))


def _done(name):
    print(f"PASS: {name}")


def test_counting_law():
    for size, n_signals in itertools.product((1, 2, 3), (1, 2)):
        expected = {
            "all-functions": (size**size) ** n_signals,
            "permutations": math.factorial(size) ** n_signals,
            "constants": size**n_signals,
        }
        for kind, count in expected.items():
            assert len(_space(size, n_signals, kind).members) == count
    _done("counting law")


def test_soundness_identifiability_sweep(two_two_space):
    for truth_id in range(16):
        h = run_session(two_two_space, truth_id, QueryStrategy("sweep"), 16)
        assert h.converged
        counts = [h.initial_candidates] + [s.candidates_after for s in h.steps]
        assert counts == [16, 8, 4, 2, 1]
        assert h.final_candidates == (truth_id,)
    _done("soundness/identifiability sweep")


def test_refinement_laws_randomized():
    spaces = [
        _space(2, 1), _space(2, 2), _space(3, 1), _space(3, 2),  # up to 729
        _space(3, 2, "permutations"), _space(3, 2, "constants"),
    ]
    assert all(len(s.members) <= 729 for s in spaces)
    rng = random.Random(20260823)
    cases = 10_000
    for _ in range(cases):
        space = rng.choice(spaces)
        k = len(space.members)
        truth_id = rng.randrange(k)
        truth = space.members[truth_id]
        subset = set(rng.sample(range(k), rng.randint(1, min(k, 64)))) | {truth_id}
        meta = MetaState(space.key, tuple(sorted(subset)))
        observations = [
            generate_observation(
                truth,
                Query(rng.randrange(space.capacity.size), rng.choice(space.signals)),
            )
            for _ in range(rng.randint(1, 3))
        ]
        forward = meta
        for obs in observations:
            after = refine(space, forward, obs)
            assert set(after.candidates) <= set(forward.candidates)  # monotone
            assert truth_id in after.candidates  # truth preserved
            assert entropy(after) <= entropy(forward)  # entropy non-increase
            assert refine(space, after, obs) == after  # idempotent
            forward = after
        shuffled = observations[:]
        rng.shuffle(shuffled)
        backward = meta
        for obs in shuffled:
            backward = refine(space, backward, obs)
        assert forward.candidates == backward.candidates  # order independent
    _done(f"refinement laws ({cases} randomized cases)")


def test_partial_operator_oracle(two_two_space, truth_swap_const):
    paths = enumerate_histories(two_two_space, truth_swap_const, 4)
    reachable = {stage for p in paths.paths for stage in p.stages}
    assert len(reachable) > 1
    for stage in reachable:
        meta = MetaState(two_two_space.key, stage)
        for state in range(2):
            for signal in two_two_space.signals:
                # oracle: union over raw image tables, no shared code path
                expected = tuple(sorted({
                    two_two_space.members[i].tables[signal.index].image[state]
                    for i in stage
                }))
                assert partial_operator(two_two_space, meta, signal, state) == expected
    _done(f"partial-operator oracle ({len(reachable)} reachable meta-states)")


def test_path_sets(four_space, two_two_space, truth_swap_const):
    truth = [m.id for m in four_space.members if m.tables[0].image == (1, 0)][0]
    small = enumerate_histories(four_space, truth, 2)
    assert sum(1 for p in small.paths if p.complete) == 2
    big = enumerate_histories(two_two_space, truth_swap_const, 4)
    complete = [p for p in big.paths if p.complete]
    assert complete
    assert all(len(p.stages) - 1 == 4 for p in complete)
    assert all(p.stages[-1] == (truth_swap_const,) for p in complete)
    _done("path-set check")


def test_composition_law():
    from opsem import apply_sequence, apply_signal, compose

    for size, n_signals in itertools.product((1, 2, 3), (1, 2)):
        space = _space(size, n_signals)
        for member in space.members:
            for alpha, beta in itertools.product(space.signals, repeat=2):
                composed = compose(member.table_for(alpha), member.table_for(beta))
                for s in range(size):
                    seq = apply_sequence(member, [alpha, beta], s)
                    iterated = apply_signal(member, beta, apply_signal(member, alpha, s))
                    assert seq == iterated == composed.apply(s)
    _done("composition law")


def test_cli_determinism(tmp_path, two_two_space, truth_swap_const):
    runner = CliRunner()
    scen = tmp_path / "scenario.json"
    scen.write_text(json.dumps(scenario_json(strategy="sweep", seed=5)))
    outs = [tmp_path / "o1", tmp_path / "o2"]
    for out in outs:
        result = runner.invoke(
            main, ["simulate", "--scenario", str(scen), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
    assert (outs[0] / "events.jsonl").read_bytes() == (outs[1] / "events.jsonl").read_bytes()

    rand_scen = tmp_path / "random.json"
    rand_scen.write_text(
        json.dumps(scenario_json(strategy="random", seed=123, max_steps=32))
    )
    out3 = tmp_path / "o3"
    result = runner.invoke(
        main, ["simulate", "--scenario", str(rand_scen), "--out", str(out3), "--seed", "321"]
    )
    assert result.exit_code == 0, result.output
    lines = (out3 / "events.jsonl").read_text().splitlines()
    end = json.loads(lines[-1])
    assert end["converged"] is True
    assert end["final_candidates"] == [truth_swap_const]
    _done("CLI determinism")


def test_population_convergence(two_two_space, truth_swap_const):
    rr = run_population(two_two_space, truth_swap_const, 3, "round-robin", 16)
    assert rr.all_converged and rr.rounds_run == 4
    assert all(h.final_candidates == (truth_swap_const,) for h in rr.histories)

    sr = run_population(
        two_two_space, truth_swap_const, 1, "seeded-random", 64, seed=7
    )
    assert sr.all_converged
    drawn = {s.query.sort_key for s in sr.histories[0].steps}
    assert drawn == {(0, 0), (0, 1), (1, 0), (1, 1)}
    _done("population convergence")
