"""Refinement-law properties over small interpretation spaces."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opsem import (
    MetaState,
    Observation,
    OperatorFamily,
    QueryStrategy,
    RepCapacity,
    Signal,
    entropy,
    enumerate_space,
    generate_observation,
    initial_meta_state,
    refine,
    run_session,
    Query,
)


def _space(size, n_signals, kind="all-functions"):
    signals = [Signal(i, chr(ord("a") + i)) for i in range(n_signals)]
    return enumerate_space(RepCapacity(size), signals, OperatorFamily(kind))


SPACES = [_space(2, 1), _space(2, 2), _space(3, 1), _space(3, 2, "permutations")]


@st.composite
def meta_and_observations(draw):
    space = draw(st.sampled_from(SPACES))
    truth_id = draw(st.integers(0, len(space.members) - 1))
    truth = space.members[truth_id]
    extra = draw(
        st.sets(st.integers(0, len(space.members) - 1), max_size=len(space.members))
    )
    meta = MetaState(space.key, tuple(sorted(extra | {truth_id})))
    n_obs = draw(st.integers(1, 4))
    queries = draw(
        st.lists(
            st.tuples(
                st.integers(0, space.capacity.size - 1),
                st.sampled_from(space.signals),
            ),
            min_size=n_obs,
            max_size=n_obs,
        )
    )
    observations = [
        generate_observation(truth, Query(state, sig)) for state, sig in queries
    ]
    return space, truth_id, meta, observations


@settings(max_examples=300, deadline=None)
@given(meta_and_observations())
def test_refine_monotone_and_sound(case):
    space, truth_id, meta, observations = case
    for obs in observations:
        after = refine(space, meta, obs)
        assert set(after.candidates) <= set(meta.candidates)
        assert truth_id in after.candidates
        assert entropy(after) <= entropy(meta)
        meta = after


@settings(max_examples=300, deadline=None)
@given(meta_and_observations())
def test_refine_idempotent(case):
    space, _, meta, observations = case
    for obs in observations:
        once = refine(space, meta, obs)
        assert refine(space, once, obs) == once


@settings(max_examples=300, deadline=None)
@given(meta_and_observations(), st.randoms(use_true_random=False))
def test_refine_order_independent(case, rnd):
    space, _, meta, observations = case
    forward = meta
    for obs in observations:
        forward = refine(space, forward, obs)
    shuffled = list(observations)
    rnd.shuffle(shuffled)
    backward = meta
    for obs in shuffled:
        backward = refine(space, backward, obs)
    assert forward.candidates == backward.candidates


def test_sweep_converges_in_state_times_signal_steps():
    """Each query of the all-functions family is an independent split."""
    for size, n_signals in itertools.product((2, 3), (1, 2)):
        space = _space(size, n_signals)
        for truth_id in range(len(space.members)):
            h = run_session(space, truth_id, QueryStrategy("sweep"), 64)
            assert h.converged
            assert len(h.steps) == size * n_signals
            assert h.final_candidates == (truth_id,)


def test_random_subsets_refine_consistently():
    """Seeded random spot-check of the laws on larger candidate subsets."""
    rng = random.Random(0xC0FFEE)
    space = _space(3, 1)
    ids = range(len(space.members))
    for _ in range(200):
        truth_id = rng.randrange(len(space.members))
        truth = space.members[truth_id]
        subset = set(rng.sample(ids, rng.randint(1, len(space.members)))) | {truth_id}
        meta = MetaState(space.key, tuple(sorted(subset)))
        state = rng.randrange(3)
        obs = generate_observation(truth, Query(state, space.signals[0]))
        after = refine(space, meta, obs)
        survivors = {
            i for i in meta.candidates
            if space.members[i].tables[0].image[state] == obs.post
        }
        assert set(after.candidates) == survivors
