import pytest

from opsem import (
    OperatorFamily,
    OperatorTable,
    RepCapacity,
    Signal,
    enumerate_space,
)

SWAP = OperatorTable((1, 0))
CONST0 = OperatorTable((0, 0))
IDENT2 = OperatorTable((0, 1))


@pytest.fixture(scope="session")
def two_two_space():
    """|states|=2, signals a,b, all functions: 16 interpretations."""
    return enumerate_space(
        RepCapacity(2),
        [Signal(0, "a"), Signal(1, "b")],
        OperatorFamily("all-functions"),
    )


@pytest.fixture(scope="session")
def truth_swap_const(two_two_space):
    """Id of the interpretation a -> swap, b -> const-0."""
    (member,) = [m for m in two_two_space.members if m.tables == (SWAP, CONST0)]
    return member.id


@pytest.fixture(scope="session")
def four_space():
    """|states|=2, one signal, all functions: 4 interpretations."""
    return enumerate_space(
        RepCapacity(2), [Signal(0, "a")], OperatorFamily("all-functions")
    )


def scenario_json(
    *,
    size=2,
    signals=("a", "b"),
    family="all-functions",
    truth_tables=((1, 0), (0, 0)),
    truth_index=None,
    strategy="sweep",
    seed=0,
    max_steps=16,
    population=None,
    max_space=None,
):
    doc = {
        "capacity": {"size": size},
        "signals": list(signals),
        "family": {"kind": family},
        "truth": (
            {"index": truth_index}
            if truth_index is not None
            else {"tables": [list(t) for t in truth_tables]}
        ),
        "strategy": {"kind": strategy, "seed": seed},
        "max_steps": max_steps,
    }
    if population is not None:
        doc["population"] = population
    if max_space is not None:
        doc["limits"] = {"max_space": max_space}
    return doc
