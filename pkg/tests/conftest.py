import pytest
from hypothesis import strategies as st

from crgsolve.model import Game, Quantity


@pytest.fixture
def game_a():
    """One agent wanting one goal it can just afford."""
    return Game(("a1",), ("g1",), ("r1",), (frozenset({0}),), ((1,),), ((1,),))


@pytest.fixture
def game_b():
    """Like game_a but the goal costs more than the agent holds."""
    return Game(("a1",), ("g1",), ("r1",), (frozenset({0}),), ((1,),), ((2,),))


@st.composite
def small_games(draw, max_agents=4, max_goals=5, max_resources=3, max_value=3, allow_inf=False):
    n = draw(st.integers(1, max_agents))
    m = draw(st.integers(1, max_goals))
    t = draw(st.integers(1, max_resources))
    agent_goals = tuple(
        frozenset(draw(st.sets(st.integers(0, m - 1), max_size=m))) for _ in range(n)
    )
    endowment = tuple(
        tuple(draw(st.integers(0, max_value)) for _ in range(t)) for _ in range(n)
    )
    value = st.integers(0, max_value)
    if allow_inf:
        value = st.one_of(value, st.none())
    requirement = tuple(
        tuple(Quantity(draw(value)) for _ in range(t)) for _ in range(m)
    )
    return Game(
        tuple(f"a{i}" for i in range(1, n + 1)),
        tuple(f"g{j}" for j in range(1, m + 1)),
        tuple(f"r{j}" for j in range(1, t + 1)),
        agent_goals,
        endowment,
        requirement,
    )


@st.composite
def game_and_coalition(draw, **kwargs):
    game = draw(small_games(**kwargs))
    members = draw(st.sets(st.integers(0, game.num_agents - 1), min_size=1))
    return game, frozenset(members)
