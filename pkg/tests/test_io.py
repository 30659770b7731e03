import json
import random

import pytest
from hypothesis import given, settings

from conftest import small_games
from crgsolve.gameio import (
    gen_random,
    parse_game,
    parse_graph,
    serialize_document,
    serialize_game,
    serialize_graph,
)
from crgsolve.model import INF, InputError, Quantity
from crgsolve.reductions import (
    is_to_sc,
    sc_to_cc,
    sc_to_cgro,
    sc_to_esck,
    sc_to_nr,
    sc_to_rpegs,
    sc_to_scrb,
    sc_to_snr,
    Graph,
)

GAME_A_DOC = """
{
  "agents": ["a1"],
  "goals": ["g1"],
  "resources": ["r1"],
  "agent_goals": {"a1": ["g1"]},
  "endowment": {"a1": {"r1": 1}},
  "requirement": {"g1": {"r1": 1}}
}
"""


def test_parse_game_a():
    doc = parse_game(GAME_A_DOC)
    game = doc.game
    assert game.agents == ("a1",)
    assert game.agent_goals == (frozenset({0}),)
    assert game.endowment == ((1,),)
    assert game.requirement == ((Quantity(1),),)


def test_parse_rejects_infinite_endowment():
    bad = GAME_A_DOC.replace('"endowment": {"a1": {"r1": 1}}', '"endowment": {"a1": {"r1": "inf"}}')
    with pytest.raises(InputError, match="infinite endowment"):
        parse_game(bad)


def test_parse_accepts_infinite_requirement():
    doc = parse_game(
        GAME_A_DOC.replace('"requirement": {"g1": {"r1": 1}}', '"requirement": {"g1": {"r1": "inf"}}')
    )
    assert doc.game.requirement == ((INF,),)


def test_parse_error_diagnostics():
    with pytest.raises(InputError, match="line 1"):
        parse_game("{nope")
    with pytest.raises(InputError, match="agent_goals.a1"):
        parse_game(GAME_A_DOC.replace('"agent_goals": {"a1": ["g1"]}', '"agent_goals": {"a1": ["gX"]}'))
    with pytest.raises(InputError, match="unknown agent"):
        parse_game(GAME_A_DOC.replace('"agent_goals": {"a1": ["g1"]}', '"agent_goals": {"aX": ["g1"]}'))
    with pytest.raises(InputError, match="endowment.a1.r1"):
        parse_game(GAME_A_DOC.replace('"r1": 1}', '"r1": -1}', 1))
    with pytest.raises(InputError, match="unknown resource"):
        parse_game(GAME_A_DOC.replace('"endowment": {"a1": {"r1": 1}}', '"endowment": {"a1": {"rX": 1}}'))
    with pytest.raises(InputError, match="unknown keys"):
        parse_game(GAME_A_DOC.replace('"agents"', '"extra": 1, "agents"', 1))
    with pytest.raises(InputError, match="missing required key"):
        parse_game('{"agents": ["a"], "goals": ["g"], "resources": ["r"]}')


def test_parse_defaults():
    doc = parse_game(
        '{"agents": ["a1"], "goals": ["g1"], "resources": ["r1"], "agent_goals": {}}'
    )
    assert doc.game.agent_goals == (frozenset(),)
    assert doc.game.endowment == ((0,),)
    assert doc.game.requirement == ((Quantity(0),),)


def test_named_auxiliaries_round_trip(game_a):
    text = serialize_game(
        game_a,
        coalitions={"C": frozenset({0})},
        bounds={"b": (INF,)},
        goal_sets={"G0": frozenset({0})},
    )
    doc = parse_game(text)
    assert doc.coalitions == {"C": frozenset({0})}
    assert doc.bounds == {"b": (INF,)}
    assert doc.goal_sets == {"G0": frozenset({0})}
    assert serialize_document(doc) == text


def test_serialize_is_canonical(game_a):
    text = serialize_game(game_a)
    assert text == serialize_document(parse_game(text))
    obj = json.loads(text)
    assert list(obj) == sorted(obj)


@given(small_games(allow_inf=True))
@settings(max_examples=60)
def test_round_trip_random_games(game):
    text = serialize_game(game)
    doc = parse_game(text)
    assert doc.game == game
    assert serialize_document(doc) == text


def test_round_trip_gadget_corpus():
    rng = random.Random(17)
    corpus = []
    for _ in range(10):
        game = gen_random(
            rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 3), 3, 0.6, seed=rng.randrange(10**6)
        )
        c = frozenset(rng.sample(range(game.num_agents), rng.randint(1, game.num_agents)))
        for build in (sc_to_esck, sc_to_nr, sc_to_snr, sc_to_cgro, sc_to_rpegs, sc_to_scrb, sc_to_cc):
            corpus.append(build(game, c))
    corpus.append(is_to_sc(Graph(3, ((0, 1), (1, 2))), 2))
    for out in corpus:
        query = out.query
        coalitions = {name: query[key] for name, key in (("C", "coalition"), ("C2", "coalition2")) if key in query}
        bounds = {"b": query["bound"]} if "bound" in query else None
        goal_sets = {"G0": query["goal_set"]} if "goal_set" in query else None
        text = serialize_game(out.game, coalitions, bounds, goal_sets)
        doc = parse_game(text)
        assert doc.game == out.game
        assert serialize_document(doc) == text


def test_parse_graph():
    graph = parse_graph("3 3\n1 2\n2 3\n1 3\n")
    assert graph.num_vertices == 3
    assert graph.edges == ((0, 1), (1, 2), (0, 2))
    assert parse_graph("3 2\n1 2\n2 3").edges == ((0, 1), (1, 2))


def test_parse_graph_errors():
    with pytest.raises(InputError, match="self-loop"):
        parse_graph("2 1\n1 1")
    with pytest.raises(InputError, match="duplicate edge"):
        parse_graph("2 2\n1 2\n2 1")
    with pytest.raises(InputError, match="out of range"):
        parse_graph("2 1\n1 3")
    with pytest.raises(InputError, match="expected 2 integers"):
        parse_graph("2 1\n1 2 3")
    with pytest.raises(InputError, match="edge lines"):
        parse_graph("2 2\n1 2")
    with pytest.raises(InputError, match="empty"):
        parse_graph("   \n")


def test_graph_round_trip():
    graph = parse_graph("4 2\n1 4\n2 3\n")
    assert parse_graph(serialize_graph(graph)) == graph


def test_gen_random_deterministic():
    one = gen_random(3, 4, 2, 3, 0.5, seed=42)
    two = gen_random(3, 4, 2, 3, 0.5, seed=42)
    assert one == two
    assert one != gen_random(3, 4, 2, 3, 0.5, seed=43)


def test_gen_random_non_empty_goal_sets():
    rng = random.Random(0)
    for _ in range(1000):
        game = gen_random(
            rng.randint(1, 5), rng.randint(1, 5), 1, 1, rng.choice((0.1, 0.5, 0.9)), seed=rng.randrange(10**9)
        )
        assert all(gs for gs in game.agent_goals)


def test_gen_random_validation():
    with pytest.raises(InputError):
        gen_random(0, 1, 1, 1, 0.5, seed=1)
    with pytest.raises(InputError):
        gen_random(1, 1, 1, -1, 0.5, seed=1)
    with pytest.raises(InputError):
        gen_random(1, 1, 1, 1, 0.0, seed=1)
    with pytest.raises(InputError):
        gen_random(1, 1, 1, 1, 1.5, seed=1)
