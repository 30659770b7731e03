import random

import pytest

from crgsolve import problems as P
from crgsolve.gameio import gen_random
from crgsolve.model import (
    INF,
    Game,
    InputError,
    PreconditionError,
    Quantity,
    enumerate_succ,
    goalset_requirement,
    is_feasible,
)
from crgsolve.oracle import independent_set_exists
from crgsolve.reductions import (
    Graph,
    buggy_esck,
    gen_counterexample,
    is_to_esck_g1,
    is_to_sc,
    sc_to_cc,
    sc_to_cgro,
    sc_to_esck,
    sc_to_nr,
    sc_to_rpegs,
    sc_to_scrb,
    sc_to_snr,
)

K3 = Graph(3, ((0, 1), (1, 2), (0, 2)))
P3 = Graph(3, ((0, 1), (1, 2)))
C1 = frozenset({0})


def run(out):
    return P.solve(out.game, out.problem, **out.query)


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(2, ((0, 0),))
    with pytest.raises(InputError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(InputError):
        Graph(2, ((0, 2),))
    with pytest.raises(InputError):
        Graph(0, ())


def test_is_to_sc_structure():
    out = is_to_sc(P3, 2)
    game = out.game
    assert game.num_agents == 2
    assert game.num_goals == 3 * 2
    assert game.num_resources == 2
    assert all(v == 1 for row in game.endowment for v in row)
    # Vertex copies are disjoint per agent and each agent owns a full copy.
    assert game.agent_goals[0] == frozenset({0, 1, 2})
    assert game.agent_goals[1] == frozenset({3, 4, 5})
    # A copy of vertex v charges k on exactly its incident edges.
    for i in range(2):
        for v in range(3):
            row = game.requirement[i * 3 + v]
            expected = [Quantity(2 if v in e else 0) for e in P3.edges]
            assert list(row) == expected
    assert out.query == {"coalition": frozenset({0, 1})}
    assert not out.inverted


def test_is_to_sc_verdicts():
    assert not run(is_to_sc(K3, 2)).verdict
    assert run(is_to_sc(P3, 2)).verdict
    assert run(is_to_sc(Graph(2, ((0, 1),)), 1)).verdict


def test_is_to_sc_isolated_vertex_preprocessing():
    lonely = Graph(3, ((0, 1),))  # vertex 2 is isolated
    # Independent set of size 2 exists ({v2, v0}); the gadget shrinks to k=1.
    out = is_to_sc(lonely, 2)
    assert out.game.num_agents == 1
    assert run(out).verdict == independent_set_exists(lonely, 2) is True
    # k=3 needs both endpoints of the edge; impossible.
    out = is_to_sc(lonely, 3)
    assert run(out).verdict == independent_set_exists(lonely, 3) is False


def test_is_to_sc_all_isolated_is_trivial_yes():
    bare = Graph(2, ())
    out = is_to_sc(bare, 2)
    assert run(out).verdict


def test_is_to_sc_range_check():
    with pytest.raises(InputError):
        is_to_sc(P3, 0)
    with pytest.raises(InputError):
        is_to_sc(P3, 4)


def test_sc_to_esck(game_a, game_b):
    out = sc_to_esck(game_a, C1)
    assert out.game.num_agents == 1 and out.query == {"k": 1}
    assert run(out).verdict
    assert not run(sc_to_esck(game_b, C1)).verdict
    two = Game(
        ("a1", "a2"), ("g1",), ("r1",), (frozenset({0}), frozenset({0})), ((1,), (1,)), ((1,),)
    )
    assert sc_to_esck(two, C1).game.num_agents == 1


def test_sc_to_nr(game_a, game_b):
    out = sc_to_nr(game_a, C1)
    assert out.game.num_resources == game_a.num_resources + 1
    assert out.inverted
    assert not run(out).verdict  # source YES -> target NO
    assert run(sc_to_nr(game_b, C1)).verdict
    new_r = out.query["resource"]
    assert all(out.game.endowment[i][new_r] == 1 for i in range(out.game.num_agents))
    assert all(out.game.requirement[g][new_r] == Quantity(0) for g in range(out.game.num_goals))


def test_sc_to_snr(game_a, game_b):
    out = sc_to_snr(game_a, C1)
    assert run(out).verdict
    assert not run(sc_to_snr(game_b, C1)).verdict
    # Every goal set's usage of the new resource is its own size.
    new_r = out.query["resource"]
    assert goalset_requirement(out.game, frozenset({0}), new_r) == Quantity(1)


def test_sc_to_cgro_verbatim_fails_precondition(game_a):
    out = sc_to_cgro(game_a, C1)
    with pytest.raises(PreconditionError):
        run(out)


def test_sc_to_cgro_goal_membership_variant(game_a, game_b):
    out = sc_to_cgro(game_a, C1, include_in_agent_goals=True)
    new_g = next(iter(out.query["goal_set"]))
    assert goalset_requirement(out.game, out.query["goal_set"], out.query["resource"]) == Quantity(1)
    assert new_g in out.game.agent_goals[0]
    assert not run(out).verdict  # source YES -> target NO
    out = sc_to_cgro(game_b, C1, include_in_agent_goals=True)
    assert run(out).verdict


def test_sc_to_rpegs(game_a, game_b):
    out = sc_to_rpegs(game_a, C1)
    new_goal = next(iter(out.query["goal_set"]))
    # The reference goal is unachievable for anyone.
    assert not is_feasible(out.game, frozenset({new_goal}), C1)
    assert not run(out).verdict
    assert run(sc_to_rpegs(game_b, C1)).verdict


def test_sc_to_scrb(game_a, game_b):
    out = sc_to_scrb(game_a, C1)
    assert out.query["bound"] == (Quantity(1), Quantity(0))  # ones then |C|-1
    assert not run(out).verdict
    # Unsuccessful source: NO under plain semantics, YES under the flag.
    out = sc_to_scrb(game_b, C1)
    assert not run(out).verdict
    assert P.solve(out.game, "scrb", vacuous_scrb_yes=True, **out.query).verdict


def test_sc_to_cc(game_a, game_b):
    out = sc_to_cc(game_a, C1)
    assert out.query["bound"][0] == INF
    assert not run(out).verdict
    assert run(sc_to_cc(game_b, C1)).verdict


def test_family_preservation_on_samples():
    rng = random.Random(5)
    for _ in range(25):
        game = gen_random(
            rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 2), 2, 0.6, seed=rng.randrange(10**6)
        )
        c = frozenset(rng.sample(range(game.num_agents), rng.randint(1, game.num_agents)))
        for build in (sc_to_snr, sc_to_rpegs, sc_to_cc):
            assert enumerate_succ(game, c) == enumerate_succ(build(game, c).game, c)


def test_is_to_esck_g1_structure():
    out = is_to_esck_g1(P3, 2)
    game = out.game
    assert game.num_goals == 1
    assert game.num_agents == 3
    assert all(gs == frozenset({0}) for gs in game.agent_goals)
    assert all(q == Quantity(1) for q in game.requirement[0])  # k-1
    for i in range(3):
        for j, (u, v) in enumerate(P3.edges):
            assert game.endowment[i][j] == (0 if i in (u, v) else 1)


def test_is_to_esck_g1_verdicts():
    assert run(is_to_esck_g1(P3, 2)).verdict
    assert not run(is_to_esck_g1(K3, 2)).verdict
    assert run(is_to_esck_g1(K3, 1)).verdict  # special-cased
    assert run(is_to_esck_g1(Graph(2, ()), 2)).verdict  # edgeless
    with pytest.raises(InputError):
        is_to_esck_g1(P3, 0)
    with pytest.raises(InputError):
        is_to_esck_g1(P3, 4)


def test_counterexample_family():
    game, k = gen_counterexample(1, 2)
    assert P.esck(game, k).verdict
    assert not buggy_esck(game, k)
    game, k = gen_counterexample(2, 5)
    assert P.esck(game, k).verdict
    assert not buggy_esck(game, k)
    with pytest.raises(InputError):
        gen_counterexample(2, 2)


def test_counterexample_configurable_sizes():
    game, k = gen_counterexample(1, 3, num_goals=2, num_resources=2)
    assert game.num_goals == 2 and game.num_resources == 2
    assert P.esck(game, k).verdict and not buggy_esck(game, k)


def test_buggy_esck_on_exact_instances(game_a):
    assert buggy_esck(game_a, 1)
    with pytest.raises(InputError):
        buggy_esck(game_a, 2)


def test_buggy_esck_grand_coalition_replay():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        game = gen_random(
            rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 2), 2, 0.8, seed=rng.randrange(10**6)
        )
        n = game.num_agents
        if P.sc(game, frozenset(range(n))).verdict and P.esck(game, n).verdict:
            assert buggy_esck(game, n)
            checked += 1
    assert checked > 5
