import pytest

from crgsolve.model import Game, InputError, PreconditionError, Quantity
from crgsolve.oracle import brute_force_answer, independent_set_exists
from crgsolve.reductions import Graph

K3 = Graph(3, ((0, 1), (1, 2), (0, 2)))
P3 = Graph(3, ((0, 1), (1, 2)))


def test_independent_set_trivials():
    assert independent_set_exists(K3, 0)
    assert independent_set_exists(K3, 1)
    assert not independent_set_exists(K3, 2)
    assert independent_set_exists(P3, 2)
    assert not independent_set_exists(P3, 3)


def test_independent_set_range_check():
    with pytest.raises(InputError):
        independent_set_exists(K3, -1)
    with pytest.raises(InputError):
        independent_set_exists(K3, 4)


def test_independent_set_monotone_in_k():
    graphs = [K3, P3, Graph(4, ((0, 1), (2, 3))), Graph(4, ())]
    for graph in graphs:
        results = [independent_set_exists(graph, k) for k in range(graph.num_vertices + 1)]
        assert results == sorted(results, reverse=True)


def test_brute_force_basic(game_a, game_b):
    c = frozenset({0})
    assert brute_force_answer(game_a, "sc", coalition=c)
    assert not brute_force_answer(game_b, "sc", coalition=c)
    assert brute_force_answer(game_b, "nr", coalition=c, resource=0)  # vacuous
    assert brute_force_answer(game_a, "maxsc", coalition=c)


def test_brute_force_cc_conflict():
    game = Game(
        ("a1", "a2"),
        ("g1", "g2"),
        ("r1",),
        (frozenset({0}), frozenset({1})),
        ((1,), (1,)),
        ((1,), (1,)),
    )
    assert brute_force_answer(
        game,
        "cc",
        coalition=frozenset({0}),
        coalition2=frozenset({1}),
        bound=(Quantity(1),),
    )


def test_brute_force_guard():
    big = Game(
        tuple(f"a{i}" for i in range(13)),
        ("g1",),
        ("r1",),
        tuple(frozenset({0}) for _ in range(13)),
        tuple((1,) for _ in range(13)),
        ((0,),),
    )
    with pytest.raises(InputError):
        brute_force_answer(big, "sc", coalition=frozenset({0}))


def test_brute_force_cgro_precondition(game_b):
    with pytest.raises(PreconditionError):
        brute_force_answer(
            game_b, "cgro", coalition=frozenset({0}), goal_set=frozenset({0}), resource=0
        )


def test_brute_force_unknown_problem(game_a):
    with pytest.raises(InputError):
        brute_force_answer(game_a, "scx", coalition=frozenset({0}))
