"""Brute-force reference deciders used to certify the optimized paths.

Everything here evaluates the problem statements literally: full
enumeration over all non-empty goal subsets, all coalitions, or all pairs,
with no size caps and no shortcuts.  The only shared code with the solver
backends is the predicate layer in ``model``; in particular these functions
never touch ``problems`` or ``ilp``.  A guard refuses instances beyond desk
scale, since the whole point is exhaustiveness over small inputs.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .model import (
    ZERO,
    Game,
    InputError,
    PreconditionError,
    check_bound,
    check_coalition,
    check_goal_set,
    check_resource,
    dominates,
    goalset_requirement,
    in_conflict,
    is_successful_goalset,
    respects,
)
from .reductions import Graph

MAX_GOALS = 12
MAX_AGENTS = 12


def independent_set_exists(graph: Graph, k: int) -> bool:
    """Does the graph contain ``k`` pairwise non-adjacent vertices?

    Exhaustive over all k-subsets of the vertices.
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and 0 <= k <= graph.num_vertices):
        raise InputError(f"k={k!r} out of range 0..{graph.num_vertices}")
    adjacent = set(graph.edges)
    for subset in itertools.combinations(range(graph.num_vertices), k):
        if all((u, v) not in adjacent for u, v in itertools.combinations(subset, 2)):
            return True
    return False


def _all_goal_subsets(game: Game):
    for size in range(1, game.num_goals + 1):
        for combo in itertools.combinations(range(game.num_goals), size):
            yield frozenset(combo)


def _succ(game: Game, coalition: frozenset) -> list:
    return [gs for gs in _all_goal_subsets(game) if is_successful_goalset(game, gs, coalition)]


def _sc(game, coalition) -> bool:
    return bool(_succ(game, coalition))


def _esck(game, k) -> bool:
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= game.num_agents):
        raise InputError(f"k={k!r} out of range 1..{game.num_agents}")
    for combo in itertools.combinations(range(game.num_agents), k):
        if _sc(game, frozenset(combo)):
            return True
    return False


def _maxc(game, coalition) -> bool:
    rest = sorted(set(range(game.num_agents)) - coalition)
    for size in range(1, len(rest) + 1):
        for extra in itertools.combinations(rest, size):
            if _sc(game, coalition | frozenset(extra)):
                return False
    return True


def _maxsc(game, coalition) -> bool:
    return _sc(game, coalition) and _maxc(game, coalition)


def _nr(game, coalition, r) -> bool:
    return all(goalset_requirement(game, gs, r) > ZERO for gs in _succ(game, coalition))


def _snr(game, coalition, r) -> bool:
    family = _succ(game, coalition)
    return bool(family) and all(goalset_requirement(game, gs, r) > ZERO for gs in family)


def _cgro(game, coalition, g0, r) -> bool:
    if not is_successful_goalset(game, g0, coalition):
        raise PreconditionError("reference goal set is not successful for the coalition")
    beta = goalset_requirement(game, g0, r)
    return all(goalset_requirement(game, gs, r) >= beta for gs in _succ(game, coalition))


def _rpegs(game, coalition, g0) -> bool:
    return not any(dominates(game, gs, g0) for gs in _succ(game, coalition))


def _scrb(game, coalition, bound) -> bool:
    return any(respects(game, gs, bound) for gs in _succ(game, coalition))


def _cc(game, c1, c2, bound) -> bool:
    first_family = _succ(game, c1)
    second_family = _succ(game, c2)
    return all(
        in_conflict(game, g1, g2, bound) for g1 in first_family for g2 in second_family
    )


def brute_force_answer(
    game: Game,
    problem: str,
    *,
    coalition: Optional[Iterable] = None,
    coalition2: Optional[Iterable] = None,
    k: Optional[int] = None,
    resource: Optional[int] = None,
    goal_set: Optional[Iterable] = None,
    bound: Optional[Iterable] = None,
) -> bool:
    """The definitionally literal verdict for any of the ten problems."""
    if game.num_goals > MAX_GOALS or game.num_agents > MAX_AGENTS:
        raise InputError(
            f"instance too large for brute force (limits: {MAX_AGENTS} agents, {MAX_GOALS} goals)"
        )

    def need_coalition(value):
        if value is None:
            raise InputError(f"problem {problem} requires a coalition")
        return check_coalition(game, value, require_non_empty=True)

    if problem == "sc":
        return _sc(game, need_coalition(coalition))
    if problem == "esck":
        return _esck(game, k)
    if problem == "maxc":
        return _maxc(game, need_coalition(coalition))
    if problem == "maxsc":
        return _maxsc(game, need_coalition(coalition))
    if problem == "nr":
        return _nr(game, need_coalition(coalition), check_resource(game, resource))
    if problem == "snr":
        return _snr(game, need_coalition(coalition), check_resource(game, resource))
    if problem == "cgro":
        return _cgro(
            game,
            need_coalition(coalition),
            check_goal_set(game, goal_set),
            check_resource(game, resource),
        )
    if problem == "rpegs":
        return _rpegs(game, need_coalition(coalition), check_goal_set(game, goal_set))
    if problem == "scrb":
        return _scrb(game, need_coalition(coalition), check_bound(game, bound))
    if problem == "cc":
        return _cc(game, need_coalition(coalition), need_coalition(coalition2), check_bound(game, bound))
    raise InputError(f"unknown problem {problem!r}")
