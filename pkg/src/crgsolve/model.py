"""Core model for coalitional resource games.

A game couples a set of agents with a set of goals and a set of resources.
Each agent is satisfied by any goal from its personal goal set, each goal
consumes a per-resource quantity, and each agent contributes a per-resource
endowment.  A coalition is successful when some non-empty goal set satisfies
every member and its summed requirement stays within the coalition's summed
endowment.

All types are immutable values and all operations are pure functions, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Optional


class InputError(ValueError):
    """Malformed input: bad identifiers, out-of-range indices, shape mismatches."""


class PreconditionError(ValueError):
    """A structurally valid query that violates a problem precondition."""


@total_ordering
@dataclass(frozen=True)
class Quantity:
    """A non-negative integer amount, extended with an infinite value.

    ``value`` is a non-negative ``int``, or ``None`` for the infinite
    quantity.  Addition saturates (anything plus infinity is infinity) and
    the order is total, with every finite value below infinity.  Finite
    arithmetic uses Python's unbounded integers, so it cannot overflow.
    """

    value: Optional[int]

    def __post_init__(self) -> None:
        if self.value is None:
            return
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise InputError(f"quantity must be an integer or None, got {self.value!r}")
        if self.value < 0:
            raise InputError(f"quantity must be non-negative, got {self.value}")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __add__(self, other: "Quantity") -> "Quantity":
        if not isinstance(other, Quantity):
            return NotImplemented
        if self.value is None or other.value is None:
            return INF
        return Quantity(self.value + other.value)

    def __radd__(self, other):
        # Lets sum() start from the plain int 0.
        if other == 0:
            return self
        return NotImplemented

    def __lt__(self, other: "Quantity") -> bool:
        if not isinstance(other, Quantity):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"Quantity({self.value})"


ZERO = Quantity(0)
INF = Quantity(None)

# Subsets of agents and goals are plain frozensets of dense indices into
# Game.agents / Game.goals; a resource bound is one Quantity per resource.
Coalition = frozenset
GoalSet = frozenset
ResourceBound = tuple


def _as_quantity(value) -> Quantity:
    if isinstance(value, Quantity):
        return value
    return Quantity(value)


@dataclass(frozen=True)
class Game:
    """A coalitional resource game.

    ``agent_goals[i]`` holds the goal indices that satisfy agent ``i``;
    ``endowment[i][r]`` is agent ``i``'s (always finite) stock of resource
    ``r``; ``requirement[g][r]`` is the amount of ``r`` needed for goal ``g``
    and may be infinite, which makes the goal unachievable for every
    coalition.
    """

    agents: tuple
    goals: tuple
    resources: tuple
    agent_goals: tuple
    endowment: tuple
    requirement: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "goals", tuple(self.goals))
        object.__setattr__(self, "resources", tuple(self.resources))
        for name in ("agents", "goals", "resources"):
            ids = getattr(self, name)
            if not ids:
                raise InputError(f"{name} must be non-empty")
            if len(set(ids)) != len(ids):
                raise InputError(f"duplicate identifiers in {name}")
        n, m, t = len(self.agents), len(self.goals), len(self.resources)

        if len(self.agent_goals) != n:
            raise InputError(f"expected {n} agent goal sets, got {len(self.agent_goals)}")
        object.__setattr__(self, "agent_goals", tuple(frozenset(gs) for gs in self.agent_goals))
        for i, gs in enumerate(self.agent_goals):
            for g in gs:
                if not (isinstance(g, int) and 0 <= g < m):
                    raise InputError(f"agent {self.agents[i]!r}: goal index {g!r} out of range")

        if len(self.endowment) != n:
            raise InputError(f"endowment must have one row per agent ({n}), got {len(self.endowment)}")
        rows = []
        for i, row in enumerate(self.endowment):
            row = tuple(row)
            if len(row) != t:
                raise InputError(f"endowment row for agent {self.agents[i]!r} has length {len(row)}, expected {t}")
            for v in row:
                q = _as_quantity(v)
                if not q.is_finite:
                    raise InputError(f"infinite endowment for agent {self.agents[i]!r}; endowments must be finite")
            rows.append(tuple(_as_quantity(v).value for v in row))
        object.__setattr__(self, "endowment", tuple(rows))

        if len(self.requirement) != m:
            raise InputError(f"requirement must have one row per goal ({m}), got {len(self.requirement)}")
        rows = []
        for g, row in enumerate(self.requirement):
            row = tuple(row)
            if len(row) != t:
                raise InputError(f"requirement row for goal {self.goals[g]!r} has length {len(row)}, expected {t}")
            rows.append(tuple(_as_quantity(v) for v in row))
        object.__setattr__(self, "requirement", tuple(rows))

    @property
    def num_agents(self) -> int:
        return len(self.agents)

    @property
    def num_goals(self) -> int:
        return len(self.goals)

    @property
    def num_resources(self) -> int:
        return len(self.resources)

    @property
    def grand_coalition(self) -> frozenset:
        return frozenset(range(self.num_agents))


def check_resource(game: Game, r: int) -> int:
    if not (isinstance(r, int) and not isinstance(r, bool) and 0 <= r < game.num_resources):
        raise InputError(f"resource index {r!r} out of range 0..{game.num_resources - 1}")
    return r


def check_coalition(game: Game, coalition: Iterable, *, require_non_empty: bool = False) -> frozenset:
    c = frozenset(coalition)
    for i in c:
        if not (isinstance(i, int) and not isinstance(i, bool) and 0 <= i < game.num_agents):
            raise InputError(f"agent index {i!r} out of range 0..{game.num_agents - 1}")
    if require_non_empty and not c:
        raise InputError("coalition must be non-empty")
    return c


def check_goal_set(game: Game, goal_set: Iterable) -> frozenset:
    gs = frozenset(goal_set)
    for g in gs:
        if not (isinstance(g, int) and not isinstance(g, bool) and 0 <= g < game.num_goals):
            raise InputError(f"goal index {g!r} out of range 0..{game.num_goals - 1}")
    return gs


def check_bound(game: Game, bound: Iterable) -> tuple:
    b = tuple(_as_quantity(v) for v in bound)
    if len(b) != game.num_resources:
        raise InputError(f"resource bound has {len(b)} entries, expected {game.num_resources}")
    return b


def coalition_endowment(game: Game, coalition: Iterable, r: int) -> Quantity:
    """Total endowment of resource ``r`` across the coalition; always finite."""
    check_resource(game, r)
    c = check_coalition(game, coalition)
    return Quantity(sum(game.endowment[i][r] for i in c))


def goalset_requirement(game: Game, goal_set: Iterable, r: int) -> Quantity:
    """Total requirement of resource ``r`` across the goal set (saturating)."""
    check_resource(game, r)
    gs = check_goal_set(game, goal_set)
    total = 0
    for g in gs:
        v = game.requirement[g][r].value
        if v is None:
            return INF
        total += v
    return Quantity(total)


def requirement_vector(game: Game, goal_set: Iterable) -> tuple:
    """Per-resource total requirement of a goal set."""
    gs = check_goal_set(game, goal_set)
    return tuple(goalset_requirement(game, gs, r) for r in range(game.num_resources))


def satisfies(game: Game, goal_set: Iterable, coalition: Iterable) -> bool:
    """True when every coalition member has one of its goals in the set.

    Vacuously true for the empty coalition.
    """
    gs = check_goal_set(game, goal_set)
    c = check_coalition(game, coalition)
    return all(gs & game.agent_goals[i] for i in c)


def is_feasible(game: Game, goal_set: Iterable, coalition: Iterable) -> bool:
    """True when the coalition's endowment covers the goal set on every resource."""
    gs = check_goal_set(game, goal_set)
    c = check_coalition(game, coalition)
    for r in range(game.num_resources):
        if goalset_requirement(game, gs, r) > coalition_endowment(game, c, r):
            return False
    return True


def is_successful_goalset(game: Game, goal_set: Iterable, coalition: Iterable) -> bool:
    """True when the goal set is non-empty, satisfies the coalition and is feasible for it."""
    gs = check_goal_set(game, goal_set)
    c = check_coalition(game, coalition)
    return bool(gs) and satisfies(game, gs, c) and is_feasible(game, gs, c)


def respects(game: Game, goal_set: Iterable, bound: Iterable) -> bool:
    """True when the goal set's requirement stays within the bound on every resource."""
    gs = check_goal_set(game, goal_set)
    b = check_bound(game, bound)
    return all(goalset_requirement(game, gs, r) <= b[r] for r in range(game.num_resources))


def dominates(game: Game, challenger: Iterable, target: Iterable) -> bool:
    """True when ``challenger`` needs no more of any resource than ``target``
    and strictly less of at least one."""
    cv = requirement_vector(game, challenger)
    tv = requirement_vector(game, target)
    return all(c <= t for c, t in zip(cv, tv)) and any(c < t for c, t in zip(cv, tv))


def in_conflict(game: Game, gs1: Iterable, gs2: Iterable, bound: Iterable) -> bool:
    """True when both goal sets respect the bound but their union does not."""
    g1 = check_goal_set(game, gs1)
    g2 = check_goal_set(game, gs2)
    b = check_bound(game, bound)
    return respects(game, g1, b) and respects(game, g2, b) and not respects(game, g1 | g2, b)


def iter_index_subsets(n: int, max_size: Optional[int] = None) -> Iterator[tuple]:
    """Non-empty subsets of range(n) as sorted tuples, smallest first and
    lexicographic within each size."""
    limit = n if max_size is None else max_size
    for size in range(1, limit + 1):
        yield from itertools.combinations(range(n), size)


def enumerate_succ(game: Game, coalition: Iterable, max_size: Optional[int] = None) -> list:
    """All successful goal sets for the coalition, optionally capped in size.

    Returned smallest first, lexicographically by goal index within each
    size.  A coalition with at least one member always finds a witness of
    size at most ``len(coalition)`` when any witness exists, because keeping
    one satisfying goal per member preserves satisfaction and shrinking a
    goal set never raises its requirement.
    """
    c = check_coalition(game, coalition)
    m = game.num_goals
    if max_size is not None:
        if not (isinstance(max_size, int) and not isinstance(max_size, bool) and 1 <= max_size <= m):
            raise InputError(f"max_size {max_size!r} out of range 1..{m}")
    return [
        frozenset(combo)
        for combo in iter_index_subsets(m, max_size)
        if is_successful_goalset(game, frozenset(combo), c)
    ]
