"""Constructive problem-to-problem reduction gadgets.

Each constructor takes a source instance (a graph for the independent-set
reductions, otherwise a game plus coalition) and emits a target game with a
ready-to-run query and the claimed polarity: whether a YES source instance
maps to a YES or a NO target verdict.  The verification harness replays
both sides to certify every claim empirically.

Also included: the family of games on which a size-k successful coalition
exists even though every goal subset satisfies strictly more than k agents,
together with ``buggy_esck``, the goal-subset-first decision procedure that
family defeats.  That procedure exists purely as a test fixture.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    INF,
    Game,
    InputError,
    Quantity,
    check_coalition,
    is_feasible,
    iter_index_subsets,
)


@dataclass(frozen=True)
class Graph:
    """An undirected graph on ``num_vertices`` vertices indexed from 0.

    Edges are unordered distinct pairs; self-loops and duplicates are
    rejected.
    """

    num_vertices: int
    edges: tuple

    def __post_init__(self) -> None:
        if not (isinstance(self.num_vertices, int) and self.num_vertices >= 1):
            raise InputError(f"num_vertices must be a positive integer, got {self.num_vertices!r}")
        normalized = []
        seen = set()
        for e in self.edges:
            u, v = e
            if not all(isinstance(w, int) and 0 <= w < self.num_vertices for w in (u, v)):
                raise InputError(f"edge {e!r} out of range 0..{self.num_vertices - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise InputError(f"duplicate edge {pair!r}")
            seen.add(pair)
            normalized.append(pair)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))


@dataclass(frozen=True)
class ReductionOutput:
    """A target game, the query to run on it, and the claimed polarity.

    ``query`` holds keyword arguments for ``problems.solve``.  ``inverted``
    is False when a YES source maps to a YES target and True when it maps
    to a NO target.
    """

    game: Game
    problem: str
    query: dict
    inverted: bool

    def expected_verdict(self, source_yes: bool) -> bool:
        return (not source_yes) if self.inverted else source_yes


def _fresh(existing, base: str) -> str:
    if base not in existing:
        return base
    i = 2
    while f"{base}{i}" in existing:
        i += 1
    return f"{base}{i}"


def _trivial_yes_sc() -> ReductionOutput:
    game = Game(("c1",), ("g1",), ("r1",), (frozenset({0}),), ((0,),), ((0,),))
    return ReductionOutput(game, "sc", {"coalition": frozenset({0})}, inverted=False)


def is_to_sc(graph: Graph, k: int) -> ReductionOutput:
    """Encode "has an independent set of size k" as coalition success.

    Isolated vertices always fit in an independent set, so they are removed
    and ``k`` lowered accordingly first; if that exhausts ``k`` the query is
    trivially YES.  Otherwise the game has one agent per independent-set
    slot, a private copy of every vertex goal per agent, and one resource
    per edge.  Every agent holds 1 of each resource while a vertex goal
    charges ``k`` on each edge at that vertex, so two chosen goals touching
    a shared edge blow the budget: the grand coalition succeeds exactly
    when k pairwise non-adjacent vertices exist.
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= graph.num_vertices):
        raise InputError(f"k={k!r} out of range 1..{graph.num_vertices}")
    keep = [v for v in range(graph.num_vertices) if graph.degree(v) > 0]
    k = k - (graph.num_vertices - len(keep))
    if k <= 0:
        return _trivial_yes_sc()
    renumber = {v: j for j, v in enumerate(keep)}
    n = len(keep)
    m = graph.num_edges

    agents = tuple(f"c{i}" for i in range(1, k + 1))
    goals = tuple(f"g{v}_{i}" for i in range(1, k + 1) for v in range(1, n + 1))
    resources = tuple(f"r{j}" for j in range(1, m + 1))
    agent_goals = tuple(frozenset(range(i * n, (i + 1) * n)) for i in range(k))
    endowment = tuple(tuple(1 for _ in range(m)) for _ in range(k))
    requirement = []
    for i in range(k):
        for v in range(n):
            row = []
            for u, w in graph.edges:
                incident = renumber[u] == v or renumber[w] == v
                row.append(Quantity(k if incident else 0))
            requirement.append(tuple(row))
    game = Game(agents, goals, resources, agent_goals, endowment, tuple(requirement))
    return ReductionOutput(game, "sc", {"coalition": frozenset(range(k))}, inverted=False)


def sc_to_esck(game: Game, coalition) -> ReductionOutput:
    """Restrict the game to the coalition's members and ask for a successful
    coalition of exactly that size: the only candidate is the restricted
    grand coalition itself."""
    c = check_coalition(game, coalition, require_non_empty=True)
    members = sorted(c)
    restricted = Game(
        tuple(game.agents[i] for i in members),
        game.goals,
        game.resources,
        tuple(game.agent_goals[i] for i in members),
        tuple(game.endowment[i] for i in members),
        game.requirement,
    )
    return ReductionOutput(restricted, "esck", {"k": len(members)}, inverted=False)


def _extend_resource(game: Game, en_of, req_of) -> Game:
    """Append one resource; ``en_of(i)`` and ``req_of(g)`` give the new column."""
    name = _fresh(game.resources, "r'")
    return Game(
        game.agents,
        game.goals,
        game.resources + (name,),
        game.agent_goals,
        tuple(game.endowment[i] + (en_of(i),) for i in range(game.num_agents)),
        tuple(game.requirement[g] + (req_of(g),) for g in range(game.num_goals)),
    )


def sc_to_nr(game: Game, coalition) -> ReductionOutput:
    """Add a resource every agent holds and no goal uses; it is necessary
    exactly when the coalition cannot succeed at all."""
    c = check_coalition(game, coalition, require_non_empty=True)
    extended = _extend_resource(game, lambda i: 1, lambda g: Quantity(0))
    return ReductionOutput(
        extended,
        "nr",
        {"coalition": c, "resource": game.num_resources},
        inverted=True,
    )


def sc_to_snr(game: Game, coalition) -> ReductionOutput:
    """Add a resource charged once per chosen goal and amply endowed; every
    successful set consumes it, so strict necessity equals success."""
    c = check_coalition(game, coalition, require_non_empty=True)
    m = game.num_goals
    extended = _extend_resource(game, lambda i: m, lambda g: Quantity(1))
    return ReductionOutput(
        extended,
        "snr",
        {"coalition": c, "resource": game.num_resources},
        inverted=False,
    )


def sc_to_cgro(game: Game, coalition, *, include_in_agent_goals: bool = False) -> ReductionOutput:
    """Add a reference goal consuming a fresh resource that exactly matches
    the coalition's new endowment; any original successful set uses none of
    it and therefore beats the reference.

    With ``include_in_agent_goals`` the new goal also satisfies every
    coalition member, which is what makes the reference goal set successful
    (the construction without it never passes the reference-set
    precondition for a non-empty coalition; the verifier exercises both to
    record that).
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    n, m, t = game.num_agents, game.num_goals, game.num_resources
    goal_name = _fresh(game.goals, "g'")
    res_name = _fresh(game.resources, "r'")
    agent_goals = tuple(
        gs | {m} if include_in_agent_goals and i in c else gs
        for i, gs in enumerate(game.agent_goals)
    )
    endowment = tuple(
        game.endowment[i] + (1 if i in c else 0,) for i in range(n)
    )
    requirement = tuple(game.requirement[g] + (Quantity(0),) for g in range(m))
    requirement += (tuple(Quantity(0) for _ in range(t)) + (Quantity(len(c)),),)
    extended = Game(
        game.agents,
        game.goals + (goal_name,),
        game.resources + (res_name,),
        agent_goals,
        endowment,
        requirement,
    )
    return ReductionOutput(
        extended,
        "cgro",
        {"coalition": c, "goal_set": frozenset({m}), "resource": t},
        inverted=True,
    )


def sc_to_rpegs(game: Game, coalition) -> ReductionOutput:
    """Add an unachievable reference goal (infinite on every old resource)
    plus a fresh resource on which it is just out of reach; any original
    successful set undercuts the reference everywhere, refuting efficiency."""
    c = check_coalition(game, coalition, require_non_empty=True)
    n, m, t = game.num_agents, game.num_goals, game.num_resources
    goal_name = _fresh(game.goals, "g'")
    res_name = _fresh(game.resources, "r'")
    endowment = tuple(
        game.endowment[i] + (m if i in c else 0,) for i in range(n)
    )
    requirement = tuple(game.requirement[g] + (Quantity(len(c)),) for g in range(m))
    requirement += (tuple(INF for _ in range(t)) + (Quantity(m * len(c) + 1),),)
    extended = Game(
        game.agents,
        game.goals + (goal_name,),
        game.resources + (res_name,),
        game.agent_goals,
        endowment,
        requirement,
    )
    return ReductionOutput(
        extended,
        "rpegs",
        {"coalition": c, "goal_set": frozenset({m})},
        inverted=True,
    )


def sc_to_scrb(game: Game, coalition) -> ReductionOutput:
    """Add a resource charged ``len(coalition)`` per goal but capped one
    short of that in the bound, so no successful set fits the bound.

    The claimed equivalence's NO-to-YES direction only holds under the
    vacuous-YES convention for unsuccessful coalitions (see
    ``problems.scrb``); the plain direction "source YES means target NO"
    holds unconditionally.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    m = game.num_goals
    extended = _extend_resource(
        game, lambda i: m if i in c else 0, lambda g: Quantity(len(c))
    )
    bound = tuple(Quantity(1) for _ in range(game.num_resources)) + (Quantity(len(c) - 1),)
    return ReductionOutput(
        extended,
        "scrb",
        {"coalition": c, "bound": bound},
        inverted=True,
    )


def sc_to_cc(game: Game, coalition) -> ReductionOutput:
    """Pit the coalition against itself under a bound generous enough for
    any single successful set: a successful set paired with itself has a
    bound-respecting union, so a conflict verdict refutes success."""
    c = check_coalition(game, coalition, require_non_empty=True)
    m = game.num_goals
    extended = _extend_resource(
        game, lambda i: m if i in c else 0, lambda g: Quantity(len(c))
    )
    bound = tuple(INF for _ in range(game.num_resources)) + (Quantity(m * len(c)),)
    return ReductionOutput(
        extended,
        "cc",
        {"coalition": c, "coalition2": c, "bound": bound},
        inverted=True,
    )


def is_to_esck_g1(graph: Graph, k: int) -> ReductionOutput:
    """Encode "has an independent set of size k" as a single-goal game where
    some size-k coalition succeeds.

    One agent per vertex and one resource per edge; the lone goal needs
    ``k - 1`` of every resource while an agent supplies 1 of an edge's
    resource exactly when its vertex avoids that edge.  A size-k coalition
    covers an edge's requirement iff at most one member touches the edge,
    so exactly the independent sets succeed.  ``k = 1`` has no meaningful
    requirement level and maps to a trivially-YES instance, matching the
    fact that any single vertex is independent.
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= graph.num_vertices):
        raise InputError(f"k={k!r} out of range 1..{graph.num_vertices}")
    if k == 1:
        game = Game(("a1",), ("g",), ("r0",), (frozenset({0}),), ((0,),), ((0,),))
        return ReductionOutput(game, "esck", {"k": 1}, inverted=False)
    n, m = graph.num_vertices, graph.num_edges
    agents = tuple(f"a{i}" for i in range(1, n + 1))
    if m == 0:
        # No edges constrain anything; keep the game well-formed with one
        # slack resource.
        resources = ("r0",)
        endowment = tuple((0,) for _ in range(n))
        requirement = ((Quantity(0),),)
    else:
        resources = tuple(f"r{j}" for j in range(1, m + 1))
        endowment = tuple(
            tuple(0 if i in (u, v) else 1 for u, v in graph.edges) for i in range(n)
        )
        requirement = (tuple(Quantity(k - 1) for _ in range(m)),)
    game = Game(
        agents,
        ("g",),
        resources,
        tuple(frozenset({0}) for _ in range(n)),
        endowment,
        requirement,
    )
    return ReductionOutput(game, "esck", {"k": k}, inverted=False)


def gen_counterexample(k: int, num_agents: int, num_goals: int = 1, num_resources: int = 1):
    """A game where every goal subset satisfies all agents at once.

    All agents share every goal, goals are free and endowments ample, so
    any k agents form a successful coalition; yet the set of agents
    satisfied by any non-empty goal subset is the full agent set, whose
    size exceeds ``k``.  Returns ``(game, k)``.
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and k >= 1):
        raise InputError(f"k={k!r} must be a positive integer")
    if not (isinstance(num_agents, int) and num_agents > k):
        raise InputError(f"num_agents={num_agents!r} must exceed k={k}")
    if num_goals < 1 or num_resources < 1:
        raise InputError("num_goals and num_resources must be positive")
    game = Game(
        tuple(f"a{i}" for i in range(1, num_agents + 1)),
        tuple(f"g{j}" for j in range(1, num_goals + 1)),
        tuple(f"r{j}" for j in range(1, num_resources + 1)),
        tuple(frozenset(range(num_goals)) for _ in range(num_agents)),
        tuple(tuple(1 for _ in range(num_resources)) for _ in range(num_agents)),
        tuple(tuple(Quantity(0) for _ in range(num_resources)) for _ in range(num_goals)),
    )
    return game, k


def buggy_esck(game: Game, k: int) -> bool:
    """The goal-subset-first procedure for "exists a successful coalition of
    size k", kept verbatim as a fixture: for each goal subset, collect *all*
    agents it satisfies, skip unless exactly k of them, then test
    feasibility.  Incorrect whenever a goal subset satisfies a strict
    superset of some viable size-k coalition."""
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= game.num_agents):
        raise InputError(f"k={k!r} out of range 1..{game.num_agents}")
    for combo in iter_index_subsets(game.num_goals):
        chosen = frozenset(combo)
        satisfied = frozenset(
            i for i in range(game.num_agents) if game.agent_goals[i] & chosen
        )
        if len(satisfied) != k:
            continue
        if is_feasible(game, chosen, satisfied):
            return True
    return False
