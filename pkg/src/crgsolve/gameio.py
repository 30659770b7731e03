"""Game documents, graph files, and random instance generation.

A game travels as a JSON object with string identifiers::

    {
      "agents": ["a1", "a2"],
      "goals": ["g1"],
      "resources": ["r1"],
      "agent_goals": {"a1": ["g1"]},
      "endowment": {"a1": {"r1": 1}},
      "requirement": {"g1": {"r1": 1}},
      "coalitions": {"C": ["a1"]},
      "bounds": {"b": {"r1": "inf"}},
      "goal_sets": {"G0": ["g1"]}
    }

Omitted endowment/requirement entries (or whole sections) default to 0 and
agents missing from ``agent_goals`` get an empty goal set.  Infinity is the
string token ``"inf"`` and is legal only in requirements and bounds.  The
last three sections are optional named auxiliaries for queries.  Serialized
output is canonical: object keys sorted, identifier arrays in declaration
order, every matrix entry explicit, two-space indent; parsing it back and
re-serializing is the identity.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .model import INF, Game, InputError, Quantity
from .reductions import Graph


@dataclass(frozen=True)
class GameDocument:
    """A parsed game plus its optional named coalitions, bounds and goal sets."""

    game: Game
    coalitions: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    goal_sets: dict = field(default_factory=dict)


_TOP_KEYS = {
    "agents",
    "goals",
    "resources",
    "agent_goals",
    "endowment",
    "requirement",
    "coalitions",
    "bounds",
    "goal_sets",
}


def _id_list(obj, where: str) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(s, str) for s in obj):
        raise InputError(f"{where}: expected an array of strings")
    return tuple(obj)


def _index_map(ids: tuple, where: str) -> dict:
    if len(set(ids)) != len(ids):
        raise InputError(f"{where}: duplicate identifiers")
    return {name: i for i, name in enumerate(ids)}


def _quantity(value, where: str, allow_inf: bool) -> Quantity:
    if value == "inf":
        if not allow_inf:
            raise InputError(f"{where}: infinite endowment is not allowed")
        return INF
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected a non-negative integer or \"inf\", got {value!r}")
    if value < 0:
        raise InputError(f"{where}: negative value {value}")
    return Quantity(value)


def _matrix(section, row_ids, col_index, where: str, allow_inf: bool) -> list:
    if section is None:
        section = {}
    if not isinstance(section, dict):
        raise InputError(f"{where}: expected an object")
    row_index = {name: i for i, name in enumerate(row_ids)}
    rows = [[Quantity(0)] * len(col_index) for _ in row_ids]
    for row_name, cols in section.items():
        if row_name not in row_index:
            raise InputError(f"{where}.{row_name}: unknown identifier")
        if not isinstance(cols, dict):
            raise InputError(f"{where}.{row_name}: expected an object of per-resource values")
        for col_name, value in cols.items():
            if col_name not in col_index:
                raise InputError(f"{where}.{row_name}.{col_name}: unknown resource")
            rows[row_index[row_name]][col_index[col_name]] = _quantity(
                value, f"{where}.{row_name}.{col_name}", allow_inf
            )
    return [tuple(row) for row in rows]


def _name_set(names, index, where: str) -> frozenset:
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise InputError(f"{where}: expected an array of strings")
    out = set()
    for name in names:
        if name not in index:
            raise InputError(f"{where}: unknown identifier {name!r}")
        out.add(index[name])
    return frozenset(out)


def parse_game(text: str) -> GameDocument:
    """Parse a game document, validating identifiers, shapes and values."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise InputError("top level: expected a JSON object")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise InputError(f"top level: unknown keys {sorted(unknown)}")
    for key in ("agents", "goals", "resources", "agent_goals"):
        if key not in obj:
            raise InputError(f"top level: missing required key {key!r}")

    agents = _id_list(obj["agents"], "agents")
    goals = _id_list(obj["goals"], "goals")
    resources = _id_list(obj["resources"], "resources")
    agent_index = _index_map(agents, "agents")
    goal_index = _index_map(goals, "goals")
    resource_index = _index_map(resources, "resources")

    if not isinstance(obj["agent_goals"], dict):
        raise InputError("agent_goals: expected an object")
    agent_goals = [frozenset()] * len(agents)
    for name, gs in obj["agent_goals"].items():
        if name not in agent_index:
            raise InputError(f"agent_goals.{name}: unknown agent")
        agent_goals[agent_index[name]] = _name_set(gs, goal_index, f"agent_goals.{name}")

    endowment = _matrix(obj.get("endowment"), agents, resource_index, "endowment", allow_inf=False)
    requirement = _matrix(obj.get("requirement"), goals, resource_index, "requirement", allow_inf=True)
    game = Game(agents, goals, resources, tuple(agent_goals), tuple(endowment), tuple(requirement))

    coalitions = {}
    for name, members in (obj.get("coalitions") or {}).items():
        coalitions[name] = _name_set(members, agent_index, f"coalitions.{name}")
    goal_sets = {}
    for name, members in (obj.get("goal_sets") or {}).items():
        goal_sets[name] = _name_set(members, goal_index, f"goal_sets.{name}")
    bounds = {}
    for name, per_resource in (obj.get("bounds") or {}).items():
        if not isinstance(per_resource, dict):
            raise InputError(f"bounds.{name}: expected an object of per-resource values")
        entries = [Quantity(0)] * len(resources)
        for col_name, value in per_resource.items():
            if col_name not in resource_index:
                raise InputError(f"bounds.{name}.{col_name}: unknown resource")
            entries[resource_index[col_name]] = _quantity(value, f"bounds.{name}.{col_name}", allow_inf=True)
        bounds[name] = tuple(entries)
    return GameDocument(game, coalitions, bounds, goal_sets)


def _quantity_json(q: Quantity):
    return q.value if q.is_finite else "inf"


def serialize_game(
    game: Game,
    coalitions: Optional[dict] = None,
    bounds: Optional[dict] = None,
    goal_sets: Optional[dict] = None,
) -> str:
    """Render a game (and optional named auxiliaries) in canonical form."""
    obj = {
        "agents": list(game.agents),
        "goals": list(game.goals),
        "resources": list(game.resources),
        "agent_goals": {
            game.agents[i]: [game.goals[g] for g in sorted(game.agent_goals[i])]
            for i in range(game.num_agents)
        },
        "endowment": {
            game.agents[i]: {
                game.resources[r]: game.endowment[i][r] for r in range(game.num_resources)
            }
            for i in range(game.num_agents)
        },
        "requirement": {
            game.goals[g]: {
                game.resources[r]: _quantity_json(game.requirement[g][r])
                for r in range(game.num_resources)
            }
            for g in range(game.num_goals)
        },
    }
    if coalitions:
        obj["coalitions"] = {
            name: [game.agents[i] for i in sorted(members)] for name, members in coalitions.items()
        }
    if bounds:
        obj["bounds"] = {
            name: {game.resources[r]: _quantity_json(b[r]) for r in range(game.num_resources)}
            for name, b in bounds.items()
        }
    if goal_sets:
        obj["goal_sets"] = {
            name: [game.goals[g] for g in sorted(members)] for name, members in goal_sets.items()
        }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def serialize_document(doc: GameDocument) -> str:
    return serialize_game(doc.game, doc.coalitions, doc.bounds, doc.goal_sets)


def parse_graph(text: str) -> Graph:
    """Parse an edge-list graph: a ``n m`` header, then ``m`` lines ``u v``
    with 1-based vertex indices."""
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line]
    if not lines:
        raise InputError("graph: empty input")

    def ints(no: int, line: str, count: int) -> list:
        parts = line.split()
        if len(parts) != count:
            raise InputError(f"graph line {no}: expected {count} integers, got {line!r}")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise InputError(f"graph line {no}: expected integers, got {line!r}") from None

    head_no, head = lines[0]
    n, m = ints(head_no, head, 2)
    if n < 1 or m < 0:
        raise InputError(f"graph line {head_no}: invalid sizes n={n} m={m}")
    if len(lines) - 1 != m:
        raise InputError(f"graph: header announces {m} edges but {len(lines) - 1} edge lines follow")
    edges = []
    for no, line in lines[1:]:
        u, v = ints(no, line, 2)
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"graph line {no}: vertex out of range 1..{n}")
        if u == v:
            raise InputError(f"graph line {no}: self-loop at vertex {u}")
        pair = (min(u, v) - 1, max(u, v) - 1)
        if pair in edges:
            raise InputError(f"graph line {no}: duplicate edge {u} {v}")
        edges.append(pair)
    return Graph(n, tuple(edges))


def serialize_graph(graph: Graph) -> str:
    lines = [f"{graph.num_vertices} {graph.num_edges}"]
    lines += [f"{u + 1} {v + 1}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def gen_random(
    num_agents: int,
    num_goals: int,
    num_resources: int,
    max_value: int,
    goal_density: float,
    seed: int,
) -> Game:
    """A seeded random game: endowments and requirements uniform in
    ``0..max_value``, each agent-goal membership drawn with probability
    ``goal_density``, and every agent guaranteed at least one goal."""
    if num_agents < 1 or num_goals < 1 or num_resources < 1:
        raise InputError("agent, goal and resource counts must be positive")
    if max_value < 0:
        raise InputError(f"max_value must be non-negative, got {max_value}")
    if not (0 < goal_density <= 1):
        raise InputError(f"goal_density must be in (0, 1], got {goal_density}")
    rng = random.Random(seed)
    agent_goals = []
    for _ in range(num_agents):
        members = frozenset(g for g in range(num_goals) if rng.random() < goal_density)
        if not members:
            members = frozenset({rng.randrange(num_goals)})
        agent_goals.append(members)
    endowment = tuple(
        tuple(rng.randint(0, max_value) for _ in range(num_resources)) for _ in range(num_agents)
    )
    requirement = tuple(
        tuple(Quantity(rng.randint(0, max_value)) for _ in range(num_resources))
        for _ in range(num_goals)
    )
    return Game(
        tuple(f"a{i}" for i in range(1, num_agents + 1)),
        tuple(f"g{j}" for j in range(1, num_goals + 1)),
        tuple(f"r{j}" for j in range(1, num_resources + 1)),
        tuple(agent_goals),
        endowment,
        requirement,
    )


def agent_set(game: Game, names) -> frozenset:
    index = {name: i for i, name in enumerate(game.agents)}
    out = set()
    for name in names:
        if name not in index:
            raise InputError(f"unknown agent {name!r}")
        out.add(index[name])
    return frozenset(out)


def goal_set(game: Game, names) -> frozenset:
    index = {name: i for i, name in enumerate(game.goals)}
    out = set()
    for name in names:
        if name not in index:
            raise InputError(f"unknown goal {name!r}")
        out.add(index[name])
    return frozenset(out)


def resource_index(game: Game, name: str) -> int:
    try:
        return game.resources.index(name)
    except ValueError:
        raise InputError(f"unknown resource {name!r}") from None
