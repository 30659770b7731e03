"""Solvers, integer-program backends, reduction gadgets and brute-force
oracles for coalitional resource games."""

from .model import (
    INF,
    ZERO,
    Coalition,
    Game,
    GoalSet,
    InputError,
    PreconditionError,
    Quantity,
    ResourceBound,
    coalition_endowment,
    dominates,
    enumerate_succ,
    goalset_requirement,
    in_conflict,
    is_feasible,
    is_successful_goalset,
    respects,
    satisfies,
)
from .problems import Answer, Backend, solve
from .reductions import Graph, ReductionOutput
from .gameio import GameDocument, gen_random, parse_game, parse_graph, serialize_game

__all__ = [
    "INF",
    "ZERO",
    "Answer",
    "Backend",
    "Coalition",
    "Game",
    "GameDocument",
    "GoalSet",
    "Graph",
    "InputError",
    "PreconditionError",
    "Quantity",
    "ReductionOutput",
    "ResourceBound",
    "coalition_endowment",
    "dominates",
    "enumerate_succ",
    "gen_random",
    "goalset_requirement",
    "in_conflict",
    "is_feasible",
    "is_successful_goalset",
    "parse_game",
    "parse_graph",
    "respects",
    "satisfies",
    "serialize_game",
    "solve",
]
