"""Deciders for the ten coalition decision problems.

Each problem is answered either by direct enumeration of candidate goal
sets (and coalitions), or by compiling to 0/1 integer programs and running
the feasibility engine.  Where a search can be capped, it only visits goal
sets no larger than the coalition: a successful set can always be thinned
to one goal per member without losing satisfaction or feasibility, so a
witness of that size exists whenever any witness does.  Universally
quantified problems over the whole family of successful goal sets (the
conflict problem, in particular) enumerate it in full.

Verdicts come with replayable witnesses where an object certifies them:

=========  ==============================================================
problem    witness
=========  ==============================================================
sc         YES: successful goal set
esck       YES: (coalition, goal set)
maxc       NO: (successful proper superset, its goal set)
maxsc      YES: goal set for the coalition; NO: superset pair or nothing
nr         NO: successful goal set using none of the resource
snr        YES: successful goal set; NO: one avoiding the resource, if any
cgro       NO: successful goal set strictly cheaper in the resource
rpegs      NO: successful goal set undercutting the reference
scrb       YES: successful goal set within the bound
cc         NO: (goal set, goal set) pair that is not in conflict
=========  ==============================================================

Witness ties break toward the first candidate in enumeration order
(smallest goal sets first, lexicographic within a size; the integer-program
backend reports its solver's first assignment instead).  Answers are
deterministic per backend.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from . import ilp
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
    iter_index_subsets,
    respects,
)


class Backend(enum.Enum):
    ENUMERATION = "enum"
    INTEGER_PROGRAM = "ilp"


@dataclass(frozen=True)
class Answer:
    """A verdict plus, when one exists, an object that certifies it."""

    verdict: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.verdict


def _as_backend(backend) -> Backend:
    if isinstance(backend, Backend):
        return backend
    try:
        return Backend(backend)
    except ValueError:
        raise InputError(f"unknown backend {backend!r}; expected 'enum' or 'ilp'") from None


def _successful_subsets(
    game: Game,
    coalition: frozenset,
    pool: Optional[list] = None,
    max_size: Optional[int] = None,
) -> Iterator[frozenset]:
    """Successful goal sets drawn from ``pool``, smallest first.

    Bitmask-based fast path shared by the enumeration backends; semantics
    match filtering ``model.enumerate_succ`` to the pool.
    """
    member_masks = []
    for i in coalition:
        mask = 0
        for g in game.agent_goals[i]:
            mask |= 1 << g
        if mask == 0:
            return
        member_masks.append(mask)
    pool = sorted(range(game.num_goals)) if pool is None else sorted(pool)
    limit = len(pool) if max_size is None else min(max_size, len(pool))
    en = [sum(game.endowment[i][r] for i in coalition) for r in range(game.num_resources)]
    req = {g: [q.value for q in game.requirement[g]] for g in pool}
    for size in range(1, limit + 1):
        for combo in itertools.combinations(pool, size):
            mask = 0
            for g in combo:
                mask |= 1 << g
            if not all(mask & mm for mm in member_masks):
                continue
            feasible = True
            for r in range(game.num_resources):
                total = 0
                for g in combo:
                    v = req[g][r]
                    if v is None:
                        feasible = False
                        break
                    total += v
                if not feasible or total > en[r]:
                    feasible = False
                    break
            if feasible:
                yield frozenset(combo)


def _first(it: Iterator) -> Optional[frozenset]:
    return next(it, None)


def sc(game: Game, coalition, backend=Backend.ENUMERATION) -> Answer:
    """Is the coalition successful?"""
    c = check_coalition(game, coalition, require_non_empty=True)
    if _as_backend(backend) is Backend.ENUMERATION:
        gs = _first(_successful_subsets(game, c, max_size=len(c)))
        return Answer(gs is not None, gs)
    prog = ilp.build_fcip(game, c)
    assignment = ilp.feasible(prog)
    if assignment is None:
        return Answer(False)
    return Answer(True, ilp.selected_indices(prog, assignment, "goal"))


def esck(game: Game, k: int, backend=Backend.ENUMERATION) -> Answer:
    """Does some coalition of size exactly ``k`` succeed?

    The enumeration backend iterates coalitions, not goal subsets: picking a
    goal subset first and reading off the agents it satisfies misses
    coalitions strictly contained in that satisfied set (see
    ``reductions.buggy_esck`` for the broken variant this avoids).
    """
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= game.num_agents):
        raise InputError(f"k={k!r} out of range 1..{game.num_agents}")
    if _as_backend(backend) is Backend.ENUMERATION:
        for combo in itertools.combinations(range(game.num_agents), k):
            c = frozenset(combo)
            gs = _first(_successful_subsets(game, c, max_size=k))
            if gs is not None:
                return Answer(True, (c, gs))
        return Answer(False)
    cq = ilp.compile_esck(game, k)
    assignment = ilp.feasible(cq.programs[0])
    if assignment is None:
        return Answer(False)
    prog = cq.programs[0]
    return Answer(
        True,
        (ilp.selected_indices(prog, assignment, "agent"), ilp.selected_indices(prog, assignment, "goal")),
    )


def maxc(game: Game, coalition) -> Answer:
    """Is every proper superset of the coalition unsuccessful?

    Enumeration over all proper supersets; exponential in the number of
    non-members, intended for small instances.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    others = sorted(set(range(game.num_agents)) - c)
    for added in iter_index_subsets(len(others)):
        superset = c | {others[j] for j in added}
        inner = sc(game, superset)
        if inner.verdict:
            return Answer(False, (superset, inner.witness))
    return Answer(True)


def maxsc(game: Game, coalition) -> Answer:
    """Is the coalition successful while no proper superset is?"""
    own = sc(game, coalition)
    if not own.verdict:
        return Answer(False)
    above = maxc(game, coalition)
    if not above.verdict:
        return Answer(False, above.witness)
    return Answer(True, own.witness)


def _zero_requirement_pool(game: Game, r: int) -> list:
    return [g for g in range(game.num_goals) if game.requirement[g][r] == ZERO]


def nr(game: Game, coalition, resource: int, backend=Backend.ENUMERATION) -> Answer:
    """Does every successful goal set consume the resource?

    Both backends restrict the goal pool to goals free of the resource and
    test success there; a hit is exactly a successful set with zero usage.
    Vacuously YES for unsuccessful coalitions.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    r = check_resource(game, resource)
    if _as_backend(backend) is Backend.ENUMERATION:
        gs = _first(_successful_subsets(game, c, pool=_zero_requirement_pool(game, r), max_size=len(c)))
        if gs is not None:
            return Answer(False, gs)
        return Answer(True)
    cq = ilp.compile_nr(game, c, r)
    assignment = ilp.feasible(cq.programs[0])
    if assignment is None:
        return Answer(True)
    return Answer(False, ilp.selected_indices(cq.programs[0], assignment, "goal"))


def snr(game: Game, coalition, resource: int, backend=Backend.ENUMERATION) -> Answer:
    """Is the coalition successful and the resource consumed by all its options?"""
    c = check_coalition(game, coalition, require_non_empty=True)
    r = check_resource(game, resource)
    if _as_backend(backend) is Backend.ENUMERATION:
        own = sc(game, c)
        if not own.verdict:
            return Answer(False)
        avoiding = _first(_successful_subsets(game, c, pool=_zero_requirement_pool(game, r), max_size=len(c)))
        if avoiding is not None:
            return Answer(False, avoiding)
        return Answer(True, own.witness)
    fcip = ilp.build_fcip(game, c)
    first = ilp.feasible(fcip)
    if first is None:
        return Answer(False)
    cq = ilp.compile_nr(game, c, r)
    avoiding = ilp.feasible(cq.programs[0])
    if avoiding is not None:
        return Answer(False, ilp.selected_indices(cq.programs[0], avoiding, "goal"))
    return Answer(True, ilp.selected_indices(fcip, first, "goal"))


def cgro(game: Game, coalition, goal_set, resource: int, backend=Backend.ENUMERATION) -> Answer:
    """Does the reference goal set use the least of the resource among all
    successful goal sets?  The reference must itself be successful."""
    c = check_coalition(game, coalition, require_non_empty=True)
    g0 = check_goal_set(game, goal_set)
    r = check_resource(game, resource)
    if not is_successful_goalset(game, g0, c):
        raise PreconditionError("reference goal set is not successful for the coalition")
    beta = goalset_requirement(game, g0, r)
    if beta == ZERO:
        return Answer(True)
    if _as_backend(backend) is Backend.ENUMERATION:
        for gs in _successful_subsets(game, c, max_size=len(c)):
            if goalset_requirement(game, gs, r) < beta:
                return Answer(False, gs)
        return Answer(True)
    cq = ilp.compile_cgro(game, c, g0, r)
    if not cq.programs:
        return Answer(True)
    assignment = ilp.feasible(cq.programs[0])
    if assignment is None:
        return Answer(True)
    return Answer(False, ilp.selected_indices(cq.programs[0], assignment, "goal"))


def rpegs(game: Game, coalition, goal_set, backend=Backend.ENUMERATION) -> Answer:
    """Is the reference goal set efficient for the coalition, in that no
    successful goal set needs at most as much of every resource and strictly
    less of one?  The reference itself need not be successful."""
    c = check_coalition(game, coalition, require_non_empty=True)
    g0 = check_goal_set(game, goal_set)
    if _as_backend(backend) is Backend.ENUMERATION:
        for gs in _successful_subsets(game, c, max_size=len(c)):
            if dominates(game, gs, g0):
                return Answer(False, gs)
        return Answer(True)
    cq = ilp.compile_rpegs(game, c, g0)
    for prog in cq.programs:
        assignment = ilp.feasible(prog)
        if assignment is not None:
            return Answer(False, ilp.selected_indices(prog, assignment, "goal"))
    return Answer(True)


def scrb(game: Game, coalition, bound, backend=Backend.ENUMERATION, *, vacuous_yes: bool = False) -> Answer:
    """Can the coalition succeed within the resource bound?

    Plain existential reading by default: an unsuccessful coalition answers
    NO.  With ``vacuous_yes`` an unsuccessful coalition answers YES instead;
    the reduction verifier uses that convention.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    b = check_bound(game, bound)
    if _as_backend(backend) is Backend.ENUMERATION:
        successful = False
        for gs in _successful_subsets(game, c, max_size=len(c)):
            successful = True
            if respects(game, gs, b):
                return Answer(True, gs)
        if vacuous_yes and not successful:
            return Answer(True)
        return Answer(False)
    if vacuous_yes and ilp.feasible(ilp.build_fcip(game, c)) is None:
        return Answer(True)
    cq = ilp.compile_scrb(game, c, b)
    assignment = ilp.feasible(cq.programs[0])
    if assignment is None:
        return Answer(False)
    return Answer(True, ilp.selected_indices(cq.programs[0], assignment, "goal"))


def cc(game: Game, coalition1, coalition2, bound, backend=Backend.ENUMERATION) -> Answer:
    """Are the two coalitions in conflict under the bound: does every pair of
    successful goal sets consist of two individually affordable sets whose
    union is not?  Vacuously YES when either coalition cannot succeed."""
    c1 = check_coalition(game, coalition1, require_non_empty=True)
    c2 = check_coalition(game, coalition2, require_non_empty=True)
    b = check_bound(game, bound)
    if _as_backend(backend) is Backend.ENUMERATION:
        first_family = list(_successful_subsets(game, c1))
        second_family = list(_successful_subsets(game, c2))
        for g1 in first_family:
            for g2 in second_family:
                if not in_conflict(game, g1, g2, b):
                    return Answer(False, (g1, g2))
        return Answer(True)
    cq = ilp.compile_cc(game, c1, c2, b)
    for prog in cq.programs:
        assignment = ilp.feasible(prog)
        if assignment is not None:
            return Answer(
                False,
                (ilp.selected_indices(prog, assignment, "goal"), ilp.selected_indices(prog, assignment, "goal2")),
            )
    return Answer(True)


PROBLEMS = ("sc", "esck", "maxc", "maxsc", "nr", "snr", "cgro", "rpegs", "scrb", "cc")
ENUMERATION_ONLY = ("maxc", "maxsc")


def solve(
    game: Game,
    problem: str,
    backend=Backend.ENUMERATION,
    *,
    coalition=None,
    coalition2=None,
    k: Optional[int] = None,
    resource: Optional[int] = None,
    goal_set=None,
    bound=None,
    vacuous_scrb_yes: bool = False,
) -> Answer:
    """Dispatch a named problem to its decider, validating argument presence."""
    backend = _as_backend(backend)
    if problem not in PROBLEMS:
        raise InputError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")
    if problem in ENUMERATION_ONLY and backend is not Backend.ENUMERATION:
        raise InputError(f"{problem} supports only the enumeration backend")

    def need(name, value):
        if value is None:
            raise InputError(f"problem {problem} requires {name}")
        return value

    if problem == "sc":
        return sc(game, need("a coalition", coalition), backend)
    if problem == "esck":
        return esck(game, need("k", k), backend)
    if problem == "maxc":
        return maxc(game, need("a coalition", coalition))
    if problem == "maxsc":
        return maxsc(game, need("a coalition", coalition))
    if problem == "nr":
        return nr(game, need("a coalition", coalition), need("a resource", resource), backend)
    if problem == "snr":
        return snr(game, need("a coalition", coalition), need("a resource", resource), backend)
    if problem == "cgro":
        return cgro(
            game,
            need("a coalition", coalition),
            need("a goal set", goal_set),
            need("a resource", resource),
            backend,
        )
    if problem == "rpegs":
        return rpegs(game, need("a coalition", coalition), need("a goal set", goal_set), backend)
    if problem == "scrb":
        return scrb(game, need("a coalition", coalition), need("a bound", bound), backend, vacuous_yes=vacuous_scrb_yes)
    return cc(
        game,
        need("a coalition", coalition),
        need("a second coalition", coalition2),
        need("a bound", bound),
        backend,
    )
