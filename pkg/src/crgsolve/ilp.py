"""0/1 integer feasibility engine and compilers from decision problems to it.

The engine decides satisfiability of linear constraint systems over binary
variables by exhaustive backtracking with bound propagation: a partial
assignment is abandoned as soon as the optimistic completion of some
constraint can no longer reach its right-hand side.  Branching follows
declaration order and tries value 1 before 0, so satisfiable programs built
from a successful coalition surface a witness quickly.

Compilers translate each decision problem into one or more programs over
goal variables (``x_g`` = goal achieved), agent variables (``y_i`` = agent
participates) and, for the conflict problem, a second copy of both plus
union variables ``z_g`` that linearize ``z = x or X``.  Goals with an
infinite requirement can never be achieved from finite endowments, so their
variables are pinned to 0 and no infinite coefficient ever enters a
constraint.  Strict inequalities are normalized to ``<= rhs - 1`` over the
integers, and any constraint against an infinite bound is dropped as
trivially satisfied.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    ZERO,
    Game,
    InputError,
    PreconditionError,
    check_bound,
    check_coalition,
    check_goal_set,
    check_resource,
    goalset_requirement,
    is_successful_goalset,
)


class Cmp(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coefficients[v] * value[v]) <cmp> rhs`` over 0/1 variables."""

    coefficients: tuple
    comparator: Cmp
    rhs: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        for c in self.coefficients:
            if isinstance(c, bool) or not isinstance(c, int):
                raise InputError(f"constraint coefficient {c!r} is not an integer")
        if isinstance(self.rhs, bool) or not isinstance(self.rhs, int):
            raise InputError(f"constraint rhs {self.rhs!r} is not an integer")

    def satisfied_by(self, assignment: Sequence[int]) -> bool:
        lhs = sum(c * v for c, v in zip(self.coefficients, assignment))
        if self.comparator is Cmp.LE:
            return lhs <= self.rhs
        if self.comparator is Cmp.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class IntegerProgram:
    """A 0/1 feasibility program: constraints plus pre-fixed variables.

    ``var_labels``, when present, names each variable as a ``(kind, index)``
    pair (e.g. ``("goal", 2)``) so callers can read goal sets and coalitions
    back out of a satisfying assignment.
    """

    num_vars: int
    constraints: tuple
    fixed: tuple = ()
    var_labels: tuple = ()

    def __post_init__(self) -> None:
        if not (isinstance(self.num_vars, int) and self.num_vars >= 0):
            raise InputError(f"num_vars must be a non-negative integer, got {self.num_vars!r}")
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for con in self.constraints:
            if len(con.coefficients) != self.num_vars:
                raise InputError(
                    f"constraint has {len(con.coefficients)} coefficients, expected {self.num_vars}"
                )
        entries = tuple(tuple(pair) for pair in self.fixed)
        seen = set()
        for v, val in entries:
            if not (isinstance(v, int) and 0 <= v < self.num_vars):
                raise InputError(f"fixed variable {v!r} out of range")
            if val not in (0, 1):
                raise InputError(f"fixed value for variable {v} must be 0 or 1, got {val!r}")
            if v in seen:
                raise InputError(f"variable {v} fixed twice")
            seen.add(v)
        object.__setattr__(self, "fixed", tuple(sorted(entries)))
        object.__setattr__(self, "var_labels", tuple(tuple(lb) for lb in self.var_labels))
        if self.var_labels and len(self.var_labels) != self.num_vars:
            raise InputError("var_labels must be empty or name every variable")


def feasible(ip: IntegerProgram) -> Optional[tuple]:
    """A satisfying 0/1 assignment (full, including fixed variables), or None.

    Deterministic: free variables are branched in declaration order, value 1
    before 0, so the same program always yields the same assignment.
    """
    fixed = dict(ip.fixed)
    order = [v for v in range(ip.num_vars) if v not in fixed]
    ncons = len(ip.constraints)

    # Contribution of the fixed variables, then suffix bounds over the free
    # ones: with 0/1 values a coefficient contributes min(c, 0)..max(c, 0).
    base = []
    min_suffix = []
    max_suffix = []
    for con in ip.constraints:
        coef = con.coefficients
        base.append(sum(coef[v] * val for v, val in fixed.items()))
        lo = [0] * (len(order) + 1)
        hi = [0] * (len(order) + 1)
        for d in range(len(order) - 1, -1, -1):
            c = coef[order[d]]
            lo[d] = lo[d + 1] + min(c, 0)
            hi[d] = hi[d + 1] + max(c, 0)
        min_suffix.append(lo)
        max_suffix.append(hi)

    def viable(cur, depth) -> bool:
        for j in range(ncons):
            lo = cur[j] + min_suffix[j][depth]
            hi = cur[j] + max_suffix[j][depth]
            cmp = ip.constraints[j].comparator
            rhs = ip.constraints[j].rhs
            if cmp is Cmp.LE:
                if lo > rhs:
                    return False
            elif cmp is Cmp.GE:
                if hi < rhs:
                    return False
            else:
                if rhs < lo or rhs > hi:
                    return False
        return True

    values: dict = {}

    def search(cur, depth) -> bool:
        if not viable(cur, depth):
            return False
        if depth == len(order):
            return True
        v = order[depth]
        for val in (1, 0):
            if val:
                nxt = [cur[j] + ip.constraints[j].coefficients[v] for j in range(ncons)]
            else:
                nxt = cur
            values[v] = val
            if search(nxt, depth + 1):
                return True
        del values[v]
        return False

    if not search(base, 0):
        return None
    out = [0] * ip.num_vars
    for v, val in fixed.items():
        out[v] = val
    for v, val in values.items():
        out[v] = val
    return tuple(out)


def format_program(ip: IntegerProgram) -> str:
    """Plain-text dump of a program, one constraint per line. Debug aid only."""

    def vname(v: int) -> str:
        if ip.var_labels:
            kind, idx = ip.var_labels[v]
            return f"{kind}{idx}"
        return f"v{v}"

    lines = [f"binary variables: {ip.num_vars}"]
    for v, val in ip.fixed:
        lines.append(f"{vname(v)} = {val}")
    for con in ip.constraints:
        terms = [f"{c}*{vname(v)}" for v, c in enumerate(con.coefficients) if c != 0]
        lhs = " + ".join(terms) if terms else "0"
        lines.append(f"{lhs} {con.comparator.value} {con.rhs}")
    return "\n".join(lines)


class Polarity(enum.Enum):
    """How the feasibility of compiled programs maps to a YES/NO verdict."""

    ANY_FEASIBLE_YES = "any-feasible-yes"
    ANY_FEASIBLE_NO = "any-feasible-no"
    # First program feasible and every later one infeasible means YES.
    FEASIBLE_THEN_INFEASIBLE = "feasible-then-infeasible"


@dataclass(frozen=True)
class CompiledQuery:
    programs: tuple
    polarity: Polarity


def decide_compiled(cq: CompiledQuery) -> bool:
    """Apply a compiled query's polarity rule through the feasibility engine."""
    if cq.polarity is Polarity.ANY_FEASIBLE_YES:
        return any(feasible(p) is not None for p in cq.programs)
    if cq.polarity is Polarity.ANY_FEASIBLE_NO:
        return all(feasible(p) is None for p in cq.programs)
    first, rest = cq.programs[0], cq.programs[1:]
    return feasible(first) is not None and all(feasible(p) is None for p in rest)


def selected_indices(ip: IntegerProgram, assignment: Sequence[int], kind: str) -> frozenset:
    """Indices of the given label kind set to 1 in an assignment."""
    return frozenset(
        idx for v, (k, idx) in enumerate(ip.var_labels) if k == kind and assignment[v] == 1
    )


def _finite_req(game: Game, g: int, r: int) -> int:
    v = game.requirement[g][r].value
    return 0 if v is None else v


def _unachievable_goals(game: Game) -> list:
    return [
        g
        for g in range(game.num_goals)
        if any(not q.is_finite for q in game.requirement[g])
    ]


def build_base_ip(game: Game) -> IntegerProgram:
    """The shared feasibility program over goal and agent variables.

    One covering constraint per agent (a participating agent needs at least
    one of its goals achieved) and one budget constraint per resource
    (achieved goals consume no more than participating agents supply).  Note
    the all-zero assignment always satisfies it; non-triviality comes from
    the caller fixing a non-empty coalition or requiring a coalition size.
    """
    n, m, t = game.num_agents, game.num_goals, game.num_resources
    num_vars = m + n
    labels = [("goal", g) for g in range(m)] + [("agent", i) for i in range(n)]
    constraints = []
    for i in range(n):
        coef = [0] * num_vars
        for g in game.agent_goals[i]:
            coef[g] = 1
        coef[m + i] = -1
        constraints.append(LinearConstraint(tuple(coef), Cmp.GE, 0))
    for r in range(t):
        coef = [0] * num_vars
        for g in range(m):
            coef[g] = _finite_req(game, g, r)
        for i in range(n):
            coef[m + i] = -game.endowment[i][r]
        constraints.append(LinearConstraint(tuple(coef), Cmp.LE, 0))
    fixed = tuple((g, 0) for g in _unachievable_goals(game))
    return IntegerProgram(num_vars, tuple(constraints), fixed, tuple(labels))


def build_fcip(game: Game, coalition) -> IntegerProgram:
    """The base program with agent variables pinned to a fixed non-empty
    coalition; satisfiable exactly when that coalition is successful."""
    c = check_coalition(game, coalition, require_non_empty=True)
    base = build_base_ip(game)
    m = game.num_goals
    fixed = dict(base.fixed)
    for i in range(game.num_agents):
        fixed[m + i] = 1 if i in c else 0
    return IntegerProgram(base.num_vars, base.constraints, tuple(fixed.items()), base.var_labels)


def _with_constraints(ip: IntegerProgram, extra) -> IntegerProgram:
    return IntegerProgram(ip.num_vars, ip.constraints + tuple(extra), ip.fixed, ip.var_labels)


def _goal_usage_coeffs(game: Game, r: int, num_vars: int) -> list:
    coef = [0] * num_vars
    for g in range(game.num_goals):
        coef[g] = _finite_req(game, g, r)
    return coef


def compile_esck(game: Game, k: int) -> CompiledQuery:
    """Existence of a successful coalition of exactly ``k`` agents."""
    if not (isinstance(k, int) and not isinstance(k, bool) and 1 <= k <= game.num_agents):
        raise InputError(f"k={k!r} out of range 1..{game.num_agents}")
    base = build_base_ip(game)
    m = game.num_goals
    coef = [0] * base.num_vars
    for i in range(game.num_agents):
        coef[m + i] = 1
    prog = _with_constraints(base, [LinearConstraint(tuple(coef), Cmp.EQ, k)])
    return CompiledQuery((prog,), Polarity.ANY_FEASIBLE_YES)


def compile_nr(game: Game, coalition, r: int) -> CompiledQuery:
    """Necessity of resource ``r``: pin every goal that consumes it to 0 and
    ask whether the coalition can still succeed; feasible means not necessary."""
    check_resource(game, r)
    fcip = build_fcip(game, coalition)
    fixed = dict(fcip.fixed)
    for g in range(game.num_goals):
        if game.requirement[g][r] > ZERO:
            fixed[g] = 0
    prog = IntegerProgram(fcip.num_vars, fcip.constraints, tuple(fixed.items()), fcip.var_labels)
    return CompiledQuery((prog,), Polarity.ANY_FEASIBLE_NO)


def compile_snr(game: Game, coalition, r: int) -> CompiledQuery:
    """Strict necessity: the coalition succeeds at all, and not without ``r``."""
    fcip = build_fcip(game, coalition)
    nr_prog = compile_nr(game, coalition, r).programs[0]
    return CompiledQuery((fcip, nr_prog), Polarity.FEASIBLE_THEN_INFEASIBLE)


def compile_cgro(game: Game, coalition, goal_set, r: int) -> CompiledQuery:
    """Optimal usage of ``r`` by ``goal_set``: search for a successful goal
    set strictly cheaper in ``r``; feasible means not optimal.

    A zero reference usage compiles to no programs at all: requirements are
    non-negative, so nothing can beat it.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    g0 = check_goal_set(game, goal_set)
    check_resource(game, r)
    if not is_successful_goalset(game, g0, c):
        raise PreconditionError("reference goal set is not successful for the coalition")
    beta = goalset_requirement(game, g0, r).value
    if beta == 0:
        return CompiledQuery((), Polarity.ANY_FEASIBLE_NO)
    fcip = build_fcip(game, c)
    coef = _goal_usage_coeffs(game, r, fcip.num_vars)
    prog = _with_constraints(fcip, [LinearConstraint(tuple(coef), Cmp.LE, beta - 1)])
    return CompiledQuery((prog,), Polarity.ANY_FEASIBLE_NO)


def compile_scrb(game: Game, coalition, bound) -> CompiledQuery:
    """Success within a resource bound: cap each resource's usage; infinite
    bounds impose nothing and are dropped."""
    b = check_bound(game, bound)
    fcip = build_fcip(game, coalition)
    extra = []
    for r in range(game.num_resources):
        if b[r].is_finite:
            coef = _goal_usage_coeffs(game, r, fcip.num_vars)
            extra.append(LinearConstraint(tuple(coef), Cmp.LE, b[r].value))
    return CompiledQuery((_with_constraints(fcip, extra),), Polarity.ANY_FEASIBLE_YES)


def compile_rpegs(game: Game, coalition, goal_set) -> CompiledQuery:
    """Efficiency of a reference goal set: one program per resource searches
    for a successful set using no more of anything and strictly less of that
    resource; any hit refutes efficiency.

    Comparisons against an infinite reference usage are dropped: achievable
    goal sets only ever consume finite amounts.
    """
    c = check_coalition(game, coalition, require_non_empty=True)
    g0 = check_goal_set(game, goal_set)
    beta = [goalset_requirement(game, g0, r) for r in range(game.num_resources)]
    fcip = build_fcip(game, c)
    programs = []
    for strict_r in range(game.num_resources):
        extra = []
        for r in range(game.num_resources):
            if not beta[r].is_finite:
                continue
            coef = _goal_usage_coeffs(game, r, fcip.num_vars)
            rhs = beta[r].value - 1 if r == strict_r else beta[r].value
            extra.append(LinearConstraint(tuple(coef), Cmp.LE, rhs))
        programs.append(_with_constraints(fcip, extra))
    return CompiledQuery(tuple(programs), Polarity.ANY_FEASIBLE_NO)


def compile_cc(game: Game, coalition1, coalition2, bound) -> CompiledQuery:
    """Conflict between two coalitions under a bound, as a counterexample
    search: each program looks for a pair of successful goal sets that is
    *not* in conflict, so the conflict verdict is YES only when every
    program is infeasible.

    Variable layout: goals and agents for the first coalition, a second copy
    for the other, then union variables tied to ``z = x or X``.  One program
    asks for a pair whose union respects the bound; per finite bound entry,
    two more ask for a pair where one side alone already violates it (such a
    pair fails the conflict definition outright).  Programs that would need
    an infinite bound to be exceeded are unsatisfiable and never emitted.
    """
    c1 = check_coalition(game, coalition1, require_non_empty=True)
    c2 = check_coalition(game, coalition2, require_non_empty=True)
    b = check_bound(game, bound)
    n, m, t = game.num_agents, game.num_goals, game.num_resources
    num_vars = 3 * m + 2 * n
    x0, y0, x20, y20, z0 = 0, m, m + n, 2 * m + n, 2 * m + 2 * n
    labels = (
        [("goal", g) for g in range(m)]
        + [("agent", i) for i in range(n)]
        + [("goal2", g) for g in range(m)]
        + [("agent2", i) for i in range(n)]
        + [("union", g) for g in range(m)]
    )

    core = []
    for goals_at, agents_at in ((x0, y0), (x20, y20)):
        for i in range(n):
            coef = [0] * num_vars
            for g in game.agent_goals[i]:
                coef[goals_at + g] = 1
            coef[agents_at + i] = -1
            core.append(LinearConstraint(tuple(coef), Cmp.GE, 0))
        for r in range(t):
            coef = [0] * num_vars
            for g in range(m):
                coef[goals_at + g] = _finite_req(game, g, r)
            for i in range(n):
                coef[agents_at + i] = -game.endowment[i][r]
            core.append(LinearConstraint(tuple(coef), Cmp.LE, 0))
    for g in range(m):
        for side in (x0 + g, x20 + g):
            coef = [0] * num_vars
            coef[z0 + g] = 1
            coef[side] = -1
            core.append(LinearConstraint(tuple(coef), Cmp.GE, 0))
        coef = [0] * num_vars
        coef[x0 + g] = 1
        coef[x20 + g] = 1
        coef[z0 + g] = -1
        core.append(LinearConstraint(tuple(coef), Cmp.GE, 0))

    fixed = {}
    for g in _unachievable_goals(game):
        fixed[x0 + g] = 0
        fixed[x20 + g] = 0
        fixed[z0 + g] = 0
    for i in range(n):
        fixed[y0 + i] = 1 if i in c1 else 0
        fixed[y20 + i] = 1 if i in c2 else 0
    fixed = tuple(fixed.items())

    def make(extra) -> IntegerProgram:
        return IntegerProgram(num_vars, tuple(core) + tuple(extra), fixed, tuple(labels))

    union_caps = []
    for r in range(t):
        if b[r].is_finite:
            coef = [0] * num_vars
            for g in range(m):
                coef[z0 + g] = _finite_req(game, g, r)
            union_caps.append(LinearConstraint(tuple(coef), Cmp.LE, b[r].value))
    programs = [make(union_caps)]
    for r in range(t):
        if not b[r].is_finite:
            continue
        for goals_at in (x0, x20):
            coef = [0] * num_vars
            for g in range(m):
                coef[goals_at + g] = _finite_req(game, g, r)
            programs.append(make([LinearConstraint(tuple(coef), Cmp.GE, b[r].value + 1)]))
    return CompiledQuery(tuple(programs), Polarity.ANY_FEASIBLE_NO)
