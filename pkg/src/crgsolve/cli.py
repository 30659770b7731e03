"""Command-line interface.

Subcommands: ``solve`` decides a problem on a game document, ``reduce``
emits a gadget game for a problem-to-problem reduction, ``gen`` produces
instances, ``verify`` runs the certification campaigns.

``solve`` prints a single JSON verdict object on stdout and exits with
0 = YES, 1 = NO, 2 = malformed input, 3 = violated problem precondition.
The other subcommands exit 0 on success and use the same error codes.
``CRG_SEED`` overrides the default seed wherever ``--seed`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import reductions, verify
from .gameio import (
    GameDocument,
    agent_set,
    gen_random,
    goal_set,
    parse_game,
    parse_graph,
    resource_index,
    serialize_game,
)
from .model import INF, Game, InputError, PreconditionError, Quantity
from .problems import PROBLEMS, solve


def _default_seed() -> int:
    env = os.environ.get("CRG_SEED")
    if env is None:
        return verify.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"CRG_SEED must be an integer, got {env!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None


def _write_or_print(text: str, output) -> bool:
    """Write to the output file if given; returns True when stdout is still free."""
    if output:
        try:
            Path(output).write_text(text)
        except OSError as e:
            raise InputError(f"cannot write {output}: {e}") from None
        return True
    sys.stdout.write(text)
    return False


def _resolve_coalition(doc: GameDocument, ref: str) -> frozenset:
    if ref in doc.coalitions:
        return doc.coalitions[ref]
    return agent_set(doc.game, [s for s in ref.split(",") if s])


def _resolve_goal_set(doc: GameDocument, ref: str) -> frozenset:
    if ref in doc.goal_sets:
        return doc.goal_sets[ref]
    return goal_set(doc.game, [s for s in ref.split(",") if s])


def _resolve_bound(doc: GameDocument, ref: str) -> tuple:
    if ref in doc.bounds:
        return doc.bounds[ref]
    entries = {}
    for part in ref.split(","):
        if not part:
            continue
        name, eq, value = part.partition("=")
        if not eq:
            raise InputError(f"bound entry {part!r} is not of the form resource=value")
        r = resource_index(doc.game, name)
        if value == "inf":
            entries[r] = INF
        else:
            try:
                entries[r] = Quantity(int(value))
            except ValueError:
                raise InputError(f"bound entry {part!r}: expected an integer or 'inf'") from None
    return tuple(entries.get(r, Quantity(0)) for r in range(doc.game.num_resources))


def _witness_json(game: Game, problem: str, witness):
    def goals(gs):
        return [game.goals[g] for g in sorted(gs)]

    def agents(c):
        return [game.agents[i] for i in sorted(c)]

    if witness is None:
        return None
    if problem in ("esck", "maxc") or (problem == "maxsc" and isinstance(witness, tuple)):
        coalition, gs = witness
        return {"agents": agents(coalition), "goals": goals(gs)}
    if problem == "cc":
        g1, g2 = witness
        return {"goals_1": goals(g1), "goals_2": goals(g2)}
    return {"goals": goals(witness)}


def _cmd_solve(args) -> int:
    doc = parse_game(_read(args.game))
    kwargs = {}
    if args.coalition is not None:
        kwargs["coalition"] = _resolve_coalition(doc, args.coalition)
    if args.coalition2 is not None:
        kwargs["coalition2"] = _resolve_coalition(doc, args.coalition2)
    if args.resource is not None:
        kwargs["resource"] = resource_index(doc.game, args.resource)
    if args.goal_set is not None:
        kwargs["goal_set"] = _resolve_goal_set(doc, args.goal_set)
    if args.bound is not None:
        kwargs["bound"] = _resolve_bound(doc, args.bound)
    if args.k is not None:
        kwargs["k"] = args.k
    answer = solve(doc.game, args.problem, args.backend, vacuous_scrb_yes=args.vacuous_scrb, **kwargs)
    result = {"problem": args.problem, "verdict": answer.verdict}
    witness = _witness_json(doc.game, args.problem, answer.witness)
    if witness is not None:
        result["witness"] = witness
    print(json.dumps(result))
    return 0 if answer.verdict else 1


_GRAPH_REDUCTIONS = {
    "is-to-sc": reductions.is_to_sc,
    "is-to-esck-g1": reductions.is_to_esck_g1,
}
_GAME_REDUCTIONS = {
    "sc-to-esck": reductions.sc_to_esck,
    "sc-to-nr": reductions.sc_to_nr,
    "sc-to-snr": reductions.sc_to_snr,
    "sc-to-cgro": reductions.sc_to_cgro,
    "sc-to-rpegs": reductions.sc_to_rpegs,
    "sc-to-scrb": reductions.sc_to_scrb,
    "sc-to-cc": reductions.sc_to_cc,
}


def _cmd_reduce(args) -> int:
    if args.kind in _GRAPH_REDUCTIONS:
        if args.graph is None or args.k is None:
            raise InputError(f"{args.kind} needs --graph and --k")
        out = _GRAPH_REDUCTIONS[args.kind](parse_graph(_read(args.graph)), args.k)
    else:
        if args.game is None or args.coalition is None:
            raise InputError(f"{args.kind} needs --game and --coalition")
        doc = parse_game(_read(args.game))
        coalition = _resolve_coalition(doc, args.coalition)
        if args.kind == "sc-to-cgro":
            out = reductions.sc_to_cgro(
                doc.game, coalition, include_in_agent_goals=args.cgro_goal_membership
            )
        else:
            out = _GAME_REDUCTIONS[args.kind](doc.game, coalition)

    coalitions, bounds, goal_sets = {}, {}, {}
    desc = {"problem": out.problem, "inverted": out.inverted}
    for key, value in out.query.items():
        if key == "coalition":
            coalitions["C"] = value
            desc["coalition"] = "C"
        elif key == "coalition2":
            coalitions["C2"] = value
            desc["coalition2"] = "C2"
        elif key == "goal_set":
            goal_sets["G0"] = value
            desc["goal_set"] = "G0"
        elif key == "bound":
            bounds["b"] = value
            desc["bound"] = "b"
        elif key == "resource":
            desc["resource"] = out.game.resources[value]
        else:
            desc[key] = value
    document = serialize_game(out.game, coalitions, bounds, goal_sets)
    stdout_free = _write_or_print(document, args.output)
    print(json.dumps(desc), file=sys.stdout if stdout_free else sys.stderr)
    return 0


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.kind == "random":
        game = gen_random(args.agents, args.goals, args.resources, args.max_value, args.density, seed)
        _write_or_print(serialize_game(game), args.output)
        return 0
    game, k = reductions.gen_counterexample(args.k, args.agents, args.goals, args.resources)
    stdout_free = _write_or_print(serialize_game(game), args.output)
    print(json.dumps({"problem": "esck", "k": k}), file=sys.stdout if stdout_free else sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    kwargs = {"seed": seed}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.campaign in ("backends", "lemmas"):
        kwargs.update(
            max_agents=args.max_agents,
            max_goals=args.max_goals,
            max_resources=args.max_resources,
            max_value=args.max_value,
        )
    report = verify.CAMPAIGNS[args.campaign](**kwargs)
    sys.stdout.write(report.render())
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crg", description="Solve, reduce, generate and verify coalitional resource games."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a problem on a game document")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--game", required=True, help="game document (JSON)")
    p.add_argument("--coalition", help="named coalition from the document, or comma-separated agents")
    p.add_argument("--coalition2", help="second coalition for cc")
    p.add_argument("--resource", help="resource name for nr/snr/cgro")
    p.add_argument("--goal-set", dest="goal_set", help="named goal set, or comma-separated goals")
    p.add_argument("--bound", help="named bound, or comma-separated resource=value entries")
    p.add_argument("--k", type=int, help="coalition size for esck")
    p.add_argument("--backend", choices=["enum", "ilp"], default="enum")
    p.add_argument(
        "--vacuous-scrb",
        action="store_true",
        help="answer scrb YES for unsuccessful coalitions instead of NO",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("reduce", help="construct a reduction gadget")
    p.add_argument("kind", choices=sorted(_GRAPH_REDUCTIONS) + sorted(_GAME_REDUCTIONS))
    p.add_argument("--graph", help="edge-list graph file (graph reductions)")
    p.add_argument("--game", help="source game document (game reductions)")
    p.add_argument("--k", type=int, help="independent-set size (graph reductions)")
    p.add_argument("--coalition", help="source coalition (game reductions)")
    p.add_argument(
        "--cgro-goal-membership",
        action="store_true",
        help="sc-to-cgro: also add the reference goal to every member's goal set",
    )
    p.add_argument("-o", "--output", help="write the gadget document here instead of stdout")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=["random", "counterexample"])
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--goals", type=int, default=1)
    p.add_argument("--resources", type=int, default=1)
    p.add_argument("--max-value", type=int, default=3, help="random: largest endowment/requirement")
    p.add_argument("--density", type=float, default=0.5, help="random: agent-goal membership probability")
    p.add_argument("--k", type=int, help="counterexample: target coalition size")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="run a certification campaign")
    p.add_argument("campaign", choices=sorted(verify.CAMPAIGNS))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-agents", type=int, default=5)
    p.add_argument("--max-goals", type=int, default=5)
    p.add_argument("--max-resources", type=int, default=3)
    p.add_argument("--max-value", type=int, default=3)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as e:
        print(json.dumps({"error": str(e), "kind": "precondition"}), file=sys.stderr)
        return 3
    except InputError as e:
        print(json.dumps({"error": str(e), "kind": "input"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
