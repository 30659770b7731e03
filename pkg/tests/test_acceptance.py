"""Acceptance suite: one test per release criterion, at its stated scale.

Each test prints a single ``criterion N: PASS/FAIL`` line (visible with
``pytest -s`` or in the captured output), and fails the run on any miss.
"""

import itertools
import random
import time

import numpy as np

from crgsolve import ilp, problems, verify
from crgsolve.gameio import parse_game, serialize_document, serialize_game
from crgsolve.model import Quantity, enumerate_succ
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

SEED = 20240


def report(number, ok, text):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {number} failed: {text}"


def test_criterion_1_oracle_agreement():
    started = time.monotonic()
    result = verify.verify_backends(trials=500, seed=SEED)
    elapsed = time.monotonic() - started
    report(
        1,
        result.ok and elapsed < 60,
        f"all ten deciders match brute force on 500 instances "
        f"({result.checks} checks, {elapsed:.1f}s)",
    )


def test_criterion_2_backend_agreement():
    rng = random.Random(SEED + 1)
    mismatches = 0
    compared = 0
    for _ in range(500):
        game = verify._sample_game(rng, 5, 5, 3, 3)
        c = verify._sample_coalition(rng, game)
        c2 = verify._sample_coalition(rng, game)
        r = rng.randrange(game.num_resources)
        k = rng.randint(1, game.num_agents)
        bound = tuple(Quantity(rng.randint(0, 3)) for _ in range(game.num_resources))
        free_set = frozenset(rng.sample(range(game.num_goals), rng.randint(0, game.num_goals)))
        queries = [
            ("sc", {"coalition": c}),
            ("esck", {"k": k}),
            ("nr", {"coalition": c, "resource": r}),
            ("snr", {"coalition": c, "resource": r}),
            ("rpegs", {"coalition": c, "goal_set": free_set}),
            ("scrb", {"coalition": c, "bound": bound}),
            ("cc", {"coalition": c, "coalition2": c2, "bound": bound}),
        ]
        succ = enumerate_succ(game, c)
        if succ:
            queries.append(("cgro", {"coalition": c, "goal_set": rng.choice(succ), "resource": r}))
        for problem, kwargs in queries:
            one = problems.solve(game, problem, problems.Backend.ENUMERATION, **kwargs)
            two = problems.solve(game, problem, problems.Backend.INTEGER_PROGRAM, **kwargs)
            compared += 1
            if one.verdict != two.verdict:
                mismatches += 1
    report(
        2,
        mismatches == 0,
        f"enumeration and integer-program backends agree on {compared} queries",
    )


def test_criterion_3_independent_set_reductions():
    started = time.monotonic()
    mismatches = 0
    pairs = 0
    slots = list(itertools.combinations(range(4), 2))
    for mask in range(1 << len(slots)):
        graph = Graph(4, tuple(e for j, e in enumerate(slots) if mask >> j & 1))
        for k in range(1, 5):
            expected = independent_set_exists(graph, k)
            out = is_to_sc(graph, k)
            if problems.solve(out.game, out.problem, **out.query).verdict != expected:
                mismatches += 1
            out = is_to_esck_g1(graph, k)
            if problems.solve(out.game, out.problem, **out.query).verdict != expected:
                mismatches += 1
            pairs += 1
    elapsed = time.monotonic() - started
    report(
        3,
        mismatches == 0 and elapsed < 10,
        f"both graph gadgets match the oracle on all 64 graphs x 4 sizes "
        f"({pairs} pairs, {elapsed:.1f}s)",
    )


def test_criterion_4_lemma_polarities():
    result = verify.verify_lemmas(trials=300, seed=SEED)
    report(
        4,
        result.ok,
        "gadget polarities hold exactly on 300 pairs "
        "(reference-set gadget precondition-screened, bounded-success gadget "
        "unconditional and flagged directions)",
    )


def test_criterion_5_counterexample_reproduction():
    bad = []
    for n in range(2, 6):
        for k in range(1, n):
            game, kk = gen_counterexample(k, n)
            if buggy_esck(game, kk) or not problems.esck(game, kk).verdict:
                bad.append((k, n))
    report(
        5,
        not bad,
        "goal-subset-first procedure answers NO while the true answer is YES "
        "for every 1 <= k < n <= 5",
    )


def _numpy_feasible(prog) -> bool:
    fixed = dict(prog.fixed)
    free = [v for v in range(prog.num_vars) if v not in fixed]
    count = 1 << len(free)
    table = np.zeros((count, prog.num_vars), dtype=np.int64)
    for v, val in fixed.items():
        table[:, v] = val
    index = np.arange(count, dtype=np.int64)
    for j, v in enumerate(free):
        table[:, v] = (index >> j) & 1
    ok = np.ones(count, dtype=bool)
    for con in prog.constraints:
        lhs = table @ np.asarray(con.coefficients, dtype=np.int64)
        if con.comparator is ilp.Cmp.LE:
            ok &= lhs <= con.rhs
        elif con.comparator is ilp.Cmp.GE:
            ok &= lhs >= con.rhs
        else:
            ok &= lhs == con.rhs
    return bool(ok.any())


def test_criterion_6_ilp_soundness():
    rng = random.Random(SEED + 2)
    mismatches = 0
    invalid_assignments = 0
    for _ in range(1000):
        prog = verify.random_program(rng, max_vars=12, max_constraints=8)
        got = ilp.feasible(prog)
        if (got is not None) != _numpy_feasible(prog):
            mismatches += 1
        if got is not None:
            if not all(con.satisfied_by(got) for con in prog.constraints):
                invalid_assignments += 1
            if not all(got[v] == val for v, val in prog.fixed):
                invalid_assignments += 1
    report(
        6,
        mismatches == 0 and invalid_assignments == 0,
        "engine matches exhaustive evaluation on 1000 programs and every "
        "returned assignment satisfies its program",
    )


def test_criterion_7_constraint_counts():
    rng = random.Random(SEED + 3)
    bad = 0
    for _ in range(100):
        game = verify._sample_game(rng, 5, 5, 3, 3)
        c = verify._sample_coalition(rng, game)
        n, t = game.num_agents, game.num_resources
        bound = tuple(Quantity(rng.randint(0, 3)) for _ in range(t))
        if len(ilp.build_base_ip(game).constraints) != n + t:
            bad += 1
        if len(ilp.compile_esck(game, 1).programs[0].constraints) != n + t + 1:
            bad += 1
        if len(ilp.compile_scrb(game, c, bound).programs[0].constraints) != n + 2 * t:
            bad += 1
    report(
        7,
        bad == 0,
        "compiled sizes: base = agents + resources, size-k adds one, "
        "bounded success adds one per resource (100 finite instances)",
    )


def test_criterion_8_round_trip_and_determinism():
    rng = random.Random(SEED + 4)
    round_trip_ok = True
    for _ in range(30):
        game = verify._sample_game(rng, 4, 4, 3, 3)
        c = verify._sample_coalition(rng, game)
        outputs = [
            build(game, c)
            for build in (sc_to_esck, sc_to_nr, sc_to_snr, sc_to_cgro, sc_to_rpegs, sc_to_scrb, sc_to_cc)
        ]
        outputs.append(is_to_sc(Graph(4, ((0, 1), (1, 2), (2, 3))), rng.randint(1, 4)))
        for out in outputs:
            query = out.query
            text = serialize_game(
                out.game,
                coalitions={k: query[q] for k, q in (("C", "coalition"), ("C2", "coalition2")) if q in query},
                bounds={"b": query["bound"]} if "bound" in query else None,
                goal_sets={"G0": query["goal_set"]} if "goal_set" in query else None,
            )
            doc = parse_game(text)
            if doc.game != out.game or serialize_document(doc) != text:
                round_trip_ok = False

    reports_ok = True
    for campaign, kwargs in (
        ("backends", {"trials": 30}),
        ("lemmas", {"trials": 30}),
        ("reductions", {"trials": 15}),
        ("ilp", {"trials": 50}),
    ):
        first = verify.CAMPAIGNS[campaign](seed=SEED, **kwargs).render()
        second = verify.CAMPAIGNS[campaign](seed=SEED, **kwargs).render()
        if first != second:
            reports_ok = False
    report(
        8,
        round_trip_ok and reports_ok,
        "gadget documents round-trip bit-exactly and fixed-seed verify "
        "reports reproduce byte for byte",
    )
