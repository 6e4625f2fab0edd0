"""Oracle agreement suites: every instance at n = 4, plus seeded random
instances at larger n, each solved by a fast solver and by the oracle."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .core import SandwichInstance, all_pairs, is_yes
from .formats import emit_instance, random_instance
from .oracle import oracle_solve, partition_solve, search_solve, validate
from .poly import POLY_SOLVERS
from .recognizers import CliquePartition, GraphClass, PqSplit, Split


def fast_solver(cls: GraphClass):
    """(name, solver) used against the oracle for this class."""
    if cls.text in POLY_SOLVERS:
        return "poly", POLY_SOLVERS[cls.text]
    if isinstance(cls, (PqSplit, CliquePartition, Split)):
        return "partition", lambda inst: partition_solve(inst, cls)
    return "search", lambda inst: search_solve(inst, cls)


def exhaustive_instances(n: int):
    """All 3^C(n,2) instances: each pair open, forced or forbidden, in a fixed order."""
    pairs = all_pairs(n)
    for states in product(range(3), repeat=len(pairs)):
        forced = [p for p, s in zip(pairs, states) if s == 1]
        forbidden = [p for p, s in zip(pairs, states) if s == 2]
        yield SandwichInstance(n, frozenset(forced), frozenset(forbidden))


def random_suite(n: int, count: int, seed: int, low: float = 0.5, high: float = 0.9):
    """``count`` instances whose fixed-pair density is uniform in [low, high],
    split at random between forced and forbidden."""
    master = random.Random(f"suite:{seed}:{n}")
    for _ in range(count):
        total = master.uniform(low, high)
        p_forced = total * master.random()
        yield random_instance(n, p_forced, total - p_forced, master.getrandbits(64))


def check_one(args) -> dict:
    cls, inst = args
    _, solve = fast_solver(cls)
    fast = solve(inst)
    truth = oracle_solve(inst, cls)
    return {
        "fast": is_yes(fast),
        "oracle": is_yes(truth),
        "fast_valid": validate(inst, fast, cls),
        "oracle_valid": validate(inst, truth, cls),
    }


def _summarize(name: str, instances: list[SandwichInstance], results: list[dict]) -> dict:
    disc = [i for i, r in enumerate(results) if r["fast"] != r["oracle"]]
    invalid = [i for i, r in enumerate(results) if not (r["fast_valid"] and r["oracle_valid"])]
    first = None
    if disc:
        i = disc[0]
        first = {"index": i, "instance": emit_instance(instances[i]),
                 "fast": results[i]["fast"], "oracle": results[i]["oracle"]}
    return {
        "suite": name,
        "instances": len(results),
        "yes": sum(r["oracle"] for r in results),
        "no": sum(not r["oracle"] for r in results),
        "discrepancies": len(disc),
        "invalid_certificates": len(invalid),
        "first_discrepancy": first,
    }


def run_crosscheck(cls: GraphClass, seed: int = 0, random_count: int = 500,
                   sizes=(5, 6, 7), exhaustive_n: int = 4, workers: int = 1) -> dict:
    suites = [(f"exhaustive-n{exhaustive_n}", list(exhaustive_instances(exhaustive_n)))]
    for n in sizes:
        suites.append((f"random-n{n}", list(random_suite(n, random_count, seed))))
    report = {"class": cls.text, "solver": fast_solver(cls)[0], "seed": seed, "suites": []}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for name, insts in suites:
            jobs = [(cls, inst) for inst in insts]
            if pool is None:
                results = [check_one(j) for j in jobs]
            else:
                results = list(pool.map(check_one, jobs, chunksize=32))
            report["suites"].append(_summarize(name, insts, results))
    finally:
        if pool is not None:
            pool.shutdown()
    report["total_instances"] = sum(s["instances"] for s in report["suites"])
    report["total_discrepancies"] = sum(s["discrepancies"] for s in report["suites"])
    report["total_invalid_certificates"] = sum(s["invalid_certificates"] for s in report["suites"])
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
