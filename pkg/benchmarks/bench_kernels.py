"""Time the compiled and pure-Python search kernels on the same workloads.

    python benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import random
import time

from sandwich_csp import kernels
from sandwich_csp.core import (
    StructureInstance,
    complete_graph,
    cycle_graph,
    graph_csp_instance,
    graph_structure,
)
from sandwich_csp.finite_csp import clique, has_siggers, hom_search, one_in_three, struct_a, struct_k


def random_one_in_three(n: int, m: int, seed: int) -> StructureInstance:
    rng = random.Random(seed)
    cons = tuple(("R", tuple(rng.sample(range(n), 3))) for _ in range(m))
    return StructureInstance(n, cons)


WORKLOADS = {
    "K6 -> K5 (no)": lambda b: hom_search(graph_csp_instance(complete_graph(6)), clique(5), backend=b),
    "C9 -> C5": lambda b: hom_search(graph_csp_instance(cycle_graph(9)), graph_structure(cycle_graph(5)),
                                     backend=b),
    "1-in-3, 40 vars": lambda b: [hom_search(random_one_in_three(40, 30, s), one_in_three(), backend=b)
                                  for s in range(20)],
    "Siggers structA": lambda b: has_siggers(struct_a(), backend=b),
    "Siggers structK": lambda b: has_siggers(struct_k(), backend=b),
}


def best_of(fn, backend: str, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(backend)
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the pure-Python kernel only")
    print(f"{'workload':<20}" + "".join(f"{b:>12}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for name, fn in WORKLOADS.items():
        t = [best_of(fn, b, args.repeat) for b in backends]
        row = f"{name:<20}" + "".join(f"{x:>11.4f}s" for x in t)
        if len(t) == 2:
            row += f"{t[0] / t[1]:>10.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
