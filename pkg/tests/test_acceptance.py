"""Acceptance criteria 1-12.  Each test carries ``criterion(n)``; the
terminal summary prints one PASS/FAIL line per criterion."""

import random
import subprocess
import sys
import time
from functools import lru_cache
from itertools import product
from pathlib import Path

import pytest

from helpers import (
    atlas_graphs,
    betweenness_brute,
    csp_instances,
    graphs_with_few_edges,
    line_of_bipartite_oracle,
)
from sandwich_csp import formats
from sandwich_csp.core import (
    FiniteStructure,
    complete_graph,
    cycle_graph,
    graph_csp_instance,
    graph_structure,
    is_isomorphic_small,
    is_yes,
    path_graph,
    structure_to_graph,
)
from sandwich_csp.crosscheck import exhaustive_instances, report_json, run_crosscheck
from sandwich_csp.errors import LoopAtomError
from sandwich_csp.finite_csp import (
    brute_force_hom,
    enumerate_polymorphisms_naive,
    graph_hom,
    has_siggers,
    hom_search,
    is_siggers_table,
    one_in_three,
    projection_table,
    struct_a,
    struct_k,
)
from sandwich_csp.oracle import oracle_solve, partition_solve, validate
from sandwich_csp.pp import (
    betweenness_to_permutation,
    c5_to_k5,
    gadget_reduce,
    gadget_to_sandwich,
    pp_power,
    split12_to_one_in_three,
)
from sandwich_csp.recognizers import (
    CliquePartition,
    FFree,
    GeometricT,
    Permutation,
    PnKkFree,
    PqSplit,
    contains_cycle_in,
    is_line_of_bipartite,
    is_line_of_bipartite_multi,
)
from sandwich_csp.reductions import (
    bipartition,
    colouring_to_sandwich,
    ham_path_to_cycle_family,
    has_ham_path,
    pendant_padding,
    pq_padding,
    universal_vertex_padding,
)

GOLDEN = Path(__file__).parent / "golden"
POLY_CLASSES = ("split", "threshold", "multipartite")


@lru_cache(maxsize=None)
def crosscheck_report(name: str) -> dict:
    from sandwich_csp.recognizers import parse_class
    start = time.perf_counter()
    report = run_crosscheck(parse_class(name), seed=0, random_count=500, sizes=(5, 6, 7))
    report["_seconds"] = time.perf_counter() - start
    return report


def _strip(report: dict) -> dict:
    return {k: v for k, v in report.items() if not k.startswith("_")}


# -- 1 --------------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_pp_power_of_c5_is_k5():
    start = time.perf_counter()
    power, _ = pp_power(graph_structure(cycle_graph(5)), c5_to_k5())
    elapsed = time.perf_counter() - start
    assert is_isomorphic_small(structure_to_graph(power), complete_graph(5))
    assert elapsed < 1.0
    assert formats.emit_structure(power) == (GOLDEN / "c5_k5_power.fst").read_text()


# -- 2 --------------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_struct_a_has_no_siggers_polymorphism():
    start = time.perf_counter()
    assert has_siggers(struct_a()) is None
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(2)
def test_validator_rejects_perturbed_tables():
    tmpl = struct_a()
    rng = random.Random("perturb")
    bases = [projection_table(3, 4, i) for i in range(4)]
    # a constant table satisfies the identity but not U_E
    bases.append((0,) * 81)
    for _ in range(100):
        table = list(rng.choice(bases))
        for cell in rng.sample(range(81), rng.randint(1, 5)):
            table[cell] = rng.choice([x for x in range(3) if x != table[cell]])
        assert not is_siggers_table(tmpl, table)
    # positive control: the validator does accept a genuine table elsewhere
    k_table = has_siggers(struct_k())
    assert k_table is not None and is_siggers_table(struct_k(), k_table)


# -- 3 --------------------------------------------------------------------------------

def random_two_element_template(rng: random.Random) -> FiniteStructure:
    sig, rels = [], {}
    for i in range(rng.randint(1, 3)):
        arity = rng.randint(1, 3)
        tuples = [t for t in product(range(2), repeat=arity) if rng.random() < 0.5]
        if not tuples:
            tuples = [tuple(rng.randint(0, 1) for _ in range(arity))]
        sig.append((f"S{i}", arity))
        rels[f"S{i}"] = set(tuples)
    return FiniteStructure(2, tuple(sig), rels)


@pytest.mark.criterion(3)
def test_two_element_siggers_matches_naive_enumeration():
    rng = random.Random("two-element")
    templates = [struct_k()] + [random_two_element_template(rng) for _ in range(25)]
    start = time.perf_counter()
    found = 0
    for tmpl in templates:
        table = has_siggers(tmpl)
        count, _ = enumerate_polymorphisms_naive(tmpl, 4, siggers=True, sample=0)
        assert (table is not None) == (count > 0), tmpl
        if table is not None:
            found += 1
            assert is_siggers_table(tmpl, table)
    assert time.perf_counter() - start < 60
    assert 0 < found < len(templates)


# -- 4 --------------------------------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("name", POLY_CLASSES)
def test_poly_solver_matches_oracle(name):
    report = crosscheck_report(name)
    suites = {s["suite"]: s for s in report["suites"]}
    assert suites["exhaustive-n4"]["instances"] == 729
    for n in (5, 6, 7):
        assert suites[f"random-n{n}"]["instances"] >= 500
    assert report["total_discrepancies"] == 0, report
    # both verdicts occur at every size, so agreement is not vacuous
    for s in report["suites"]:
        assert s["yes"] > 0 and s["no"] > 0
    assert report["_seconds"] < 100


# -- 5 --------------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_every_yes_certificate_validates():
    for name in POLY_CLASSES:
        assert crosscheck_report(name)["total_invalid_certificates"] == 0
    # transfer suites: every YES from the oracle on gadget output
    con = betweenness_to_permutation()
    cls = Permutation()
    for inst in csp_instances(2, 4, [("Betw", 3)]):
        try:
            s = gadget_to_sandwich(con, inst)
        except LoopAtomError:
            continue
        cert = oracle_solve(s, cls)
        assert validate(s, cert, cls)
    for inst in exhaustive_instances(4):
        for cls in (PqSplit(1, 1), FFree((path_graph(5), complete_graph(3)))):
            cert = oracle_solve(inst, cls)
            assert validate(inst, cert, cls)


# -- 6 --------------------------------------------------------------------------------

@pytest.mark.criterion(6)
def test_c5_gadget_soundness_on_small_graphs():
    c5 = graph_structure(cycle_graph(5))
    power, _ = pp_power(c5, c5_to_k5())
    con = c5_to_k5()
    graphs = atlas_graphs(6)
    assert len(graphs) == 209
    start = time.perf_counter()
    yes = 0
    for g in graphs:
        inst = graph_csp_instance(g)
        direct = is_yes(hom_search(inst, power))
        via_gadget = is_yes(hom_search(gadget_reduce(con, inst), c5))
        assert direct == via_gadget, g
        yes += direct
    assert 0 < yes < len(graphs)
    assert time.perf_counter() - start < 300


# -- 7 --------------------------------------------------------------------------------

def one_in_three_suite():
    return list(csp_instances(2, 5, [("R", 3)]))


@pytest.mark.criterion(7)
def test_one_in_three_transfer_to_pq_split():
    con = split12_to_one_in_three()
    cls = PqSplit(1, 2)
    witnesses = []
    for inst in one_in_three_suite():
        truth = brute_force_hom(inst, one_in_three()) is not None
        got = is_yes(partition_solve(gadget_to_sandwich(con, inst), cls))
        if got != truth:
            witnesses.append((inst.constraints, truth, got))
    assert not witnesses, (
        f"{len(witnesses)} discrepancies; first: "
        + "; ".join(f"{c} sat={t} sandwich={g}" for c, t, g in witnesses[:3]))



def test_one_in_three_transfer_to_clique_partition():
    """The same gadget output, read against "independent set plus triangle-free"
    (CliquePartition(1, 2)), matches 1-IN-3 satisfiability exactly."""
    con = split12_to_one_in_three()
    cls = CliquePartition(1, 2)
    sat = 0
    for inst in one_in_three_suite():
        truth = brute_force_hom(inst, one_in_three()) is not None
        s = gadget_to_sandwich(con, inst)
        cert = partition_solve(s, cls)
        assert is_yes(cert) == truth, inst.constraints
        assert validate(s, cert, cls)
        sat += truth
    assert 0 < sat

# -- 8 --------------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_betweenness_transfer_to_permutation():
    con = betweenness_to_permutation()
    cls = Permutation()
    count = yes = 0
    for inst in csp_instances(2, 4, [("Betw", 3)]):
        truth = betweenness_brute(inst)
        try:
            got = is_yes(oracle_solve(gadget_to_sandwich(con, inst), cls))
        except LoopAtomError:
            got = False
        assert got == truth, inst.constraints
        count += 1
        yes += truth
    assert count > 100 and 0 < yes < count


# -- 9 --------------------------------------------------------------------------------

def small_instances(max_n: int):
    for n in range(max_n + 1):
        yield from exhaustive_instances(n)


def _same_verdict(a_inst, a_cls, b_inst, b_cls) -> bool:
    return is_yes(oracle_solve(a_inst, a_cls)) == is_yes(oracle_solve(b_inst, b_cls))


@pytest.mark.criterion(9)
def test_pq_padding_transfer():
    for inst in small_instances(4):
        assert _same_verdict(inst, PqSplit(1, 1), pq_padding(inst, 1), PqSplit(1, 2)), inst


@pytest.mark.criterion(9)
def test_universal_vertex_padding_transfer():
    small = FFree((path_graph(5), complete_graph(3)))
    big = FFree((path_graph(5), complete_graph(4)))
    for inst in small_instances(4):
        assert _same_verdict(inst, small, universal_vertex_padding(inst), big), inst


@pytest.mark.criterion(9)
def test_pendant_padding_transfer():
    small, big = PnKkFree(4, 4), PnKkFree(6, 4)
    sample = random.Random("pendant").sample(list(exhaustive_instances(4)), 150)
    for inst in list(small_instances(3)) + sample:
        assert _same_verdict(inst, small, pendant_padding(inst), big), inst


@pytest.mark.criterion(9)
def test_colouring_transfer():
    cls = PnKkFree(4, 4)
    assert not is_yes(oracle_solve(colouring_to_sandwich(complete_graph(4)), cls))
    three = complete_graph(3)
    colourable = 0
    for g in atlas_graphs(6):
        if is_yes(graph_hom(g, three)):
            colourable += 1
            cert = oracle_solve(colouring_to_sandwich(g), cls)
            assert is_yes(cert), g
            assert validate(colouring_to_sandwich(g), cert, cls)
    assert colourable > 100


# -- 10 -------------------------------------------------------------------------------

@pytest.mark.criterion(10)
def test_line_of_bipartite_matches_enumeration():
    graphs = graphs_with_few_edges(5)
    assert len(graphs) > 80
    for g in graphs:
        assert is_line_of_bipartite(g) == line_of_bipartite_oracle(g), g
        if g.n <= 10:
            assert is_line_of_bipartite_multi(g) == line_of_bipartite_oracle(g, multi=True), g


@pytest.mark.criterion(10)
def test_line_of_bipartite_boundary_golden():
    for line in (GOLDEN / "line_bip_boundary.txt").read_text().splitlines():
        if line.startswith("#"):
            continue
        name, kind, verdict = line.split()
        g = complete_graph(int(name[1:]))
        multi = kind == "multi"
        expected = verdict == "YES"
        assert line_of_bipartite_oracle(g, multi) == expected
        got = is_line_of_bipartite_multi(g) if multi else is_line_of_bipartite(g)
        assert got == expected, line


# -- 11 -------------------------------------------------------------------------------

def ham_cases(count: int = 24):
    rng = random.Random("hamiltonian")
    want_yes = want_no = count // 2
    cases = []
    while want_yes or want_no:
        n = rng.randint(2, 8)
        p = rng.uniform(0.3, 0.9)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        from sandwich_csp.core import Graph
        g = Graph(n, frozenset(edges))
        if bipartition(g) is None:
            continue
        s, t = rng.sample(range(n), 2)
        ham = has_ham_path(g, s, t)
        if ham and want_yes:
            want_yes -= 1
        elif not ham and want_no:
            want_no -= 1
        else:
            continue
        cases.append((g, s, t, ham))
    return cases


@pytest.mark.criterion(11)
def test_ham_path_iff_t_cycle():
    start = time.perf_counter()
    cases = ham_cases()
    assert len(cases) >= 20
    for g, s, t, ham in cases:
        h = ham_path_to_cycle_family(g, s, t)
        assert h.n == 45
        assert contains_cycle_in(h, GeometricT(), anchor=g.n, max_vertices=h.n) == ham, (g, s, t)
    assert time.perf_counter() - start < 300


# -- 12 -------------------------------------------------------------------------------

@pytest.mark.criterion(12)
@pytest.mark.parametrize("name", POLY_CLASSES)
def test_crosscheck_reports_are_reproducible(name):
    from sandwich_csp.recognizers import parse_class
    again = run_crosscheck(parse_class(name), seed=0, random_count=500, sizes=(5, 6, 7))
    assert report_json(again) == report_json(_strip(crosscheck_report(name)))


@pytest.mark.criterion(12)
def test_cli_outputs_are_reproducible(tmp_path):
    def run(*args):
        return subprocess.run([sys.executable, "-m", "sandwich_csp.cli", *args],
                              capture_output=True, check=True).stdout

    inst = tmp_path / "i.swi"
    inst.write_bytes(run("gen", "--n", "7", "--seed", "11"))
    for args in (["gen", "--n", "9", "--seed", "5"],
                 ["solve", str(inst), "--class", "split"],
                 ["solve", str(inst), "--class", "pqsplit:1,2"],
                 ["crosscheck", "--class", "threshold", "--random", "40", "--workers", "2"],
                 ["polymorphism", "--siggers", "structK"]):
        assert run(*args) == run(*args), args
