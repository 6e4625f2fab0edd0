import pytest
from hypothesis import given
from hypothesis import strategies as st

from sandwich_csp import formats
from sandwich_csp.core import (
    FiniteStructure,
    Graph,
    StructureInstance,
    all_pairs,
    cycle_graph,
    make_instance,
)
from sandwich_csp.errors import OverlapError, ParseError, RangeError
from sandwich_csp.finite_csp import struct_a


def test_parse_instance_example():
    inst = formats.parse_instance("p swi 3\ne 1 2\nf 1 3\n")
    assert inst == make_instance(3, [(0, 1)], [(0, 2)])
    with pytest.raises(OverlapError):
        formats.parse_instance("p swi 2\ne 1 2\nf 1 2\n")


def test_comments_and_whitespace():
    text = "# header comment\n  p   swi 3  # trailing\n\ne 2 1\n"
    assert formats.parse_instance(text) == make_instance(3, [(0, 1)])


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("p gr 3\n", 1),
    ("p swi x\n", 1),
    ("p swi 3\ne 1\n", 2),
    ("p swi 3\ne 1 4\n", 2),
    ("p swi 3\n\nq 1 2\n", 3),
    ("p swi 3\ne 1 a\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        formats.parse_instance(text)
    assert exc.value.line == line


def test_round_trip_random_corpus():
    for seed in range(100):
        inst = formats.random_instance(6, 0.3, 0.3, seed)
        text = formats.emit_instance(inst)
        assert formats.parse_instance(text) == inst
        assert formats.emit_instance(formats.parse_instance(text)) == text


def test_emit_is_canonical():
    a = formats.parse_instance("p swi 3\nf 3 1\ne 2 1\ne 1 2\n")
    assert formats.emit_instance(a) == "p swi 3\ne 1 2\nf 1 3\n"


def test_graph_format():
    g = cycle_graph(4)
    assert formats.parse_graph(formats.emit_graph(g)) == g
    with pytest.raises(ParseError):
        formats.parse_graph("p gr 2\nf 1 2\n")


def test_structure_format():
    s = struct_a()
    assert formats.parse_structure(formats.emit_structure(s)) == s
    with pytest.raises(ParseError):
        formats.parse_structure("p fst 2\nr E 2\nt E 0 2\n")
    with pytest.raises(ParseError):
        formats.parse_structure("p fst 2\nt E 0 1\n")
    with pytest.raises(ParseError):
        formats.parse_structure("p fst 2\nr E 2\nr E 2\n")
    with pytest.raises(ParseError):
        formats.parse_structure("p fst 2\nr E 2\nt E 0\n")
    empty = FiniteStructure(1, (("E", 2),))
    assert formats.parse_structure(formats.emit_structure(empty)) == empty


def test_structure_instance_format():
    inst = StructureInstance(3, (("T", (0, 1, 2)), ("U", (1,))))
    text = formats.emit_structure_instance(inst)
    assert text == "p sti 3\nr T 3\nr U 1\nc T 1 2 3\nc U 2\n"
    assert formats.parse_structure_instance(text) == inst
    with pytest.raises(ParseError):
        formats.parse_structure_instance("p sti 2\nr T 1\nc T 3\n")


def test_file_kind():
    assert formats.file_kind("# x\np swi 2\n") == "swi"
    assert formats.file_kind("ppc 1 E/2 E/2\n") == "ppc"
    with pytest.raises(ParseError):
        formats.file_kind("e 1 2\n")


def test_random_instance_contract():
    assert formats.random_instance(4, 0, 0, 7) == make_instance(4)
    assert formats.random_instance(4, 1, 0, 7) == make_instance(4, all_pairs(4))
    assert formats.random_instance(4, 0, 1, 7) == make_instance(4, [], all_pairs(4))
    assert formats.random_instance(8, 0.3, 0.3, 42) == formats.random_instance(8, 0.3, 0.3, 42)
    assert formats.random_instance(8, 0.3, 0.3, 42) != formats.random_instance(8, 0.3, 0.3, 43)
    for bad in ((0.6, 0.6), (-0.1, 0.2), (0.2, -0.1)):
        with pytest.raises(RangeError):
            formats.random_instance(4, *bad, 0)


@given(st.integers(0, 9), st.floats(0, 0.5), st.floats(0, 0.5), st.integers(0, 2**64 - 1))
def test_random_instances_are_valid(n, pf, pn, seed):
    inst = formats.random_instance(n, pf, pn, seed)
    assert inst.n == n and not inst.forced & inst.forbidden
    assert formats.parse_instance(formats.emit_instance(inst)) == inst


def test_graph_round_trip_keeps_isolated_vertices():
    g = Graph(5, frozenset({(0, 1)}))
    assert formats.parse_graph(formats.emit_graph(g)).n == 5
