"""Line-oriented text formats.

Instances ``p swi n`` with ``e u v`` (forced) and ``f u v`` (forbidden),
graphs ``p gr n`` with ``e u v``, structures ``p fst d`` with ``r name
arity`` and ``t name a1 .. ak`` (0-based elements), CSP instances ``p sti
n`` with ``r name arity`` and ``c name v1 .. vk``.  Vertices and variables
are 1-based in files; ``#`` starts a comment.
"""

from __future__ import annotations

import random

from .core import FiniteStructure, Graph, SandwichInstance, StructureInstance, all_pairs
from .errors import ParseError, RangeError


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split("#", 1)[0].split()
        if tok:
            yield lineno, tok


def _ints(tok: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in tok]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tok)!r}", lineno) from None


def _header(text: str, kind: str) -> tuple[int, list]:
    it = list(_lines(text))
    if not it:
        raise ParseError(f"empty input, expected 'p {kind} <n>'", 1)
    lineno, tok = it[0]
    if len(tok) != 3 or tok[0] != "p" or tok[1] != kind:
        raise ParseError(f"expected header 'p {kind} <n>'", lineno)
    (n,) = _ints(tok[2:], lineno)
    if n < 0:
        raise ParseError("size must be non-negative", lineno)
    return n, it[1:]


def _pair(tok: list[str], n: int, lineno: int) -> tuple[int, int]:
    if len(tok) != 3:
        raise ParseError(f"'{tok[0]}' takes two vertices", lineno)
    u, v = _ints(tok[1:], lineno)
    if not (1 <= u <= n and 1 <= v <= n):
        raise ParseError(f"vertex out of range 1..{n}", lineno)
    return u - 1, v - 1


def parse_instance(text: str) -> SandwichInstance:
    n, rest = _header(text, "swi")
    forced, forbidden = [], []
    for lineno, tok in rest:
        if tok[0] == "e":
            forced.append(_pair(tok, n, lineno))
        elif tok[0] == "f":
            forbidden.append(_pair(tok, n, lineno))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    return SandwichInstance(n, frozenset(forced), frozenset(forbidden))


def emit_instance(inst: SandwichInstance) -> str:
    out = [f"p swi {inst.n}"]
    out += [f"e {u + 1} {v + 1}" for u, v in sorted(inst.forced)]
    out += [f"f {u + 1} {v + 1}" for u, v in sorted(inst.forbidden)]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    n, rest = _header(text, "gr")
    edges = []
    for lineno, tok in rest:
        if tok[0] != "e":
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
        edges.append(_pair(tok, n, lineno))
    return Graph(n, frozenset(edges))


def emit_graph(g: Graph) -> str:
    out = [f"p gr {g.n}"] + [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(out) + "\n"


def _symbols(rest, kind_line: str):
    sig: list[tuple[str, int]] = []
    body = []
    for lineno, tok in rest:
        if tok[0] == "r":
            if len(tok) != 3:
                raise ParseError("'r' takes a name and an arity", lineno)
            (a,) = _ints(tok[2:], lineno)
            if a < 1:
                raise ParseError("arity must be positive", lineno)
            if any(s == tok[1] for s, _ in sig):
                raise ParseError(f"symbol {tok[1]} declared twice", lineno)
            sig.append((tok[1], a))
        elif tok[0] == kind_line:
            if len(tok) < 2:
                raise ParseError(f"'{kind_line}' needs a symbol", lineno)
            arity = dict(sig).get(tok[1])
            if arity is None:
                raise ParseError(f"undeclared symbol {tok[1]}", lineno)
            vals = _ints(tok[2:], lineno)
            if len(vals) != arity:
                raise ParseError(f"{tok[1]} has arity {arity}", lineno)
            body.append((lineno, tok[1], vals))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    return sig, body


def parse_structure(text: str) -> FiniteStructure:
    d, rest = _header(text, "fst")
    if d < 1:
        raise ParseError("domain size must be positive", 1)
    sig, body = _symbols(rest, "t")
    rels: dict[str, set] = {s: set() for s, _ in sig}
    for lineno, s, vals in body:
        if any(not 0 <= x < d for x in vals):
            raise ParseError(f"element out of range 0..{d - 1}", lineno)
        rels[s].add(tuple(vals))
    return FiniteStructure(d, tuple(sig), rels)


def emit_structure(s: FiniteStructure) -> str:
    out = [f"p fst {s.domain_size}"]
    out += [f"r {name} {a}" for name, a in s.signature]
    for name, _ in s.signature:
        out += [f"t {name} {' '.join(map(str, t))}" for t in sorted(s.relations[name])]
    return "\n".join(out) + "\n"


def parse_structure_instance(text: str) -> StructureInstance:
    n, rest = _header(text, "sti")
    sig, body = _symbols(rest, "c")
    cons = []
    for lineno, s, vals in body:
        if any(not 1 <= x <= n for x in vals):
            raise ParseError(f"variable out of range 1..{n}", lineno)
        cons.append((s, tuple(x - 1 for x in vals)))
    inst = StructureInstance(n, tuple(cons))
    return inst


def structure_instance_signature(inst: StructureInstance) -> list[tuple[str, int]]:
    sig: dict[str, int] = {}
    for s, vs in inst.constraints:
        sig.setdefault(s, len(vs))
    return list(sig.items())


def emit_structure_instance(inst: StructureInstance, signature=None) -> str:
    sig = signature if signature is not None else structure_instance_signature(inst)
    out = [f"p sti {inst.variable_count}"] + [f"r {s} {a}" for s, a in sig]
    out += [f"c {s} {' '.join(str(v + 1) for v in vs)}" for s, vs in inst.constraints]
    return "\n".join(out) + "\n"


def file_kind(text: str) -> str:
    """The ``p <kind>`` tag of a file, or 'ppc' for constructions."""
    for lineno, tok in _lines(text):
        if tok[0] == "ppc":
            return "ppc"
        if tok[0] == "p" and len(tok) >= 2:
            return tok[1]
        raise ParseError("missing header line", lineno)
    raise ParseError("empty input", 1)


def random_instance(n: int, p_forced: float, p_forbidden: float, seed: int) -> SandwichInstance:
    """Each pair (lexicographic order) draws one uniform number from a
    Mersenne Twister seeded with ``seed``: below p_forced it is forced, below
    p_forced + p_forbidden forbidden, otherwise left open."""
    if p_forced < 0 or p_forbidden < 0 or p_forced + p_forbidden > 1 + 1e-12:
        raise RangeError("probabilities must be non-negative with sum at most 1")
    rng = random.Random(seed)
    forced, forbidden = [], []
    for p in all_pairs(n):
        x = rng.random()
        if x < p_forced:
            forced.append(p)
        elif x < p_forced + p_forbidden:
            forbidden.append(p)
    return SandwichInstance(n, frozenset(forced), frozenset(forbidden))
