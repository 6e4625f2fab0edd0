"""Data model: graphs, 2-edge-coloured graphs, sandwich instances, finite
relational structures, CSP instances and certificates.

Vertices are dense 0-based integers and unordered pairs are stored as
``(min, max)`` tuples.  Every value is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import OverlapError, RangeError, SignatureError, SizeError

Pair = tuple[int, int]

# Soft cap so adjacency rows fit in a machine word; raise with set_vertex_cap().
_VERTEX_CAP = 64


def set_vertex_cap(cap: int) -> None:
    global _VERTEX_CAP
    if cap < 1:
        raise RangeError("vertex cap must be positive")
    _VERTEX_CAP = cap


def vertex_cap() -> int:
    return _VERTEX_CAP


def norm_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _normalize_pairs(n: int, pairs: Iterable[Sequence[int]]) -> frozenset[Pair]:
    out = set()
    for p in pairs:
        u, v = p
        u, v = int(u), int(v)
        if u == v:
            raise RangeError(f"self-pair {{{u},{v}}}")
        if not (0 <= u < n and 0 <= v < n):
            raise RangeError(f"pair {{{u},{v}}} out of range for {n} vertices")
        out.add(norm_pair(u, v))
    return frozenset(out)


def _check_n(n: int) -> None:
    if n < 0:
        raise RangeError("vertex count must be non-negative")
    if n > _VERTEX_CAP:
        raise SizeError(f"{n} vertices exceeds the vertex cap {_VERTEX_CAP}")


def all_pairs(n: int) -> list[Pair]:
    return list(combinations(range(n), 2))


def masks_from_pairs(n: int, pairs: Iterable[Pair]) -> tuple[int, ...]:
    adj = [0] * n
    for u, v in pairs:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Pair] = frozenset()

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "edges", _normalize_pairs(self.n, self.edges))

    @classmethod
    def trusted(cls, n: int, edges: frozenset[Pair], adj: Sequence[int] | None = None) -> "Graph":
        """Skip validation; callers guarantee normalized in-range pairs."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "edges", edges)
        if adj is not None:
            g.__dict__["adj"] = tuple(adj)
        return g

    @classmethod
    def from_masks(cls, adj: Sequence[int]) -> "Graph":
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1]
        return cls(n, frozenset(edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency rows as bitmasks."""
        return masks_from_pairs(self.n, self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    @property
    def non_edges(self) -> frozenset[Pair]:
        return frozenset(p for p in all_pairs(self.n) if p not in self.edges)

    def complement(self) -> "Graph":
        return Graph(self.n, self.non_edges)

    def neighbours(self, v: int) -> list[int]:
        a = self.adj[v]
        return [u for u in range(self.n) if a >> u & 1]

    def __repr__(self) -> str:
        return f"Graph({self.n}, {sorted(self.edges)})"


@dataclass(frozen=True)
class ColouredGraph:
    n: int
    blue: frozenset[Pair] = frozenset()
    red: frozenset[Pair] = frozenset()

    def __post_init__(self):
        _check_n(self.n)
        blue = _normalize_pairs(self.n, self.blue)
        red = _normalize_pairs(self.n, self.red)
        if blue & red:
            raise OverlapError(f"pairs both blue and red: {sorted(blue & red)}")
        object.__setattr__(self, "blue", blue)
        object.__setattr__(self, "red", red)

    def to_instance(self) -> "SandwichInstance":
        return SandwichInstance(self.n, self.blue, self.red)


@dataclass(frozen=True)
class SandwichInstance:
    """Vertex count plus disjoint forced-edge and forbidden-edge sets."""

    n: int
    forced: frozenset[Pair] = frozenset()
    forbidden: frozenset[Pair] = frozenset()

    def __post_init__(self):
        _check_n(self.n)
        forced = _normalize_pairs(self.n, self.forced)
        forbidden = _normalize_pairs(self.n, self.forbidden)
        both = forced & forbidden
        if both:
            raise OverlapError(f"pairs both forced and forbidden: {sorted(both)}")
        object.__setattr__(self, "forced", forced)
        object.__setattr__(self, "forbidden", forbidden)

    def to_coloured(self) -> ColouredGraph:
        return ColouredGraph(self.n, self.forced, self.forbidden)

    @cached_property
    def forced_adj(self) -> tuple[int, ...]:
        return masks_from_pairs(self.n, self.forced)

    @cached_property
    def forbidden_adj(self) -> tuple[int, ...]:
        return masks_from_pairs(self.n, self.forbidden)

    def __repr__(self) -> str:
        return (
            f"SandwichInstance({self.n}, forced={sorted(self.forced)}, "
            f"forbidden={sorted(self.forbidden)})"
        )


def make_instance(
    n: int, forced: Iterable[Sequence[int]] = (), forbidden: Iterable[Sequence[int]] = ()
) -> SandwichInstance:
    return SandwichInstance(n, frozenset(map(tuple, forced)), frozenset(map(tuple, forbidden)))


def undetermined_pairs(inst: SandwichInstance) -> list[Pair]:
    fixed = inst.forced | inst.forbidden
    return [p for p in all_pairs(inst.n) if p not in fixed]


def graph_instance(g: Graph) -> SandwichInstance:
    """The fully determined instance whose only completion is ``g``."""
    return SandwichInstance(g.n, g.edges, g.non_edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise RangeError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(vs)}
    edges = [
        (index[u], index[v]) for u, v in combinations(vs, 2) if g.adj[u] >> v & 1
    ]
    return Graph(len(vs), frozenset(edges))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, frozenset(edges))


def is_isomorphic_small(g1: Graph, g2: Graph) -> bool:
    """Brute-force isomorphism test for graphs on at most 10 vertices."""
    if g1.n > 10 or g2.n > 10:
        raise SizeError("is_isomorphic_small handles at most 10 vertices")
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    d1, d2 = g1.degrees(), g2.degrees()
    if sorted(d1) != sorted(d2):
        return False
    n = g1.n
    order = sorted(range(n), key=lambda v: (-d1[v], v))
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used >> w & 1 or d2[w] != d1[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (g1.adj[v] >> u & 1) != (g2.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(i + 1):
                    return True
                used &= ~(1 << w)
        image[v] = -1
        return False

    return extend(0)


# -- named graphs -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise RangeError("cycles need at least 3 vertices")
    return Graph(n, frozenset(norm_pair(i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(all_pairs(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


# -- relational structures --------------------------------------------------

@dataclass(frozen=True)
class FiniteStructure:
    domain_size: int
    signature: tuple[tuple[str, int], ...]
    relations: Mapping[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        if self.domain_size < 1:
            raise RangeError("domain size must be positive")
        sig = tuple((str(s), int(a)) for s, a in self.signature)
        names = [s for s, _ in sig]
        if len(set(names)) != len(names):
            raise SignatureError("duplicate relation symbol")
        rels = {}
        for s, a in sig:
            if a < 1:
                raise SignatureError(f"arity of {s} must be positive")
            tuples = frozenset(tuple(int(x) for x in t) for t in self.relations.get(s, ()))
            for t in tuples:
                if len(t) != a:
                    raise SignatureError(f"tuple {t} has wrong length for {s}/{a}")
                if any(not 0 <= x < self.domain_size for x in t):
                    raise RangeError(f"tuple {t} of {s} leaves the domain")
            rels[s] = tuples
        extra = set(self.relations) - set(names)
        if extra:
            raise SignatureError(f"relations for undeclared symbols {sorted(extra)}")
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "relations", rels)

    def arity(self, symbol: str) -> int:
        for s, a in self.signature:
            if s == symbol:
                return a
        raise SignatureError(f"unknown symbol {symbol}")

    def __hash__(self):
        return hash((self.domain_size, self.signature,
                     tuple(sorted((s, tuple(sorted(r))) for s, r in self.relations.items()))))

    def __eq__(self, other):
        if not isinstance(other, FiniteStructure):
            return NotImplemented
        return (self.domain_size == other.domain_size and self.signature == other.signature
                and dict(self.relations) == dict(other.relations))


@dataclass(frozen=True)
class StructureInstance:
    """A finite structure read as a CSP instance: variables and constraints."""

    variable_count: int
    constraints: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        cons = tuple((str(s), tuple(int(v) for v in vs)) for s, vs in self.constraints)
        for s, vs in cons:
            for v in vs:
                if not 0 <= v < self.variable_count:
                    raise RangeError(f"variable {v} out of range in {s}{vs}")
        object.__setattr__(self, "constraints", cons)

    def check_signature(self, tmpl: FiniteStructure) -> None:
        arities = dict(tmpl.signature)
        for s, vs in self.constraints:
            if s not in arities:
                raise SignatureError(f"symbol {s} not in template signature")
            if arities[s] != len(vs):
                raise SignatureError(f"{s} used with arity {len(vs)}, template has {arities[s]}")


def graph_structure(g: Graph, symbol: str = "E") -> FiniteStructure:
    """A graph as a structure with one symmetric binary relation."""
    rel = set()
    for u, v in g.edges:
        rel.add((u, v))
        rel.add((v, u))
    return FiniteStructure(max(g.n, 1), ((symbol, 2),), {symbol: frozenset(rel)})


def graph_csp_instance(g: Graph, symbol: str = "E") -> StructureInstance:
    """One edge constraint per edge (u < v); targets use symmetric relations."""
    return StructureInstance(g.n, tuple((symbol, e) for e in sorted(g.edges)))


def structure_to_graph(s: FiniteStructure, symbol: str = "E") -> Graph:
    return Graph(s.domain_size, frozenset(norm_pair(u, v) for u, v in s.relations[symbol] if u != v))


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class CompletionYes:
    edges: frozenset[Pair]

    def graph(self, n: int) -> Graph:
        return Graph(n, self.edges)


@dataclass(frozen=True)
class HomYes:
    mapping: tuple[int, ...]


@dataclass(frozen=True)
class No:
    pass


NO = No()

Certificate = CompletionYes | HomYes | No


def is_yes(cert: Certificate) -> bool:
    return not isinstance(cert, No)


def completion_respects(inst: SandwichInstance, edges: Iterable[Pair]) -> bool:
    e = frozenset(norm_pair(u, v) for u, v in edges)
    return inst.forced <= e and not (e & inst.forbidden) and all(
        0 <= u < v < inst.n for u, v in e)


def hom_respects(inst: StructureInstance, tmpl: FiniteStructure, mapping: Sequence[int]) -> bool:
    if len(mapping) != inst.variable_count:
        return False
    if any(not 0 <= x < tmpl.domain_size for x in mapping):
        return False
    return all(tuple(mapping[v] for v in vs) in tmpl.relations[s] for s, vs in inst.constraints)
