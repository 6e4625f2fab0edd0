"""Membership tests for the graph classes the toolkit handles.

These are the ground truth for the oracle, so several of them are
deliberately exponential and guarded by size caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .core import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from .errors import RangeError, SizeError


# -- bitmask helpers ----------------------------------------------------------

def _full(n: int) -> int:
    return (1 << n) - 1


def _complement_masks(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    full = _full(n)
    return [full & ~a & ~(1 << v) for v, a in enumerate(adj)]


def has_clique(adj: Sequence[int], cand: int, size: int) -> bool:
    """Is there a clique of ``size`` vertices inside the vertex mask ``cand``?"""
    if size <= 0:
        return True
    if cand.bit_count() < size:
        return False
    if size == 1:
        return True
    while cand:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        if has_clique(adj, cand & adj[v], size - 1):
            return True
    return False


def clique_number(g: Graph) -> int:
    k = 0
    while has_clique(g.adj, _full(g.n), k + 1):
        k += 1
    return k


def _order_pattern(f: Graph) -> list[int]:
    """Pattern vertices in an order where each tends to touch earlier ones."""
    order: list[int] = []
    left = set(range(f.n))
    while left:
        start = max(left, key=lambda v: (f.degree(v), -v))
        order.append(start)
        left.remove(start)
        frontier = True
        while frontier:
            frontier = False
            best = None
            for v in sorted(left):
                links = sum(1 for u in order if f.has_edge(u, v))
                if links and (best is None or (links, f.degree(v)) > best[0]):
                    best = ((links, f.degree(v)), v)
            if best is not None:
                order.append(best[1])
                left.remove(best[1])
                frontier = True
    return order


def find_partial_copy(n: int, yes: Sequence[int], no: Sequence[int], f: Graph) -> list[int] | None:
    """Embed f so that its edges land on ``yes`` pairs and its non-edges on ``no``
    pairs (adjacency bitmasks over n vertices).  Returns images or None."""
    if f.n > 10:
        raise SizeError("forbidden patterns may have at most 10 vertices")
    if f.n > n:
        return None
    if f.n == 0:
        return []
    order = _order_pattern(f)
    fdeg = f.degrees()
    full = _full(n)
    ok_mask = []
    for v in range(f.n):
        m = 0
        for w in range(n):
            if yes[w].bit_count() >= fdeg[v] and no[w].bit_count() >= f.n - 1 - fdeg[v]:
                m |= 1 << w
        ok_mask.append(m)
    image = [-1] * f.n

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = full & ~used & ok_mask[v]
        for j in range(i):
            u = order[j]
            cand &= yes[image[u]] if f.adj[v] >> u & 1 else no[image[u]]
            if not cand:
                return False
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            image[v] = w
            if extend(i + 1, used | (1 << w)):
                return True
        image[v] = -1
        return False

    return list(image) if extend(0, 0) else None


def find_induced_copy(g: Graph, f: Graph) -> list[int] | None:
    """Images of f's vertices (in f's labelling) forming an induced copy, or None."""
    return find_partial_copy(g.n, g.adj, _complement_masks(g.adj), f)


def is_f_free(g: Graph, forbidden: Iterable[Graph]) -> bool:
    return all(find_induced_copy(g, f) is None for f in forbidden)


# -- obstruction families -----------------------------------------------------

TWO_K2 = disjoint_union(complete_graph(2), complete_graph(2))
C4 = cycle_graph(4)
C5 = cycle_graph(5)
P4 = path_graph(4)
CO_P3 = disjoint_union(complete_graph(2), empty_graph(1))  # K2 + K1

SPLIT_OBSTRUCTIONS = (TWO_K2, C4, C5)
THRESHOLD_OBSTRUCTIONS = (TWO_K2, C4, P4)


# -- class recognizers ----------------------------------------------------------

def is_split(g: Graph) -> bool:
    return is_f_free(g, SPLIT_OBSTRUCTIONS)


def split_partition(g: Graph) -> tuple[int, int] | None:
    """Exhaustive search for (clique mask, independent mask); n <= 20."""
    if g.n > 20:
        raise SizeError("partition search handles at most 20 vertices")
    full = _full(g.n)
    for k in range(1 << g.n):
        ok = True
        rest = full & ~k
        m = k
        while m and ok:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if (k & ~(1 << v)) & ~g.adj[v]:
                ok = False
        m = rest
        while m and ok:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if rest & g.adj[v]:
                ok = False
        if ok:
            return k, rest
    return None


def threshold_peel_order(g: Graph) -> list[tuple[int, str]] | None:
    """Removal sequence of (vertex, 'isolated'|'universal'), or None if stuck."""
    alive = _full(g.n)
    out = []
    while alive:
        for v in range(g.n):
            if not alive >> v & 1:
                continue
            nb = g.adj[v] & alive
            if nb == 0:
                out.append((v, "isolated"))
                break
            if nb == alive & ~(1 << v):
                out.append((v, "universal"))
                break
        else:
            return None
        alive &= ~(1 << out[-1][0])
    return out


def is_threshold(g: Graph) -> bool:
    return threshold_peel_order(g) is not None


def is_complete_multipartite(g: Graph) -> bool:
    """Non-adjacency is transitive: non-adjacent vertices share closed non-neighbourhoods."""
    co = _complement_masks(g.adj)
    for u, v in combinations(range(g.n), 2):
        if co[u] >> v & 1 and (co[u] | 1 << u) != (co[v] | 1 << v):
            return False
    return True


def has_odd_hole(adj: Sequence[int], min_len: int = 5) -> bool:
    """Induced odd cycle of length >= min_len, by induced-path DFS from the
    smallest vertex of each cycle."""
    n = len(adj)

    def dfs(s: int, path: list[int], on_path: int) -> bool:
        last = path[-1]
        cand = adj[last] & ~on_path & ~((1 << (s + 1)) - 1)
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            inner = on_path & ~(1 << s) & ~(1 << last)
            if adj[w] & inner:
                continue
            if adj[w] >> s & 1:
                length = len(path) + 1
                if length >= 4 and length >= min_len and length % 2 == 1:
                    return True
                continue
            path.append(w)
            if dfs(s, path, on_path | 1 << w):
                return True
            path.pop()
        return False

    for s in range(n):
        for p1 in range(s + 1, n):
            if adj[s] >> p1 & 1:
                if dfs(s, [s, p1], (1 << s) | (1 << p1)):
                    return True
    return False


def is_perfect_small(g: Graph) -> bool:
    if g.n > 12:
        raise SizeError("perfection test handles at most 12 vertices")
    return not has_odd_hole(g.adj) and not has_odd_hole(_complement_masks(g.adj))


def _part_ok(adj: Sequence[int], co: Sequence[int], part: int, v: int,
             clique_cap: int | None, indep_cap: int | None) -> bool:
    """Would adding v to ``part`` keep its clique/independence numbers within caps?"""
    if clique_cap is not None and has_clique(adj, part & adj[v], clique_cap):
        return False
    if indep_cap is not None and has_clique(co, part & co[v], indep_cap):
        return False
    return True


def _bipartition_search(g: Graph, a_caps: tuple, b_caps: tuple) -> bool:
    """Exists a vertex bipartition (A, B) meeting the (clique, independence) caps?"""
    return bipartition_search(g.n, g.adj, _complement_masks(g.adj), a_caps, b_caps) is not None


def bipartition_search(n: int, adj: Sequence[int], co: Sequence[int],
                       a_caps: tuple, b_caps: tuple) -> int | None:
    """Mask of part A for the first bipartition (A tried first per vertex) where
    cliques of ``adj`` and of ``co`` inside each part stay within the caps."""
    found = []

    def go(v: int, a: int, b: int) -> bool:
        if v == n:
            found.append(a)
            return True
        if _part_ok(adj, co, a, v, *a_caps) and go(v + 1, a | 1 << v, b):
            return True
        return _part_ok(adj, co, b, v, *b_caps) and go(v + 1, a, b | 1 << v)

    return found[0] if go(0, 0, 0) else None


def is_pq_split_small(g: Graph, p: int, q: int, max_n: int = 16) -> bool:
    """Partition into A with independence number <= p and B with clique number <= q."""
    if p < 1 or q < 1:
        raise RangeError("p and q must be positive")
    if g.n > max_n:
        raise SizeError(f"(p,q)-split test handles at most {max_n} vertices")
    return _bipartition_search(g, (None, p), (q, None))


def is_clique_partition_small(g: Graph, a: int, b: int, max_n: int = 16) -> bool:
    """Partition into two parts with clique numbers <= a and <= b."""
    if a < 1 or b < 1:
        raise RangeError("clique bounds must be positive")
    if g.n > max_n:
        raise SizeError(f"clique-partition test handles at most {max_n} vertices")
    return _bipartition_search(g, (a, None), (b, None))


def is_line_of_bipartite(g: Graph) -> bool:
    """Membership via the pair-colouring template; graphs on <= 1 vertex count
    as members."""
    if g.n < 2:
        return True
    from .core import graph_instance, is_yes
    from .finite_csp import hom_search, struct_a
    from .reductions import line_bip_to_a

    return is_yes(hom_search(line_bip_to_a(graph_instance(g)), struct_a()))


def co_twin_classes(g: Graph) -> list[list[int]]:
    """Classes of mutually adjacent vertices with equal closed neighbourhoods."""
    closed = [a | 1 << v for v, a in enumerate(g.adj)]
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(closed[v], []).append(v)
    return sorted(classes.values())


def is_line_of_bipartite_multi(g: Graph) -> bool:
    if g.n > 10:
        raise SizeError("multigraph line-graph test handles at most 10 vertices")
    reps = [cls[0] for cls in co_twin_classes(g)]
    return is_line_of_bipartite(induced_subgraph(g, reps))


def permutation_order(g: Graph, max_n: int = 8) -> list[int] | None:
    """A vertex order along which both adjacency and non-adjacency are
    transitive, i.e. a first line of a permutation model; None if absent."""
    if g.n > max_n:
        raise SizeError(f"permutation test handles at most {max_n} vertices")
    n = g.n
    adj = g.adj
    co = _complement_masks(adj)
    order: list[int] = []
    # earlier placed vertices adjacent / non-adjacent to each placed vertex
    before_e = [0] * n
    before_n = [0] * n

    def consistent(w: int) -> bool:
        for v in order:
            if adj[v] >> w & 1:
                if before_e[v] & ~adj[w]:
                    return False
            elif before_n[v] & ~co[w]:
                return False
        return True

    def go(used: int) -> bool:
        if len(order) == n:
            return True
        for w in range(n):
            if not used >> w & 1 and consistent(w):
                before_e[w] = used & adj[w]
                before_n[w] = used & co[w]
                order.append(w)
                if go(used | 1 << w):
                    return True
                order.pop()
        return False

    return list(order) if go(0) else None


def permutation_model(g: Graph, max_n: int = 8) -> tuple[list[int], list[int]] | None:
    """Positions of every vertex on the two lines, or None."""
    order = permutation_order(g, max_n)
    if order is None:
        return None
    top = [0] * g.n
    for i, v in enumerate(order):
        top[v] = i
    # bottom order: u before v iff (top[u] < top[v]) == (uv non-edge)
    from functools import cmp_to_key

    def cmp(u, v):
        before = (top[u] < top[v]) == (not g.has_edge(u, v))
        return -1 if before else 1

    bottom_seq = sorted(range(g.n), key=cmp_to_key(cmp))
    bottom = [0] * g.n
    for i, v in enumerate(bottom_seq):
        bottom[v] = i
    return top, bottom


def is_comparability(adj: Sequence[int]) -> bool:
    """Transitively orientable iff no implication class meets its reverse.

    Arcs (a,b) and (a,b') are forced together when bb' is a non-edge, and
    likewise (a,b), (a',b) when aa' is a non-edge.
    """
    n = len(adj)
    arcs = {}
    for a in range(n):
        for b in range(n):
            if adj[a] >> b & 1:
                arcs[a, b] = len(arcs)
    parent = list(range(len(arcs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a in range(n):
        nb = [b for b in range(n) if adj[a] >> b & 1]
        for i, b in enumerate(nb):
            for c in nb[i + 1:]:
                if not adj[b] >> c & 1:
                    union(arcs[a, b], arcs[a, c])
                    union(arcs[b, a], arcs[c, a])
    return all(find(arcs[a, b]) != find(arcs[b, a]) for a, b in arcs if a < b)


def is_permutation_small(g: Graph, max_n: int = 8) -> bool:
    """Both g and its complement transitively orientable (Dushnik-Miller);
    ``permutation_order`` is the exhaustive cross-check."""
    if g.n > max_n:
        raise SizeError(f"permutation test handles at most {max_n} vertices")
    return is_comparability(g.adj) and is_comparability(_complement_masks(g.adj))


# -- cycle families ---------------------------------------------------------------

def in_t(m: int) -> bool:
    """Is m = 5 * 3^i for some i >= 0?"""
    if m < 1:
        raise RangeError("m must be positive")
    if m % 5:
        return False
    m //= 5
    while m % 3 == 0:
        m //= 3
    return m == 1


def t_sequence(upto: int) -> list[int]:
    out, k = [], 5
    while k <= upto:
        out.append(k)
        k *= 3
    return out


@dataclass(frozen=True)
class ExplicitSet:
    lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(sorted(set(int(x) for x in self.lengths)))
        if not lengths or any(x < 5 for x in lengths):
            raise RangeError("explicit cycle lengths must be >= 5")
        object.__setattr__(self, "lengths", lengths)

    def __contains__(self, m: int) -> bool:
        return m in self.lengths

    @property
    def text(self) -> str:
        return ",".join(map(str, self.lengths))


@dataclass(frozen=True)
class GeometricT:
    def __contains__(self, m: int) -> bool:
        return m >= 1 and in_t(m)

    @property
    def text(self) -> str:
        return "T"


FamilySpec = ExplicitSet | GeometricT


def contains_cycle_in(g: Graph, spec: FamilySpec, anchor: int | None = None,
                      max_vertices: int = 20) -> bool:
    """Does g contain a (not necessarily induced) cycle whose length is in the family?

    With ``anchor`` only cycles through that vertex are enumerated.
    """
    if g.n > max_vertices:
        raise SizeError(f"cycle search handles at most {max_vertices} vertices")
    lengths = [m for m in range(3, g.n + 1) if m in spec]
    if not lengths:
        return False
    longest = max(lengths)
    wanted = set(lengths)
    adj = g.adj

    def dfs(s: int, last: int, depth: int, on_path: int, allowed: int) -> bool:
        cand = adj[last] & allowed & ~on_path
        if depth >= 3 and adj[last] >> s & 1 and depth in wanted:
            return True
        if depth == longest:
            return False
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if dfs(s, w, depth + 1, on_path | 1 << w, allowed):
                return True
        return False

    full = _full(g.n)
    starts = [anchor] if anchor is not None else range(g.n)
    for s in starts:
        allowed = full if anchor is not None else full & ~((1 << (s + 1)) - 1)
        if dfs(s, s, 1, 1 << s, allowed):
            return True
    return False


# -- class identifiers --------------------------------------------------------------

class GraphClass:
    """Common interface: ``contains(g)`` plus the CLI name in ``text``."""

    text: str = ""

    def contains(self, g: Graph) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, g: Graph) -> bool:
        return self.contains(g)


@dataclass(frozen=True)
class Split(GraphClass):
    text = "split"

    def contains(self, g):
        return is_split(g)


@dataclass(frozen=True)
class Threshold(GraphClass):
    text = "threshold"

    def contains(self, g):
        return is_threshold(g)


@dataclass(frozen=True)
class CompleteMultipartite(GraphClass):
    text = "multipartite"

    def contains(self, g):
        return is_complete_multipartite(g)


@dataclass(frozen=True)
class FFree(GraphClass):
    forbidden: tuple[Graph, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        if not self.forbidden:
            raise RangeError("FFree needs at least one forbidden graph")
        if any(f.n > 10 for f in self.forbidden):
            raise SizeError("forbidden patterns may have at most 10 vertices")

    @property
    def text(self):
        return "ffree:" + (self.label or ",".join(f"<{f.n}v/{len(f.edges)}e>" for f in self.forbidden))

    def contains(self, g):
        return is_f_free(g, self.forbidden)


@dataclass(frozen=True)
class PerfectKkFree(GraphClass):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise RangeError("k must be positive")

    @property
    def text(self):
        return f"perfect-kfree:{self.k}"

    def contains(self, g):
        return not has_clique(g.adj, _full(g.n), self.k) and is_perfect_small(g)


@dataclass(frozen=True)
class PqSplit(GraphClass):
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise RangeError("p and q must be positive")

    @property
    def text(self):
        return f"pqsplit:{self.p},{self.q}"

    def contains(self, g):
        return is_pq_split_small(g, self.p, self.q)


@dataclass(frozen=True)
class CliquePartition(GraphClass):
    """Vertex set splits into parts of clique number <= a and <= b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise RangeError("clique bounds must be positive")

    @property
    def text(self):
        return f"cliquepart:{self.a},{self.b}"

    def contains(self, g):
        return is_clique_partition_small(g, self.a, self.b)


@dataclass(frozen=True)
class LineOfBipartite(GraphClass):
    text = "line-bip"

    def contains(self, g):
        return is_line_of_bipartite(g)


@dataclass(frozen=True)
class LineOfBipartiteMulti(GraphClass):
    text = "line-bip-multi"

    def contains(self, g):
        return is_line_of_bipartite_multi(g)


@dataclass(frozen=True)
class Permutation(GraphClass):
    text = "permutation"

    def contains(self, g):
        return is_permutation_small(g)


@dataclass(frozen=True)
class CycleFamilyFree(GraphClass):
    spec: FamilySpec

    @property
    def text(self):
        return f"cyclefam:{self.spec.text}"

    def contains(self, g):
        return not contains_cycle_in(g, self.spec)


@dataclass(frozen=True)
class PnKkFree(GraphClass):
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise RangeError("n and k must be positive")

    @property
    def text(self):
        return f"pnkk:{self.n},{self.k}"

    @property
    def forbidden(self) -> tuple[Graph, Graph]:
        return (path_graph(self.n), complete_graph(self.k))

    def contains(self, g):
        return is_f_free(g, self.forbidden)


def forbidden_patterns(cls: GraphClass) -> tuple[Graph, ...] | None:
    """A finite induced-obstruction set for the class, when one is known."""
    if isinstance(cls, (FFree, PnKkFree)):
        return tuple(cls.forbidden)
    if isinstance(cls, Split):
        return SPLIT_OBSTRUCTIONS
    if isinstance(cls, Threshold):
        return THRESHOLD_OBSTRUCTIONS
    if isinstance(cls, CompleteMultipartite):
        return (CO_P3,)
    return None


def parse_class(text: str, graph_loader=None) -> GraphClass:
    """Parse a CLI class name such as ``pqsplit:1,2`` or ``cyclefam:T``.

    ``graph_loader`` maps a file name to a Graph (needed for ``ffree:``).
    """
    name, _, arg = text.partition(":")
    simple = {
        "split": Split,
        "threshold": Threshold,
        "multipartite": CompleteMultipartite,
        "line-bip": LineOfBipartite,
        "line-bip-multi": LineOfBipartiteMulti,
        "permutation": Permutation,
    }
    try:
        if name in simple:
            if arg:
                raise ValueError(f"class {name} takes no parameters")
            return simple[name]()
        if name == "ffree":
            if graph_loader is None:
                raise ValueError("ffree needs a graph loader")
            files = [f for f in arg.split(",") if f]
            return FFree(tuple(graph_loader(f) for f in files), label=arg)
        if name == "perfect-kfree":
            return PerfectKkFree(int(arg))
        if name == "pqsplit":
            p, q = arg.split(",")
            return PqSplit(int(p), int(q))
        if name == "cliquepart":
            a, b = arg.split(",")
            return CliquePartition(int(a), int(b))
        if name == "cyclefam":
            if arg == "T":
                return CycleFamilyFree(GeometricT())
            return CycleFamilyFree(ExplicitSet(tuple(int(x) for x in arg.split(","))))
        if name == "pnkk":
            n, k = arg.split(",")
            return PnKkFree(int(n), int(k))
    except (TypeError, ValueError) as exc:
        raise RangeError(f"bad class specification {text!r}: {exc}") from exc
    raise RangeError(f"unknown class {text!r}")
