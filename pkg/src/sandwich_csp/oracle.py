"""Ground-truth sandwich solving.

``oracle_solve`` enumerates every completion; ``search_solve`` backtracks
over the undetermined pairs with sound pruning; ``partition_solve`` decides
(p,q)-split style classes by searching vertex bipartitions instead of
completions, which is what lets gadget outputs with a hundred open pairs be
checked exactly.
"""

from __future__ import annotations

from .core import (
    NO,
    Certificate,
    CompletionYes,
    Graph,
    SandwichInstance,
    completion_respects,
    is_yes,
    undetermined_pairs,
)
from .errors import BudgetExceeded, RangeError, SizeError
from .recognizers import (
    CliquePartition,
    GraphClass,
    PqSplit,
    Split,
    _complement_masks,
    bipartition_search,
    find_partial_copy,
    forbidden_patterns,
)

ORACLE_CAP = 25
DEFAULT_BUDGET = 10**7


def oracle_solve(inst: SandwichInstance, cls: GraphClass, cap: int = ORACLE_CAP) -> Certificate:
    """Lexicographically first completion in the class (first undetermined pair
    most significant, absent before present), or NO."""
    pairs = undetermined_pairs(inst)
    m = len(pairs)
    if m > cap:
        raise SizeError(f"{m} undetermined pairs exceeds the oracle cap {cap}")
    n = inst.n
    base = list(inst.forced_adj)
    forced = inst.forced
    for code in range(1 << m):
        adj = list(base)
        chosen = []
        for i, (u, v) in enumerate(pairs):
            if code >> (m - 1 - i) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                chosen.append((u, v))
        edges = forced.union(chosen)
        if cls.contains(Graph.trusted(n, edges, adj)):
            return CompletionYes(edges)
    return NO


def _colex(pairs):
    return sorted(pairs, key=lambda p: (p[1], p[0]))


def search_solve(inst: SandwichInstance, cls: GraphClass, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Backtracking over undetermined pairs in colex order (absent tried first).

    Pruning is sound for hereditary classes: once every pair inside
    {0..k} is decided the induced prefix must lie in the class, and when the
    class has a known obstruction set, a copy whose edges are all decided
    present and non-edges all decided absent kills the branch.
    Raises BudgetExceeded after ``budget`` nodes (0 = unlimited).
    """
    n = inst.n
    pairs = _colex(undetermined_pairs(inst))
    patterns = forbidden_patterns(cls) or ()
    yes = list(inst.forced_adj)
    no = list(inst.forbidden_adj)

    # prefix k is complete right after position closes[k]; -1 means from the start
    last_pos = {}
    for i, (_, v) in enumerate(pairs):
        last_pos[v] = i
    check_after: dict[int, list[int]] = {}
    done = -1
    for k in range(n):
        done = max(done, last_pos.get(k, -1))
        check_after.setdefault(done, []).append(k)

    def prefix_ok(k: int) -> bool:
        m = (1 << (k + 1)) - 1
        adj = [yes[v] & m for v in range(k + 1)]
        edges = frozenset((u, v) for v in range(k + 1) for u in range(v) if adj[v] >> u & 1)
        return cls.contains(Graph.trusted(k + 1, edges, adj))

    def patterns_ok() -> bool:
        return all(find_partial_copy(n, yes, no, f) is None for f in patterns)

    if not patterns_ok():
        return NO
    for k in check_after.get(-1, []):
        if not prefix_ok(k):
            return NO

    nodes = 0

    def go(i: int) -> bool:
        nonlocal nodes
        if i == len(pairs):
            return True
        u, v = pairs[i]
        bit_u, bit_v = 1 << u, 1 << v
        for present in (False, True):
            nodes += 1
            if budget and nodes > budget:
                raise BudgetExceeded(nodes)
            side = yes if present else no
            side[u] |= bit_v
            side[v] |= bit_u
            ok = patterns_ok() and all(prefix_ok(k) for k in check_after.get(i, []))
            if ok and go(i + 1):
                return True
            side[u] &= ~bit_v
            side[v] &= ~bit_u
        return False

    if n == 0:
        return CompletionYes(frozenset()) if cls.contains(Graph(0)) else NO
    if not go(0):
        return NO
    edges = frozenset((u, v) for v in range(n) for u in range(v) if yes[v] >> u & 1)
    return CompletionYes(edges)


def _partition_caps(cls: GraphClass) -> tuple[tuple, tuple]:
    if isinstance(cls, PqSplit):
        return (None, cls.p), (cls.q, None)
    if isinstance(cls, Split):
        return (None, 1), (1, None)
    if isinstance(cls, CliquePartition):
        return (cls.a, None), (cls.b, None)
    raise RangeError(f"no partition solver for class {cls.text}")


def partition_solve(inst: SandwichInstance, cls: GraphClass) -> Certificate:
    """Exact solver for bipartition classes (split, (p,q)-split, clique partition).

    Inside a part with an independence cap every open pair becomes an edge,
    inside a part with a clique cap every open pair stays absent; pairs across
    the parts do not matter and stay absent.  So the instance is YES iff some
    bipartition keeps forbidden-cliques within the first kind of cap and
    forced-cliques within the second.
    """
    a_caps, b_caps = _partition_caps(cls)
    n = inst.n
    a = bipartition_search(n, inst.forced_adj, inst.forbidden_adj, a_caps, b_caps)
    if a is None:
        return NO
    edges = set(inst.forced)
    if a_caps[1] is not None:
        members = [v for v in range(n) if a >> v & 1]
        edges.update((u, v) for i, u in enumerate(members) for v in members[i + 1:]
                     if (u, v) not in inst.forbidden)
    return CompletionYes(frozenset(edges))


def partition_witness_ok(g: Graph, cls: GraphClass) -> bool:
    """Recognizer for bipartition classes with no size cap (same search on g)."""
    a_caps, b_caps = _partition_caps(cls)
    return bipartition_search(g.n, g.adj, _complement_masks(g.adj), a_caps, b_caps) is not None


def validate(inst: SandwichInstance, cert: Certificate, cls: GraphClass | None = None) -> bool:
    """Generic certificate check: forced within, forbidden outside, class membership."""
    if not is_yes(cert):
        return True
    if not isinstance(cert, CompletionYes):
        return False
    if not completion_respects(inst, cert.edges):
        return False
    if cls is None:
        return True
    g = Graph(inst.n, cert.edges)
    if isinstance(cls, (PqSplit, CliquePartition)):
        # the class recognizers cap the vertex count; gadget outputs exceed it
        return partition_witness_ok(g, cls)
    return cls.contains(g)
