"""Instance maps between sandwich problems and from classical problems."""

from __future__ import annotations

from itertools import combinations

from .core import (
    Graph,
    SandwichInstance,
    StructureInstance,
    all_pairs,
    norm_pair,
)
from .errors import NotBipartiteError, RangeError


def colouring_to_sandwich(g: Graph) -> SandwichInstance:
    return SandwichInstance(g.n, g.edges, frozenset())


def complement_instance(inst: SandwichInstance) -> SandwichInstance:
    return SandwichInstance(inst.n, inst.forbidden, inst.forced)


def pq_padding(inst: SandwichInstance, p: int) -> SandwichInstance:
    """Add p+1 pairwise-forbidden vertices forced to every original vertex."""
    if p < 1:
        raise RangeError("p must be positive")
    n = inst.n
    new = range(n, n + p + 1)
    forced = set(inst.forced) | {(u, v) for u in range(n) for v in new}
    forbidden = set(inst.forbidden) | set(combinations(new, 2))
    return SandwichInstance(n + p + 1, frozenset(forced), frozenset(forbidden))


def universal_vertex_padding(inst: SandwichInstance) -> SandwichInstance:
    n = inst.n
    forced = set(inst.forced) | {(u, n) for u in range(n)}
    return SandwichInstance(n + 1, frozenset(forced), inst.forbidden)


def pendant_padding(inst: SandwichInstance) -> SandwichInstance:
    """One pendant u_v = n + v per vertex, forced to v and forbidden to everything else."""
    n = inst.n
    forced = set(inst.forced) | {(v, n + v) for v in range(n)}
    forbidden = set(inst.forbidden)
    for v in range(n):
        for w in range(n):
            if w != v:
                forbidden.add(norm_pair(n + v, w))
                forbidden.add(norm_pair(n + v, n + w))
    return SandwichInstance(2 * n, frozenset(forced), frozenset(forbidden))


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(all_pairs(n))}


def line_bip_to_a(inst: SandwichInstance) -> StructureInstance:
    """One variable per vertex pair (lexicographic order), a T constraint per
    triple, U_N on forbidden pairs and U_E on forced pairs."""
    if inst.n < 2:
        raise RangeError("line-graph reduction needs at least 2 vertices")
    idx = pair_index(inst.n)
    cons: list[tuple[str, tuple[int, ...]]] = []
    for u, v, w in combinations(range(inst.n), 3):
        cons.append(("T", (idx[u, v], idx[v, w], idx[u, w])))
    for p in sorted(inst.forbidden):
        cons.append(("U_N", (idx[p],)))
    for p in sorted(inst.forced):
        cons.append(("U_E", (idx[p],)))
    return StructureInstance(len(idx), tuple(cons))


def bipartition(g: Graph) -> list[int] | None:
    """Side (0/1) of each vertex, or None when g has an odd cycle."""
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.neighbours(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def t_target(n: int) -> int:
    """k_{i+2} for the largest i with k_i <= n (i = 0 when n < 5)."""
    k = 5
    while 3 * k <= n:
        k *= 3
    return 9 * k


def ham_path_to_cycle_family(g: Graph, s: int, t: int) -> Graph:
    """Append a path p_0 .. p_{l-1} (vertices n .. n+l-1) wired t - p_0 ... p_{l-1} - s.

    g has a Hamiltonian s-t path iff the result has a cycle whose length is
    5 * 3^i; any such cycle passes through p_0 = vertex n.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise RangeError("s and t must be vertices of g")
    if s == t:
        raise RangeError("s and t must differ")
    if bipartition(g) is None:
        raise NotBipartiteError("graph is not bipartite")
    n = g.n
    size = t_target(n)
    l = size - n
    edges = set(g.edges)
    edges.add(norm_pair(t, n))
    for i in range(l - 1):
        edges.add((n + i, n + i + 1))
    edges.add(norm_pair(n + l - 1, s))
    return Graph(size, frozenset(edges))


def has_ham_path(g: Graph, s: int, t: int) -> bool:
    """Brute-force Hamiltonian s-t path test by DFS with bitmasks."""
    full = (1 << g.n) - 1
    adj = g.adj

    def go(v: int, seen: int) -> bool:
        if seen == full:
            return v == t
        cand = adj[v] & ~seen
        if v == t:
            return False
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if go(w, seen | 1 << w):
                return True
        return False

    return go(s, 1 << s)
