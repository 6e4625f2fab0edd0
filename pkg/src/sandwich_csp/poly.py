"""Polynomial-time sandwich solvers: complete multipartite, split, threshold."""

from __future__ import annotations

from itertools import combinations

from .core import NO, Certificate, CompletionYes, Graph, SandwichInstance, all_pairs
from .recognizers import is_complete_multipartite, is_split, is_threshold


class CertificateError(AssertionError):
    """A solver produced a completion its recognizer rejects."""


def _gate(inst: SandwichInstance, edges, recognizer) -> CompletionYes:
    edges = frozenset(edges)
    if not inst.forced <= edges or edges & inst.forbidden:
        raise CertificateError("completion violates the instance")
    if not recognizer(Graph(inst.n, edges)):
        raise CertificateError("completion rejected by recognizer")
    return CompletionYes(edges)


def closure_fixpoint(n: int, seed, blocked) -> tuple[set[tuple[int, int]] | None, int]:
    """Close ``seed`` under xy, yz => xz, rejecting once it meets ``blocked``.

    Returns (closure or None, number of rounds).
    """
    rel = [0] * n
    for u, v in seed:
        rel[u] |= 1 << v
        rel[v] |= 1 << u
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for y in range(n):
            m = rel[y]
            while m:
                x = (m & -m).bit_length() - 1
                m &= m - 1
                new = rel[y] & ~rel[x] & ~(1 << x)
                if new:
                    rel[x] |= new
                    w = new
                    while w:
                        z = (w & -w).bit_length() - 1
                        w &= w - 1
                        rel[z] |= 1 << x
                    changed = True
    closure = {(u, v) for u, v in all_pairs(n) if rel[u] >> v & 1}
    if any(p in closure for p in blocked):
        return None, rounds
    return closure, rounds


def solve_multipartite(inst: SandwichInstance) -> Certificate:
    """Non-adjacency in a complete multipartite graph is an equivalence, so the
    forbidden pairs are closed transitively and must avoid every forced pair.
    The parts are the classes of the closure."""
    closure, _ = closure_fixpoint(inst.n, inst.forbidden, inst.forced)
    if closure is None:
        return NO
    edges = [p for p in all_pairs(inst.n) if p not in closure]
    return _gate(inst, edges, is_complete_multipartite)


def _scc(n: int, succ: list[list[int]]) -> list[int]:
    """Tarjan's algorithm, iterative; components numbered in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def two_sat(n_vars: int, clauses) -> list[bool] | None:
    """Clauses are pairs of literals; literal 2*v is x_v, 2*v+1 is not x_v."""
    succ: list[list[int]] = [[] for _ in range(2 * n_vars)]
    for a, b in clauses:
        succ[a ^ 1].append(b)
        succ[b ^ 1].append(a)
    comp = _scc(2 * n_vars, succ)
    out = []
    for v in range(n_vars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        out.append(comp[2 * v] < comp[2 * v + 1])
    return out


def split_assignment(inst: SandwichInstance) -> list[bool] | None:
    """Clique-side indicator per vertex, or None when no split completion exists."""
    clauses = [(2 * u, 2 * v) for u, v in sorted(inst.forced)]
    clauses += [(2 * u + 1, 2 * v + 1) for u, v in sorted(inst.forbidden)]
    return two_sat(inst.n, clauses)


def solve_split(inst: SandwichInstance) -> Certificate:
    x = split_assignment(inst)
    if x is None:
        return NO
    clique = [v for v in range(inst.n) if x[v]]
    edges = set(inst.forced) | set(combinations(clique, 2))
    return _gate(inst, edges, is_split)


def threshold_peel(inst: SandwichInstance, tie: str = "low") -> list[tuple[int, bool]] | None:
    """Removal order of (vertex, removed-as-universal), or None if stuck."""
    if tie not in ("low", "high"):
        raise ValueError("tie must be 'low' or 'high'")
    fa, fb = inst.forced_adj, inst.forbidden_adj
    alive = (1 << inst.n) - 1
    order = range(inst.n) if tie == "low" else range(inst.n - 1, -1, -1)
    out = []
    while alive:
        for v in order:
            if not alive >> v & 1:
                continue
            if not fa[v] & alive:
                out.append((v, False))
                break
            if not fb[v] & alive:
                out.append((v, True))
                break
        else:
            return None
        alive &= ~(1 << out[-1][0])
    return out


def solve_threshold(inst: SandwichInstance, tie: str = "low") -> Certificate:
    peel = threshold_peel(inst, tie)
    if peel is None:
        return NO
    edges = set()
    later: list[int] = []  # vertices still present when v was removed
    for v, universal in reversed(peel):
        if universal:
            edges.update((min(u, v), max(u, v)) for u in later)
        later.append(v)
    return _gate(inst, edges, is_threshold)


POLY_SOLVERS = {
    "split": solve_split,
    "threshold": solve_threshold,
    "multipartite": solve_multipartite,
}
