"""Homomorphism search for finite relational structures and polymorphism search."""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from . import kernels
from .core import (
    NO,
    Certificate,
    FiniteStructure,
    Graph,
    HomYes,
    StructureInstance,
    graph_csp_instance,
    graph_structure,
)
from .errors import BudgetExceeded, RangeError, SignatureError, SizeError

B, G, R = 0, 1, 2  # colour names for the domain of StructA


# -- builtin templates --------------------------------------------------------

def struct_a() -> FiniteStructure:
    """Three-element template whose CSP captures line graphs of bipartite graphs.

    Elements: 0 = b (vertical), 1 = g (horizontal), 2 = r (non-edge).  ``T`` is
    stored as the full symmetric closure of bbb, ggg, rrr, brr, grr, bgr.
    """
    base = [(B, B, B), (G, G, G), (R, R, R), (B, R, R), (G, R, R), (B, G, R)]
    t = set()
    for a, b, c in base:
        for p in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
            t.add(p)
    return FiniteStructure(
        3,
        (("U_N", 1), ("U_E", 1), ("T", 3)),
        {"U_N": {(R,)}, "U_E": {(B,), (G,)}, "T": t},
    )


def struct_k() -> FiniteStructure:
    """Two-element 2-edge-coloured template for split sandwiches.

    0 carries a red loop, 1 a blue loop, and 0-1 is both blue and red.
    """
    return FiniteStructure(
        2,
        (("B", 2), ("R", 2)),
        {"B": {(0, 1), (1, 0), (1, 1)}, "R": {(0, 0), (0, 1), (1, 0)}},
    )


def one_in_three() -> FiniteStructure:
    return FiniteStructure(2, (("R", 3),), {"R": {(0, 0, 1), (0, 1, 0), (1, 0, 0)}})


def clique(k: int) -> FiniteStructure:
    if k < 1:
        raise RangeError("clique size must be positive")
    return FiniteStructure(
        k, (("E", 2),), {"E": {(i, j) for i in range(k) for j in range(k) if i != j}}
    )


BUILTIN_TEMPLATES = {
    "structA": struct_a,
    "structK": struct_k,
    "one-in-three": one_in_three,
}


# -- homomorphism search ------------------------------------------------------

def _project(rel, pattern: tuple[int, ...], width: int) -> list[tuple[int, ...]]:
    """Tuples of ``rel`` consistent with the repetition pattern, one entry per distinct slot."""
    out = set()
    for t in rel:
        proj = [-1] * width
        for pos, slot in enumerate(pattern):
            if proj[slot] == -1:
                proj[slot] = t[pos]
            elif proj[slot] != t[pos]:
                break
        else:
            out.add(tuple(proj))
    return sorted(out)


class _Compiled:
    """A CSP instance flattened into the kernel's array layout."""

    def __init__(self, inst: StructureInstance, tmpl: FiniteStructure):
        inst.check_signature(tmpl)
        d = tmpl.domain_size
        if d > 64:
            raise SizeError("homomorphism search supports domains of at most 64 elements")
        full = (1 << d) - 1
        n = inst.variable_count
        dom = [full] * n
        rel_index: dict[tuple, int] = {}
        rels: list[list[tuple[int, ...]]] = []
        seen_cons: set[tuple[int, tuple[int, ...]]] = set()
        cons: list[tuple[int, tuple[int, ...]]] = []
        self.empty = False
        projections: dict[tuple, list[tuple[int, ...]]] = {}
        for sym, vs in inst.constraints:
            distinct = list(dict.fromkeys(vs))
            pattern = tuple(distinct.index(v) for v in vs)
            key = (sym, pattern)
            allowed = projections.get(key)
            if allowed is None:
                allowed = projections[key] = _project(tmpl.relations[sym], pattern, len(distinct))
            if len(distinct) == 1:
                mask = 0
                for (a,) in allowed:
                    mask |= 1 << a
                dom[distinct[0]] &= mask
                continue
            if key not in rel_index:
                rel_index[key] = len(rels)
                rels.append(allowed)
            c = (rel_index[key], tuple(distinct))
            if c not in seen_cons:
                seen_cons.add(c)
                cons.append(c)
        self.n = n
        self.domains = dom
        self.rel_arity = [len(r[0]) if r else 0 for r in rels]
        # arity of an empty relation is recovered from its pattern
        for key, idx in rel_index.items():
            self.rel_arity[idx] = max(key[1]) + 1
        self.rel_off, self.rel_count, self.rel_data = [], [], []
        for r in rels:
            self.rel_off.append(len(self.rel_data))
            self.rel_count.append(len(r))
            for t in r:
                self.rel_data.extend(t)
        self.cons_rel, self.cons_off, self.cons_data = [], [], []
        var_cons: list[list[int]] = [[] for _ in range(n)]
        for ci, (r, scope) in enumerate(cons):
            self.cons_rel.append(r)
            self.cons_off.append(len(self.cons_data))
            self.cons_data.extend(scope)
            for v in scope:
                var_cons[v].append(ci)
        self.var_off, self.var_data = [0], []
        for lst in var_cons:
            self.var_data.extend(lst)
            self.var_off.append(len(self.var_data))

    def run(self, budget: int, backend: str | None = None):
        return kernels.gac_search(
            self.n, self.domains, self.rel_arity, self.rel_off, self.rel_count,
            self.rel_data, self.cons_rel, self.cons_off, self.cons_data,
            self.var_off, self.var_data, budget, backend=backend,
        )


def hom_search(
    inst: StructureInstance,
    tmpl: FiniteStructure,
    budget: int = 0,
    backend: str | None = None,
) -> Certificate:
    """Decide whether ``inst`` maps homomorphically to ``tmpl``.

    Backtracking with generalized arc consistency; the variable with the
    smallest domain goes first (lowest index on ties) and values are tried in
    increasing order, so certificates are deterministic.  ``budget`` caps the
    number of search nodes (0 = unlimited) and raises ``BudgetExceeded``.
    """
    prob = _Compiled(inst, tmpl)
    status, assignment, nodes = prob.run(budget, backend)
    if status == kernels.BUDGET:
        raise BudgetExceeded(budget)
    if status == kernels.SAT:
        return HomYes(tuple(assignment))
    return NO


def graph_hom(g: Graph, h: Graph, budget: int = 0) -> Certificate:
    if h.n == 0:
        return HomYes(()) if g.n == 0 else NO
    return hom_search(graph_csp_instance(g), graph_structure(h), budget)


def brute_force_hom(inst: StructureInstance, tmpl: FiniteStructure) -> tuple[int, ...] | None:
    """Reference search over all maps; only for tiny instances."""
    inst.check_signature(tmpl)
    for m in product(range(tmpl.domain_size), repeat=inst.variable_count):
        if all(tuple(m[v] for v in vs) in tmpl.relations[s] for s, vs in inst.constraints):
            return m
    return None


# -- products -----------------------------------------------------------------

def encode_tuple(coords: Sequence[int], d: int) -> int:
    x = 0
    for c in coords:
        x = x * d + c
    return x


def decode_element(x: int, d: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(x % d)
        x //= d
    return tuple(reversed(out))


def structure_power(tmpl: FiniteStructure, k: int) -> FiniteStructure:
    """The k-fold product; elements are k-tuples encoded in base ``domain_size``
    with the first coordinate most significant."""
    if k < 1:
        raise RangeError("power must be at least 1")
    d = tmpl.domain_size
    if d ** k > 10**5:
        raise SizeError(f"{d}^{k} elements exceeds 10^5")
    rels = {}
    for sym, arity in tmpl.signature:
        out = set()
        for combo in product(sorted(tmpl.relations[sym]), repeat=k):
            out.add(tuple(encode_tuple([t[i] for t in combo], d) for i in range(arity)))
        rels[sym] = out
    return FiniteStructure(d**k, tmpl.signature, rels)


# -- Siggers polymorphisms ------------------------------------------------------

def _siggers_classes(d: int) -> list[int]:
    """Union-find representative for every cell of D^4 under
    f(a,r,e,a) = f(r,a,r,e)."""
    parent = list(range(d**4))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, r, e in product(range(d), repeat=3):
        x = find(encode_tuple((a, r, e, a), d))
        y = find(encode_tuple((r, a, r, e), d))
        if x != y:
            parent[max(x, y)] = min(x, y)
    return [find(x) for x in range(d**4)]


def siggers_instance(tmpl: FiniteStructure) -> StructureInstance:
    """CSP instance whose solutions in ``tmpl`` are the 4-ary Siggers polymorphisms.

    Variables are the cells of D^4 (merged along the identity); each 4-tuple
    of relation tuples contributes one constraint on its column cells.
    """
    d = tmpl.domain_size
    rep = _siggers_classes(d)
    cons = []
    seen = set()
    for sym, arity in tmpl.signature:
        tuples = sorted(tmpl.relations[sym])
        for combo in product(tuples, repeat=4):
            scope = tuple(rep[encode_tuple([t[i] for t in combo], d)] for i in range(arity))
            if (sym, scope) not in seen:
                seen.add((sym, scope))
                cons.append((sym, scope))
    return StructureInstance(d**4, tuple(cons))


def has_siggers(tmpl: FiniteStructure, budget: int = 0,
                backend: str | None = None) -> tuple[int, ...] | None:
    """Search for a 4-ary Siggers polymorphism.

    Returns the full operation table indexed by ``encode_tuple((x1, x2, x3, x4))``
    or ``None`` when none exists.
    """
    if tmpl.domain_size > 4:
        raise SizeError("Siggers search supports domains of at most 4 elements")
    cert = hom_search(siggers_instance(tmpl), tmpl, budget=budget, backend=backend)
    if isinstance(cert, HomYes):
        rep = _siggers_classes(tmpl.domain_size)
        return tuple(cert.mapping[rep[x]] for x in range(tmpl.domain_size**4))
    return None


def is_siggers_table(tmpl: FiniteStructure, table: Sequence[int]) -> bool:
    """Independent cell-by-cell check of the identity and of every relation."""
    d = tmpl.domain_size
    if len(table) != d**4 or any(not 0 <= x < d for x in table):
        return False
    for a, r, e in product(range(d), repeat=3):
        if table[encode_tuple((a, r, e, a), d)] != table[encode_tuple((r, a, r, e), d)]:
            return False
    return is_polymorphism(tmpl, table, 4)


def is_polymorphism(tmpl: FiniteStructure, table: Sequence[int], arity: int) -> bool:
    d = tmpl.domain_size
    for sym, k in tmpl.signature:
        rel = tmpl.relations[sym]
        for combo in product(rel, repeat=arity):
            image = tuple(table[encode_tuple([t[i] for t in combo], d)] for i in range(k))
            if image not in rel:
                return False
    return True


def siggers_identity_pairs(d: int) -> list[tuple[int, int]]:
    return [
        (encode_tuple((a, r, e, a), d), encode_tuple((r, a, r, e), d))
        for a, r, e in product(range(d), repeat=3)
    ]


def enumerate_polymorphisms_naive(
    tmpl: FiniteStructure,
    arity: int,
    siggers: bool = False,
    sample: int = 3,
    chunk: int = 4096,
) -> tuple[int, list[tuple[int, ...]]]:
    """Filter every operation table of the given arity.

    Returns the number of polymorphisms (optionally also satisfying the
    Siggers identity, arity 4 only) and up to ``sample`` of them in
    enumeration order.
    """
    d = tmpl.domain_size
    cells = d**arity
    total = d**cells
    if total > 10**6:
        raise SizeError(f"{total} candidate tables exceeds 10^6")
    if siggers and arity != 4:
        raise RangeError("the Siggers identity needs arity 4")
    # per relation: cell indices of every column, shape (combos, k)
    checks = []
    for sym, k in tmpl.signature:
        tuples = sorted(tmpl.relations[sym])
        if not tuples:
            continue
        cols = np.array(
            [[encode_tuple([t[i] for t in combo], d) for i in range(k)]
             for combo in product(tuples, repeat=arity)],
            dtype=np.int64,
        )
        member = np.zeros(d**k, dtype=bool)
        for t in tuples:
            member[encode_tuple(t, d)] = True
        weights = np.array([d ** (k - 1 - i) for i in range(k)], dtype=np.int64)
        checks.append((cols, member, weights))
    pairs = np.array(siggers_identity_pairs(d), dtype=np.int64) if siggers else None
    powers = np.array([d ** (cells - 1 - c) for c in range(cells)], dtype=np.int64)
    count = 0
    samples: list[tuple[int, ...]] = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        tables = (idx[:, None] // powers[None, :]) % d  # (m, cells)
        keep = np.ones(len(idx), dtype=bool)
        if pairs is not None:
            keep &= np.all(tables[:, pairs[:, 0]] == tables[:, pairs[:, 1]], axis=1)
        for cols, member, weights in checks:
            if not keep.any():
                break
            sub = tables[keep]
            images = sub[:, cols]  # (m, combos, k)
            codes = images @ weights
            ok = np.all(member[codes], axis=1)
            kidx = np.flatnonzero(keep)
            keep[kidx[~ok]] = False
        good = tables[keep]
        count += len(good)
        for row in good:
            if len(samples) < sample:
                samples.append(tuple(int(x) for x in row))
    return count, samples


def projection_table(d: int, arity: int, coord: int) -> tuple[int, ...]:
    return tuple(decode_element(x, d, arity)[coord] for x in range(d**arity))


def constant_table(d: int, arity: int, value: int) -> tuple[int, ...]:
    return (value,) * d**arity


def check_signatures_match(a: FiniteStructure, b: FiniteStructure) -> None:
    if a.signature != b.signature:
        raise SignatureError("structures have different signatures")
