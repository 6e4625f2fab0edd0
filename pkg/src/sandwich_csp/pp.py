"""Primitive positive formulas, pp-powers and gadget reductions.

Variables inside a formula are names (strings).  A construction of
dimension d maps each target variable to d source variables; a target atom
S(v_1..v_k) becomes the atoms of the formula for S with its free variables
bound to the source copies and its existential variables made fresh.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .core import (
    FiniteStructure,
    Graph,
    SandwichInstance,
    StructureInstance,
    norm_pair,
)
from .errors import LoopAtomError, ParseError, RangeError, SignatureError, SizeError

Atom = tuple[str, tuple[str, ...]]

POWER_CAP = 10**4
NEQ = "NEQ"  # pseudo-symbol for native disequality in gadget output


@dataclass(frozen=True)
class PPFormula:
    free: tuple[str, ...]
    exist: tuple[str, ...] = ()
    atoms: tuple[Atom, ...] = ()
    eqs: tuple[tuple[str, str], ...] = ()
    neqs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(self.free))
        object.__setattr__(self, "exist", tuple(self.exist))
        object.__setattr__(self, "atoms", tuple((s, tuple(vs)) for s, vs in self.atoms))
        object.__setattr__(self, "eqs", tuple(tuple(p) for p in self.eqs))
        object.__setattr__(self, "neqs", tuple(tuple(p) for p in self.neqs))
        names = self.free + self.exist
        if len(set(names)) != len(names):
            raise SignatureError("formula declares a variable twice")
        declared = set(names)
        used = [v for _, vs in self.atoms for v in vs]
        used += [v for p in self.eqs + self.neqs for v in p]
        missing = sorted(set(used) - declared)
        if missing:
            raise SignatureError(f"undeclared variables {missing}")

    def check(self, sig: Mapping[str, int]) -> None:
        for s, vs in self.atoms:
            if s not in sig:
                raise SignatureError(f"symbol {s} not in source signature")
            if sig[s] != len(vs):
                raise SignatureError(f"{s} used with arity {len(vs)}, expected {sig[s]}")


@dataclass(frozen=True)
class PPConstruction:
    """Dimension, signatures and one formula per target symbol.

    ``equivalence`` (2d free variables) switches gadget reductions to
    occurrence copies linked by the equivalence gadget.  ``domain`` (d free
    variables) restricts the tuples of a pp-power and is imposed on every
    copy in a gadget reduction.  ``neq_gadget`` (2 free variables) replaces
    disequalities when the source has no native one; it is applied in both
    orientations.
    """

    dim: int
    source: tuple[tuple[str, int], ...]
    target: tuple[tuple[str, int], ...]
    formulas: Mapping[str, PPFormula]
    equivalence: PPFormula | None = None
    domain: PPFormula | None = None
    neq_gadget: PPFormula | None = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise RangeError("dimension must be positive")
        object.__setattr__(self, "source", tuple((s, int(a)) for s, a in self.source))
        object.__setattr__(self, "target", tuple((s, int(a)) for s, a in self.target))
        object.__setattr__(self, "formulas", dict(self.formulas))
        src = dict(self.source)
        for s, a in self.target:
            if s not in self.formulas:
                raise SignatureError(f"no formula for target symbol {s}")
            f = self.formulas[s]
            if len(f.free) != a * self.dim:
                raise SignatureError(f"formula for {s} needs {a * self.dim} free variables")
            f.check(src)
        extra = set(self.formulas) - {s for s, _ in self.target}
        if extra:
            raise SignatureError(f"formulas for undeclared symbols {sorted(extra)}")
        for f, k, what in ((self.equivalence, 2 * self.dim, "equivalence"),
                           (self.domain, self.dim, "domain"),
                           (self.neq_gadget, 2, "disequality gadget")):
            if f is not None:
                if len(f.free) != k:
                    raise SignatureError(f"{what} formula needs {k} free variables")
                f.check(src)


# -- pp-powers ------------------------------------------------------------------

def _satisfiable(f: PPFormula, tmpl: FiniteStructure, binding: dict[str, int]) -> bool:
    """Do witnesses for f's existential variables exist under ``binding``?"""
    d = tmpl.domain_size
    rels = tmpl.relations
    order = list(f.exist)
    constraints = [("atom", s, vs) for s, vs in f.atoms]
    constraints += [("eq", None, p) for p in f.eqs] + [("neq", None, p) for p in f.neqs]
    # attach each constraint to the last of its variables in the search order
    rank = {v: -1 for v in binding}
    rank.update({v: i for i, v in enumerate(order)})
    buckets: list[list] = [[] for _ in range(len(order) + 1)]
    for c in constraints:
        buckets[max(rank[v] for v in c[2]) + 1].append(c)
    val = dict(binding)

    def holds(c) -> bool:
        kind, s, vs = c
        if kind == "atom":
            return tuple(val[v] for v in vs) in rels[s]
        if kind == "eq":
            return val[vs[0]] == val[vs[1]]
        return val[vs[0]] != val[vs[1]]

    if not all(holds(c) for c in buckets[0]):
        return False

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for a in range(d):
            val[v] = a
            if all(holds(c) for c in buckets[i + 1]) and go(i + 1):
                return True
        del val[v]
        return False

    return go(0)


def pp_power(tmpl: FiniteStructure, con: PPConstruction) -> tuple[FiniteStructure, list[tuple[int, ...]]]:
    """The pp-power on d-tuples (those satisfying the domain formula, if any).

    Returns the structure and the list of d-tuples naming its elements.  The
    equivalence formula is not quotiented here.
    """
    sig = dict(tmpl.signature)
    for s, a in con.source:
        if sig.get(s) != a:
            raise SignatureError(f"template lacks source symbol {s}/{a}")
    d = con.dim
    if tmpl.domain_size ** d > POWER_CAP:
        raise SizeError("pp-power domain too large")
    tuples = list(product(range(tmpl.domain_size), repeat=d))
    if con.domain is not None:
        tuples = [t for t in tuples if _satisfiable(con.domain, tmpl, dict(zip(con.domain.free, t)))]
    if not tuples:
        raise RangeError("pp-power has an empty domain")
    index = {t: i for i, t in enumerate(tuples)}
    rels = {}
    for s, a in con.target:
        f = con.formulas[s]
        rel = set()
        for combo in product(tuples, repeat=a):
            flat = [x for t in combo for x in t]
            if _satisfiable(f, tmpl, dict(zip(f.free, flat))):
                rel.add(tuple(index[t] for t in combo))
        rels[s] = rel
    return FiniteStructure(len(tuples), con.target, rels), tuples


# -- gadget reductions ------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.count = 0
        self.atoms: list[tuple[str, tuple[int, ...]]] = []
        self.eqs: list[tuple[int, int]] = []
        self.neqs: list[tuple[int, int]] = []

    def fresh(self) -> int:
        self.count += 1
        return self.count - 1

    def instantiate(self, f: PPFormula, free_vals: Sequence[int]) -> None:
        env = dict(zip(f.free, free_vals))
        for w in f.exist:
            env[w] = self.fresh()
        for s, vs in f.atoms:
            self.atoms.append((s, tuple(env[v] for v in vs)))
        self.eqs.extend((env[a], env[b]) for a, b in f.eqs)
        self.neqs.extend((env[a], env[b]) for a, b in f.neqs)


def gadget_reduce(con: PPConstruction, inst: StructureInstance) -> StructureInstance:
    """Replace every constraint by its defining formula over fresh witnesses.

    With an equivalence formula each constraint position gets its own copy of
    the variable, consecutive copies being linked by the equivalence gadget;
    without one all occurrences share one copy.  Equalities merge variables.
    Disequalities go through ``neq_gadget`` both ways when present and are
    kept as ``NEQ`` atoms otherwise.
    """
    tsig = dict(con.target)
    for s, vs in inst.constraints:
        if s not in tsig:
            raise SignatureError(f"symbol {s} not in target signature")
        if tsig[s] != len(vs):
            raise SignatureError(f"{s} used with arity {len(vs)}, expected {tsig[s]}")
    d = con.dim
    b = _Builder()

    def new_copy() -> tuple[int, ...]:
        c = tuple(b.fresh() for _ in range(d))
        if con.domain is not None:
            b.instantiate(con.domain, c)
        return c

    copies: dict[tuple[int, int], tuple[int, ...]] = {}
    if con.equivalence is None:
        shared = [new_copy() for _ in range(inst.variable_count)]
        for ci, (_, vs) in enumerate(inst.constraints):
            for pos, v in enumerate(vs):
                copies[ci, pos] = shared[v]
    else:
        occurrences: list[list[tuple[int, int]]] = [[] for _ in range(inst.variable_count)]
        for ci, (_, vs) in enumerate(inst.constraints):
            for pos, v in enumerate(vs):
                occurrences[v].append((ci, pos))
        for v in range(inst.variable_count):
            if not occurrences[v]:
                new_copy()
                continue
            prev = None
            for occ in occurrences[v]:
                c = new_copy()
                copies[occ] = c
                if prev is not None:
                    b.instantiate(con.equivalence, prev + c)
                prev = c
    for ci, (s, vs) in enumerate(inst.constraints):
        flat = [x for pos in range(len(vs)) for x in copies[ci, pos]]
        b.instantiate(con.formulas[s], flat)

    neqs = list(b.neqs)
    b.neqs = []
    if con.neq_gadget is not None:
        for x, y in neqs:
            b.instantiate(con.neq_gadget, (x, y))
            b.instantiate(con.neq_gadget, (y, x))
        neqs = []

    # merge equalities, then renumber densely in order of first appearance
    parent = list(range(b.count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in b.eqs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    label: dict[int, int] = {}
    for x in range(b.count):
        r = find(x)
        if r not in label:
            label[r] = len(label)
    cons = [(s, tuple(label[find(v)] for v in vs)) for s, vs in b.atoms]
    cons += [(NEQ, (label[find(x)], label[find(y)])) for x, y in neqs]
    return StructureInstance(len(label), tuple(cons))


def coloured_to_sandwich(inst: StructureInstance) -> SandwichInstance:
    """Blue atoms become forced pairs, red atoms forbidden pairs."""
    forced, forbidden = set(), set()
    for s, vs in inst.constraints:
        if s not in ("B", "R"):
            raise SignatureError(f"symbol {s} has no sandwich meaning")
        u, v = vs
        if u == v:
            raise LoopAtomError(f"{s}({u},{u}) would need a loop")
        (forced if s == "B" else forbidden).add(norm_pair(u, v))
    return SandwichInstance(inst.variable_count, frozenset(forced), frozenset(forbidden))


def gadget_to_sandwich(con: PPConstruction, inst: StructureInstance) -> SandwichInstance:
    src = {s for s, _ in con.source}
    if not src <= {"B", "R"}:
        raise SignatureError("sandwich output needs a source signature within {B, R}")
    return coloured_to_sandwich(gadget_reduce(con, inst))


# -- builtins ----------------------------------------------------------------------

BR = (("B", 2), ("R", 2))


def c5_to_k5() -> PPConstruction:
    f = PPFormula(("x", "y"), ("z", "w"),
                  (("E", ("x", "z")), ("E", ("z", "w")), ("E", ("w", "y"))))
    return PPConstruction(1, (("E", 2),), (("E", 2),), {"E": f}, name="c5k5")


def split12_to_one_in_three() -> PPConstruction:
    tri = PPFormula(("x", "y", "z"), (),
                    (("B", ("x", "y")), ("B", ("y", "z")), ("B", ("x", "z"))))
    sim = PPFormula(
        ("x", "y"), ("z", "w1", "w2", "w3"),
        (("R", ("x", "z")), ("R", ("z", "y")),
         ("B", ("x", "w1")), ("B", ("x", "w2")), ("B", ("y", "w2")), ("B", ("y", "w3")),
         ("B", ("w1", "w2")), ("B", ("w2", "w3")),
         ("B", ("z", "w1")), ("B", ("z", "w2")), ("B", ("z", "w3"))),
    )
    return PPConstruction(1, BR, (("R", 3),), {"R": tri}, equivalence=sim, name="split12-1in3")


def betweenness_to_permutation() -> PPConstruction:
    f = PPFormula(
        ("x", "y", "z"), ("w1", "w2"),
        (("B", ("x", "w1")), ("B", ("w1", "y")), ("B", ("y", "w2")), ("B", ("w2", "z")),
         ("R", ("x", "y")), ("R", ("x", "w2")), ("R", ("x", "z")),
         ("R", ("w1", "w2")), ("R", ("w1", "z")), ("R", ("y", "z"))),
    )
    return PPConstruction(1, BR, (("Betw", 3),), {"Betw": f}, name="betweenness-perm")


def gamma_atoms(x1: str, x2: str, y1: str, y2: str, w: Sequence[str]) -> tuple[list[Atom], list]:
    """Atoms and disequalities of the 4-ary relation S, witnesses w[0..3]."""
    w1, w2, w3, w4 = w
    atoms = [
        ("B", (w1, w2)), ("B", (w2, w4)), ("B", (w4, w3)), ("B", (w3, w1)),
        ("B", (x1, w1)), ("B", (x2, w1)), ("R", (x1, w2)), ("R", (x2, w3)),
        ("B", (y1, w4)), ("B", (y2, w4)), ("R", (y1, w2)), ("R", (y2, w3)),
    ]
    return atoms, [(x1, x2), (y1, y2), (w2, w3)]


def gr_to_struct_a() -> PPConstruction:
    """2-dimensional construction of the pair-colouring template from the
    coloured rook's graph, with domain formula x != y."""
    free = ("x1", "y1", "x2", "y2", "x3", "y3")
    atoms: list[Atom] = []
    neqs: list = []
    exist = ["u", "v", "w"]
    for k, (a, b, c, e) in enumerate((("x1", "y1", "u", "v"),
                                      ("x2", "y2", "v", "w"),
                                      ("x3", "y3", "w", "u"))):
        ws = [f"s{k}w{i}" for i in range(1, 5)]
        exist += ws
        at, ne = gamma_atoms(a, b, c, e, ws)
        atoms += at
        neqs += ne
    t = PPFormula(free, tuple(exist), tuple(atoms), (), tuple(neqs))
    return PPConstruction(
        2, BR, (("U_N", 1), ("U_E", 1), ("T", 3)),
        {"U_N": PPFormula(("x", "y"), (), (("R", ("x", "y")),)),
         "U_E": PPFormula(("x", "y"), (), (("B", ("x", "y")),)),
         "T": t},
        domain=PPFormula(("x", "y"), (), (), (), (("x", "y"),)),
        neq_gadget=PPFormula(("x", "y"), ("w",), (("B", ("w", "x")), ("R", ("w", "y")))),
        name="gr-structA",
    )


BUILTIN_CONSTRUCTIONS = {
    "c5k5": c5_to_k5,
    "split12-1in3": split12_to_one_in_three,
    "betweenness-perm": betweenness_to_permutation,
    "gr-structA": gr_to_struct_a,
}


# -- finite grid stand-in -------------------------------------------------------------

# pair states as (same row, same column) bits; codes put "apart" last, which
# lets lowest-value-first search find placements quickly
_ROW, _COL, _CELL, _APART = 0, 1, 2, 3
_STATE_BITS = {_ROW: (1, 0), _COL: (0, 1), _CELL: (1, 1), _APART: (0, 0)}


def _grid_pairs_template() -> FiniteStructure:
    """TR keeps "same row" and "same column" transitive on a triangle (uv, vw, uw)."""
    tr = set()
    for t in product(range(4), repeat=3):
        rows = sum(_STATE_BITS[x][0] for x in t)
        cols = sum(_STATE_BITS[x][1] for x in t)
        if rows != 2 and cols != 2:
            tr.add(t)
    return FiniteStructure(4, (("TR", 3), ("B", 1), ("R", 1), (NEQ, 1)),
                           {"TR": tr, "B": {(_ROW,), (_COL,)}, "R": {(_APART,)},
                            NEQ: {(_ROW,), (_COL,), (_APART,)}})


def grid_placement(inst: StructureInstance, budget: int = 0) -> list[tuple[int, int]] | None:
    """Map a {B, R, NEQ} instance into the coloured rook's graph on an m x m grid
    (m = variable count), or None.

    Decided over vertex pairs: each pair is in one of four states, and every
    triangle must keep "same row" and "same column" transitive.  Rows and
    columns are then the classes of those two equivalences, numbered by
    first appearance, so m cells per axis always suffice.
    """
    from itertools import combinations

    from .core import HomYes
    from .finite_csp import hom_search

    n = inst.variable_count
    idx = {p: i for i, p in enumerate(combinations(range(n), 2))}
    cons = []
    for s, (u, v) in inst.constraints:
        if s not in ("B", "R", NEQ):
            raise SignatureError(f"grid template has no symbol {s}")
        if u == v:
            return None
        cons.append((s, (idx[norm_pair(u, v)],)))
    for u, v, w in combinations(range(n), 3):
        cons.append(("TR", (idx[u, v], idx[v, w], idx[u, w])))
    cert = hom_search(StructureInstance(len(idx), tuple(cons)), _grid_pairs_template(), budget=budget)
    if not isinstance(cert, HomYes):
        return None
    state = cert.mapping
    row = [-1] * n
    col = [-1] * n
    nr = nc = 0
    for v in range(n):
        for u in range(v):
            same_row, same_col = _STATE_BITS[state[idx[u, v]]]
            if same_row and row[v] < 0:
                row[v] = row[u]
            if same_col and col[v] < 0:
                col[v] = col[u]
        if row[v] < 0:
            row[v], nr = nr, nr + 1
        if col[v] < 0:
            col[v], nc = nc, nc + 1
    return list(zip(row, col))


def grid_placement_naive(inst: StructureInstance, budget: int = 0) -> list[tuple[int, int]] | None:
    """Direct cell-by-cell placement; exponential, used as a cross-check.

    Map a {B, R, NEQ} instance into the coloured rook's graph on an m x m grid
    (m = variable count): B needs distinct cells sharing a row or a column, R
    needs distinct rows and distinct columns, NEQ distinct cells.

    Rows and columns are introduced in order of first use, so each vertex
    only tries the used indices plus one fresh index.
    """
    n = inst.variable_count
    nbrs: list[list[tuple[int, str]]] = [[] for _ in range(n)]
    for s, (u, v) in ((s, vs) for s, vs in inst.constraints):
        if s not in ("B", "R", NEQ):
            raise SignatureError(f"grid template has no symbol {s}")
        if u == v:
            return None
        nbrs[u].append((v, s))
        nbrs[v].append((u, s))
    # order: repeatedly take the vertex with most placed neighbours
    order: list[int] = []
    placed = [False] * n
    score = [0] * n
    for _ in range(n):
        best = max((v for v in range(n) if not placed[v]), key=lambda v: (score[v], -v))
        order.append(best)
        placed[best] = True
        for w, _ in nbrs[best]:
            score[w] += 1
    pos: list[tuple[int, int] | None] = [None] * n
    nodes = 0

    def fits(v: int, r: int, c: int) -> bool:
        for w, s in nbrs[v]:
            p = pos[w]
            if p is None:
                continue
            same_r, same_c = p[0] == r, p[1] == c
            if s == "B" and same_r == same_c:
                return False
            if s == "R" and (same_r or same_c):
                return False
            if s == NEQ and same_r and same_c:
                return False
        return True

    def go(i: int, rows: int, cols: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        for r in range(rows + 1):
            for c in range(cols + 1):
                nodes += 1
                if budget and nodes > budget:
                    from .errors import BudgetExceeded
                    raise BudgetExceeded(nodes)
                if fits(v, r, c):
                    pos[v] = (r, c)
                    if go(i + 1, max(rows, r + 1), max(cols, c + 1)):
                        return True
                    pos[v] = None
        return False

    return [p for p in pos] if go(0, 0, 0) else None


def grid_graph(rows: int, cols: int) -> Graph:
    """Rook's graph: cells adjacent when they share exactly a row or a column."""
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    edges = [(i, j) for i in range(len(cells)) for j in range(i + 1, len(cells))
             if (cells[i][0] == cells[j][0]) != (cells[i][1] == cells[j][1])]
    return Graph(len(cells), frozenset(edges))


# -- .ppc text format ------------------------------------------------------------------

def _parse_sig(text: str, line: int) -> tuple[tuple[str, int], ...]:
    out = []
    for item in text.split(","):
        name, _, arity = item.partition("/")
        if not name or not arity.isdigit():
            raise ParseError(f"bad signature item {item!r}", line)
        out.append((name, int(arity)))
    return tuple(out)


def _fmt_sig(sig) -> str:
    return ",".join(f"{s}/{a}" for s, a in sig)


def parse_ppc(text: str) -> PPConstruction:
    """Read the .ppc format.

    ``ppc <d> <source sig> <target sig>`` (signatures as ``B/2,R/2``), then
    blocks opened by ``def <symbol> free ... [exist ...]``, ``equiv free ...``,
    ``domain free ...`` or ``neqgadget free ...``, each followed by
    ``atom``/``eq``/``neq`` lines.
    """
    header = None
    blocks: list[tuple[str, str | None, list[str], list[str], list, list, list, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if header is None:
            if tok[0] != "ppc" or len(tok) != 4 or not tok[1].isdigit():
                raise ParseError("expected header 'ppc <d> <source> <target>'", lineno)
            header = (int(tok[1]), _parse_sig(tok[2], lineno), _parse_sig(tok[3], lineno))
            continue
        kw = tok[0]
        if kw in ("def", "equiv", "domain", "neqgadget"):
            rest = tok[1:]
            sym = None
            if kw == "def":
                if not rest:
                    raise ParseError("def needs a symbol", lineno)
                sym, rest = rest[0], rest[1:]
            if not rest or rest[0] != "free":
                raise ParseError("expected 'free'", lineno)
            rest = rest[1:]
            if "exist" in rest:
                k = rest.index("exist")
                free, exist = rest[:k], rest[k + 1:]
            else:
                free, exist = rest, []
            blocks.append((kw, sym, free, exist, [], [], [], lineno))
        elif kw in ("atom", "eq", "neq"):
            if not blocks:
                raise ParseError(f"'{kw}' outside a block", lineno)
            blk = blocks[-1]
            if kw == "atom":
                if len(tok) < 3:
                    raise ParseError("atom needs a symbol and variables", lineno)
                blk[4].append((tok[1], tuple(tok[2:])))
            else:
                if len(tok) != 3:
                    raise ParseError(f"{kw} takes two variables", lineno)
                (blk[5] if kw == "eq" else blk[6]).append((tok[1], tok[2]))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno)
    if header is None:
        raise ParseError("missing header", 1)
    d, source, target = header
    formulas: dict[str, PPFormula] = {}
    extras: dict[str, PPFormula] = {}
    for kw, sym, free, exist, atoms, eqs, neqs, lineno in blocks:
        try:
            f = PPFormula(tuple(free), tuple(exist), tuple(atoms), tuple(eqs), tuple(neqs))
        except SignatureError as exc:
            raise ParseError(str(exc), lineno) from exc
        if kw == "def":
            if sym in formulas:
                raise ParseError(f"duplicate definition of {sym}", lineno)
            formulas[sym] = f
        else:
            extras[kw] = f
    return PPConstruction(d, source, target, formulas, extras.get("equiv"),
                          extras.get("domain"), extras.get("neqgadget"))


def emit_ppc(con: PPConstruction) -> str:
    lines = [f"ppc {con.dim} {_fmt_sig(con.source)} {_fmt_sig(con.target)}"]

    def block(head: str, f: PPFormula) -> None:
        h = f"{head} free {' '.join(f.free)}"
        if f.exist:
            h += f" exist {' '.join(f.exist)}"
        lines.append(h)
        lines.extend(f"atom {s} {' '.join(vs)}" for s, vs in f.atoms)
        lines.extend(f"eq {a} {b}" for a, b in f.eqs)
        lines.extend(f"neq {a} {b}" for a, b in f.neqs)

    for s, _ in con.target:
        block(f"def {s}", con.formulas[s])
    if con.equivalence is not None:
        block("equiv", con.equivalence)
    if con.domain is not None:
        block("domain", con.domain)
    if con.neq_gadget is not None:
        block("neqgadget", con.neq_gadget)
    return "\n".join(lines) + "\n"
