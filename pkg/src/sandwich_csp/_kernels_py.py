"""Pure-Python twin of the compiled search kernel in ``_kernels.pyx``.

Both expose the same flat-array interface; ``kernels.py`` picks one at
import.  Domains are bitmasks (domain size <= 64).  Constraint scopes must
hold distinct variables.
"""

SAT = 1
UNSAT = 0
BUDGET = -1


def gac_search(n_vars, domains, rel_arity, rel_off, rel_count, rel_data,
               cons_rel, cons_off, cons_data, var_off, var_data, budget):
    """Backtracking search with generalized arc consistency over table constraints.

    Returns ``(status, assignment, nodes)`` where ``assignment`` is a list of
    values when ``status == SAT`` and ``None`` otherwise.
    """
    dom = list(domains)
    n_cons = len(cons_rel)
    in_queue = [False] * n_cons
    trail = []  # (var, previous mask)
    nodes = 0

    def revise(c):
        r = cons_rel[c]
        k = rel_arity[r]
        base = cons_off[c]
        scope = cons_data[base:base + k]
        ds = [dom[x] for x in scope]
        sup = [0] * k
        off = rel_off[r]
        for t in range(rel_count[r]):
            row = off + t * k
            ok = True
            for j in range(k):
                if not ds[j] >> rel_data[row + j] & 1:
                    ok = False
                    break
            if ok:
                for j in range(k):
                    sup[j] |= 1 << rel_data[row + j]
        changed = []
        for j in range(k):
            nd = ds[j] & sup[j]
            if nd == 0:
                return None
            if nd != ds[j]:
                x = scope[j]
                trail.append((x, dom[x]))
                dom[x] = nd
                changed.append(x)
        return changed

    def propagate(queue):
        head = 0
        while head < len(queue):
            c = queue[head]
            head += 1
            in_queue[c] = False
            changed = revise(c)
            if changed is None:
                for c2 in queue[head:]:
                    in_queue[c2] = False
                return False
            for x in changed:
                for i in range(var_off[x], var_off[x + 1]):
                    c2 = var_data[i]
                    if c2 != c and not in_queue[c2]:
                        in_queue[c2] = True
                        queue.append(c2)
        return True

    for v in range(n_vars):
        if dom[v] == 0:
            return UNSAT, None, 0
    queue = list(range(n_cons))
    for c in queue:
        in_queue[c] = True
    if not propagate(queue):
        return UNSAT, None, 0

    # stack frames: (var, remaining values mask, trail mark)
    stack = []
    while True:
        var = -1
        best = 65
        for v in range(n_vars):
            d = dom[v]
            if d & (d - 1):
                cnt = d.bit_count()
                if cnt < best:
                    best = cnt
                    var = v
                    if cnt == 2:
                        break
        if var < 0:
            return SAT, [d.bit_length() - 1 for d in dom], nodes
        stack.append([var, dom[var], len(trail)])
        # try values from the top frame until one propagates, backtracking as needed
        while True:
            if not stack:
                return UNSAT, None, nodes
            frame = stack[-1]
            x, rest, mark = frame
            while len(trail) > mark:
                y, old = trail.pop()
                dom[y] = old
            if rest == 0:
                stack.pop()
                continue
            low = rest & -rest
            frame[1] = rest ^ low
            nodes += 1
            if budget > 0 and nodes > budget:
                return BUDGET, None, nodes
            trail.append((x, dom[x]))
            dom[x] = low
            queue = []
            for i in range(var_off[x], var_off[x + 1]):
                c2 = var_data[i]
                if not in_queue[c2]:
                    in_queue[c2] = True
                    queue.append(c2)
            if propagate(queue):
                break
