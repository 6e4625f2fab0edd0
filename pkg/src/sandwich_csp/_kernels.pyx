# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; mirrors ``_kernels_py.gac_search`` exactly."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

cdef enum:
    SAT = 1
    UNSAT = 0
    BUDGET = -1


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef struct Ctx:
    int n_vars
    int n_cons
    uint64_t* dom
    const int64_t* rel_arity
    const int64_t* rel_off
    const int64_t* rel_count
    const int64_t* rel_data
    const int64_t* cons_rel
    const int64_t* cons_off
    const int64_t* cons_data
    const int64_t* var_off
    const int64_t* var_data
    char* in_queue
    int* queue
    int qhead
    int qtail
    int qcap
    int* trail_var
    uint64_t* trail_old
    int trail_len
    int trail_cap


cdef int trail_push(Ctx* ctx, int x) noexcept nogil:
    cdef int newcap
    cdef int* tv
    cdef uint64_t* to
    cdef int i
    if ctx.trail_len == ctx.trail_cap:
        newcap = ctx.trail_cap * 2
        tv = <int*>malloc(newcap * sizeof(int))
        to = <uint64_t*>malloc(newcap * sizeof(uint64_t))
        if tv == NULL or to == NULL:
            return -1
        for i in range(ctx.trail_len):
            tv[i] = ctx.trail_var[i]
            to[i] = ctx.trail_old[i]
        free(ctx.trail_var)
        free(ctx.trail_old)
        ctx.trail_var = tv
        ctx.trail_old = to
        ctx.trail_cap = newcap
    ctx.trail_var[ctx.trail_len] = x
    ctx.trail_old[ctx.trail_len] = ctx.dom[x]
    ctx.trail_len += 1
    return 0


cdef inline void enqueue(Ctx* ctx, int c) noexcept nogil:
    # circular buffer of capacity n_cons + 1; in_queue guarantees no overflow
    if not ctx.in_queue[c]:
        ctx.in_queue[c] = 1
        ctx.queue[ctx.qtail] = c
        ctx.qtail += 1
        if ctx.qtail == ctx.qcap:
            ctx.qtail = 0


cdef int revise(Ctx* ctx, int c, uint64_t* ds, uint64_t* sup) noexcept nogil:
    """Returns 0 on wipeout, 1 otherwise; changed variables are enqueued."""
    cdef int r = <int>ctx.cons_rel[c]
    cdef int k = <int>ctx.rel_arity[r]
    cdef int64_t base = ctx.cons_off[c]
    cdef int64_t off = ctx.rel_off[r]
    cdef int64_t cnt = ctx.rel_count[r]
    cdef int64_t t, row
    cdef int j, x, i
    cdef uint64_t nd
    cdef bint ok
    for j in range(k):
        ds[j] = ctx.dom[ctx.cons_data[base + j]]
        sup[j] = 0
    for t in range(cnt):
        row = off + t * k
        ok = True
        for j in range(k):
            if not ((ds[j] >> ctx.rel_data[row + j]) & 1):
                ok = False
                break
        if ok:
            for j in range(k):
                sup[j] |= (<uint64_t>1) << ctx.rel_data[row + j]
    for j in range(k):
        nd = ds[j] & sup[j]
        if nd == 0:
            return 0
        if nd != ds[j]:
            x = <int>ctx.cons_data[base + j]
            if trail_push(ctx, x) < 0:
                return -1
            ctx.dom[x] = nd
            for i in range(<int>ctx.var_off[x], <int>ctx.var_off[x + 1]):
                if ctx.var_data[i] != c:
                    enqueue(ctx, <int>ctx.var_data[i])
    return 1


cdef int propagate(Ctx* ctx, uint64_t* ds, uint64_t* sup) noexcept nogil:
    cdef int c, res
    while ctx.qhead != ctx.qtail:
        c = ctx.queue[ctx.qhead]
        ctx.qhead += 1
        if ctx.qhead == ctx.qcap:
            ctx.qhead = 0
        ctx.in_queue[c] = 0
        res = revise(ctx, c, ds, sup)
        if res <= 0:
            while ctx.qhead != ctx.qtail:
                ctx.in_queue[ctx.queue[ctx.qhead]] = 0
                ctx.qhead += 1
                if ctx.qhead == ctx.qcap:
                    ctx.qhead = 0
            return res
    return 1


def gac_search(int n_vars, domains, rel_arity, rel_off, rel_count, rel_data,
               cons_rel, cons_off, cons_data, var_off, var_data, long long budget):
    cdef const int64_t[::1] m_rel_arity = rel_arity
    cdef const int64_t[::1] m_rel_off = rel_off
    cdef const int64_t[::1] m_rel_count = rel_count
    cdef const int64_t[::1] m_rel_data = rel_data
    cdef const int64_t[::1] m_cons_rel = cons_rel
    cdef const int64_t[::1] m_cons_off = cons_off
    cdef const int64_t[::1] m_cons_data = cons_data
    cdef const int64_t[::1] m_var_off = var_off
    cdef const int64_t[::1] m_var_data = var_data
    cdef const uint64_t[::1] m_dom = domains
    cdef Ctx ctx
    cdef int n_cons = m_cons_rel.shape[0]
    cdef int i, v, var, best, cnt, x, c, res, depth
    cdef int max_arity = 1
    cdef uint64_t d, rest, low
    cdef long long nodes = 0
    cdef int status = UNSAT
    cdef uint64_t* ds
    cdef uint64_t* sup
    cdef int* st_var
    cdef uint64_t* st_rest
    cdef int* st_mark

    for i in range(m_rel_arity.shape[0]):
        if m_rel_arity[i] > max_arity:
            max_arity = <int>m_rel_arity[i]

    ctx.n_vars = n_vars
    ctx.n_cons = n_cons
    ctx.dom = <uint64_t*>malloc((n_vars + 1) * sizeof(uint64_t))
    ctx.rel_arity = &m_rel_arity[0] if m_rel_arity.shape[0] else NULL
    ctx.rel_off = &m_rel_off[0] if m_rel_off.shape[0] else NULL
    ctx.rel_count = &m_rel_count[0] if m_rel_count.shape[0] else NULL
    ctx.rel_data = &m_rel_data[0] if m_rel_data.shape[0] else NULL
    ctx.cons_rel = &m_cons_rel[0] if n_cons else NULL
    ctx.cons_off = &m_cons_off[0] if m_cons_off.shape[0] else NULL
    ctx.cons_data = &m_cons_data[0] if m_cons_data.shape[0] else NULL
    ctx.var_off = &m_var_off[0]
    ctx.var_data = &m_var_data[0] if m_var_data.shape[0] else NULL
    ctx.in_queue = <char*>malloc(n_cons + 1)
    ctx.qcap = n_cons + 1
    ctx.queue = <int*>malloc(ctx.qcap * sizeof(int))
    ctx.qhead = 0
    ctx.qtail = 0
    ctx.trail_cap = 1024
    ctx.trail_len = 0
    ctx.trail_var = <int*>malloc(ctx.trail_cap * sizeof(int))
    ctx.trail_old = <uint64_t*>malloc(ctx.trail_cap * sizeof(uint64_t))
    ds = <uint64_t*>malloc(max_arity * sizeof(uint64_t))
    sup = <uint64_t*>malloc(max_arity * sizeof(uint64_t))
    st_var = <int*>malloc((n_vars + 1) * sizeof(int))
    st_rest = <uint64_t*>malloc((n_vars + 1) * sizeof(uint64_t))
    st_mark = <int*>malloc((n_vars + 1) * sizeof(int))
    if (ctx.dom == NULL or ctx.in_queue == NULL or ctx.queue == NULL or ctx.trail_var == NULL
            or ctx.trail_old == NULL or ds == NULL or sup == NULL or st_var == NULL
            or st_rest == NULL or st_mark == NULL):
        free(ctx.dom); free(ctx.in_queue); free(ctx.queue); free(ctx.trail_var)
        free(ctx.trail_old); free(ds); free(sup); free(st_var); free(st_rest); free(st_mark)
        raise MemoryError()

    try:
        for v in range(n_vars):
            ctx.dom[v] = m_dom[v]
        for c in range(n_cons):
            ctx.in_queue[c] = 0
        status = UNSAT
        for v in range(n_vars):
            if ctx.dom[v] == 0:
                return UNSAT, None, 0
        with nogil:
            for c in range(n_cons):
                enqueue(&ctx, c)
            res = propagate(&ctx, ds, sup)
        if res < 0:
            raise MemoryError()
        if res == 0:
            return UNSAT, None, 0

        depth = 0
        with nogil:
            while True:
                var = -1
                best = 65
                for v in range(n_vars):
                    d = ctx.dom[v]
                    if d & (d - 1):
                        cnt = popcount(d)
                        if cnt < best:
                            best = cnt
                            var = v
                            if cnt == 2:
                                break
                if var < 0:
                    status = SAT
                    break
                st_var[depth] = var
                st_rest[depth] = ctx.dom[var]
                st_mark[depth] = ctx.trail_len
                depth += 1
                while True:
                    if depth == 0:
                        status = UNSAT
                        break
                    x = st_var[depth - 1]
                    rest = st_rest[depth - 1]
                    while ctx.trail_len > st_mark[depth - 1]:
                        ctx.trail_len -= 1
                        ctx.dom[ctx.trail_var[ctx.trail_len]] = ctx.trail_old[ctx.trail_len]
                    if rest == 0:
                        depth -= 1
                        continue
                    low = rest & (~rest + 1)
                    st_rest[depth - 1] = rest ^ low
                    nodes += 1
                    if budget > 0 and nodes > budget:
                        status = BUDGET
                        break
                    if trail_push(&ctx, x) < 0:
                        status = -2
                        break
                    ctx.dom[x] = low
                    for i in range(<int>ctx.var_off[x], <int>ctx.var_off[x + 1]):
                        enqueue(&ctx, <int>ctx.var_data[i])
                    res = propagate(&ctx, ds, sup)
                    if res < 0:
                        status = -2
                        break
                    if res == 1:
                        break
                if depth == 0 or status == BUDGET or status == -2:
                    break
        if status == -2:
            raise MemoryError()
        if status == SAT:
            return SAT, [63 - __builtin_clzll(ctx.dom[v]) for v in range(n_vars)], nodes
        return status, None, nodes
    finally:
        free(ctx.dom); free(ctx.in_queue); free(ctx.queue); free(ctx.trail_var)
        free(ctx.trail_old); free(ds); free(sup); free(st_var); free(st_rest); free(st_mark)

