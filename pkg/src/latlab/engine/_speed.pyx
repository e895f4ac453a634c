# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled quantifier-sweep kernel.

Mirrors latlab.engine.pure exactly: same node encoding, same sweep order,
same memo policy (flat tables per memoized quantifier node, keyed by the
outer quantifier slots of its subtree; skipped when the key space exceeds
MEMO_CAP entries).  The pure interpreter is the reference; differential
tests assert identical results.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

cdef enum:
    K_VAR = 0
    K_CONST0 = 1
    K_CONST1 = 2
    K_MEET = 3
    K_JOIN = 4
    K_EQ = 10
    K_LE = 11
    K_NOT = 12
    K_AND = 13
    K_OR = 14
    K_IMPL = 15
    K_ALL = 16
    K_EX = 17

DEF MEMO_CAP = 4194304  # max entries of one memo table


cdef struct Ctx:
    int* kind
    int* a
    int* b
    int* m_arity
    int* m_start
    int* m_flat
    int n_nodes
    int n_slots
    int n              # quantifier sweep size
    # mask universe
    unsigned long long* masks
    unsigned long long full
    unsigned long long* env_val
    # table universe
    int n_table
    unsigned int* meet
    unsigned int* join_
    unsigned char* leq
    int idx0
    int idx1
    # shared
    int* env_idx
    unsigned char** memo


cdef unsigned char* _memo_table(Ctx* c, int i) nogil:
    cdef long size = 1
    cdef int j
    if c.memo[i] == NULL:
        for j in range(c.m_arity[i]):
            size *= c.n
            if size > MEMO_CAP:
                return NULL
        c.memo[i] = <unsigned char*> malloc(size)
        if c.memo[i] == NULL:
            return NULL
        memset(c.memo[i], 0xFF, size)
    return c.memo[i]


cdef long _memo_key(Ctx* c, int i) nogil:
    cdef long key = 0
    cdef int j, s
    s = c.m_start[i]
    for j in range(c.m_arity[i]):
        key = key * c.n + c.env_idx[c.m_flat[s + j]]
    return key


cdef unsigned long long term_mask(Ctx* c, int i) nogil:
    cdef int k = c.kind[i]
    if k == K_VAR:
        return c.env_val[c.a[i]]
    if k == K_CONST0:
        return 0
    if k == K_CONST1:
        return c.full
    if k == K_MEET:
        return term_mask(c, c.a[i]) & term_mask(c, c.b[i])
    return term_mask(c, c.a[i]) | term_mask(c, c.b[i])


cdef int ev_mask(Ctx* c, int i) nogil:
    cdef int k = c.kind[i]
    cdef unsigned long long l
    cdef int slot, body, idx, res, want
    cdef unsigned char* table = NULL
    cdef long key = 0
    if k == K_EQ:
        return term_mask(c, c.a[i]) == term_mask(c, c.b[i])
    if k == K_LE:
        l = term_mask(c, c.a[i])
        return (l & term_mask(c, c.b[i])) == l
    if k == K_NOT:
        return not ev_mask(c, c.a[i])
    if k == K_AND:
        return ev_mask(c, c.a[i]) and ev_mask(c, c.b[i])
    if k == K_OR:
        return ev_mask(c, c.a[i]) or ev_mask(c, c.b[i])
    if k == K_IMPL:
        if not ev_mask(c, c.a[i]):
            return 1
        return ev_mask(c, c.b[i])
    # quantifier
    if c.m_arity[i] >= 0:
        table = _memo_table(c, i)
        if table != NULL:
            key = _memo_key(c, i)
            if table[key] != 0xFF:
                return table[key]
    slot = c.a[i]
    body = c.b[i]
    want = 1 if k == K_EX else 0
    res = 1 - want
    for idx in range(c.n):
        c.env_val[slot] = c.masks[idx]
        c.env_idx[slot] = idx
        if ev_mask(c, body) == want:
            res = want
            break
    if table != NULL:
        table[key] = <unsigned char> res
    return res


cdef int term_table(Ctx* c, int i) nogil:
    cdef int k = c.kind[i]
    if k == K_VAR:
        return c.env_idx[c.a[i]]
    if k == K_CONST0:
        return c.idx0
    if k == K_CONST1:
        return c.idx1
    if k == K_MEET:
        return c.meet[term_table(c, c.a[i]) * c.n_table + term_table(c, c.b[i])]
    return c.join_[term_table(c, c.a[i]) * c.n_table + term_table(c, c.b[i])]


cdef int ev_table(Ctx* c, int i) nogil:
    cdef int k = c.kind[i]
    cdef int slot, body, idx, res, want
    cdef unsigned char* table = NULL
    cdef long key = 0
    if k == K_EQ:
        return term_table(c, c.a[i]) == term_table(c, c.b[i])
    if k == K_LE:
        return c.leq[term_table(c, c.a[i]) * c.n_table + term_table(c, c.b[i])]
    if k == K_NOT:
        return not ev_table(c, c.a[i])
    if k == K_AND:
        return ev_table(c, c.a[i]) and ev_table(c, c.b[i])
    if k == K_OR:
        return ev_table(c, c.a[i]) or ev_table(c, c.b[i])
    if k == K_IMPL:
        if not ev_table(c, c.a[i]):
            return 1
        return ev_table(c, c.b[i])
    if c.m_arity[i] >= 0:
        table = _memo_table(c, i)
        if table != NULL:
            key = _memo_key(c, i)
            if table[key] != 0xFF:
                return table[key]
    slot = c.a[i]
    body = c.b[i]
    want = 1 if k == K_EX else 0
    res = 1 - want
    for idx in range(c.n):
        c.env_idx[slot] = idx
        if ev_table(c, body) == want:
            res = want
            break
    if table != NULL:
        table[key] = <unsigned char> res
    return res


cdef Ctx* _new_ctx(int[:] kind, int[:] a, int[:] b, int[:] m_arity, int[:] m_start,
                   int[:] m_flat, int n_slots, int n):
    cdef Ctx* c = <Ctx*> calloc(1, sizeof(Ctx))
    if c == NULL:
        raise MemoryError
    c.kind = &kind[0]
    c.a = &a[0]
    c.b = &b[0]
    c.m_arity = &m_arity[0]
    c.m_start = &m_start[0]
    c.m_flat = &m_flat[0]
    c.n_nodes = kind.shape[0]
    c.n_slots = n_slots
    c.n = n
    c.env_val = <unsigned long long*> calloc(max(n_slots, 1), sizeof(unsigned long long))
    c.env_idx = <int*> calloc(max(n_slots, 1), sizeof(int))
    c.memo = <unsigned char**> calloc(c.n_nodes, sizeof(void*))
    if c.env_val == NULL or c.env_idx == NULL or c.memo == NULL:
        _free_ctx(c)
        raise MemoryError
    return c


cdef void _free_ctx(Ctx* c):
    cdef int i
    if c == NULL:
        return
    if c.memo != NULL:
        for i in range(c.n_nodes):
            if c.memo[i] != NULL:
                free(c.memo[i])
        free(c.memo)
    if c.env_val != NULL:
        free(c.env_val)
    if c.env_idx != NULL:
        free(c.env_idx)
    free(c)


def eval_mask(int[:] kind, int[:] a, int[:] b, int[:] m_arity, int[:] m_start,
              int[:] m_flat, int root, int n_slots,
              unsigned long long[:] masks, unsigned long long full,
              int[:] pslots, int[:] pidxs, int n_params):
    cdef Ctx* c = _new_ctx(kind, a, b, m_arity, m_start, m_flat, n_slots, masks.shape[0])
    cdef int i, res
    c.masks = &masks[0]
    c.full = full
    for i in range(n_params):
        c.env_val[pslots[i]] = masks[pidxs[i]]
        c.env_idx[pslots[i]] = pidxs[i]
    try:
        res = ev_mask(c, root)
    finally:
        _free_ctx(c)
    return res


def witness_mask(int[:] kind, int[:] a, int[:] b, int[:] m_arity, int[:] m_start,
                 int[:] m_flat, int matrix_root, int n_slots,
                 unsigned long long[:] masks, unsigned long long full,
                 int[:] pslots, int[:] pidxs, int n_params,
                 int[:] block, int n_block, int[:] out):
    cdef Ctx* c = _new_ctx(kind, a, b, m_arity, m_start, m_flat, n_slots, masks.shape[0])
    cdef int i, found
    c.masks = &masks[0]
    c.full = full
    for i in range(n_params):
        c.env_val[pslots[i]] = masks[pidxs[i]]
        c.env_idx[pslots[i]] = pidxs[i]
    try:
        found = _scan(c, matrix_root, &block[0], n_block, 0, &out[0])
    finally:
        _free_ctx(c)
    return found


cdef int _scan(Ctx* c, int matrix_root, int* block, int n_block, int d, int* out) nogil:
    cdef int idx, slot
    if d == n_block:
        return ev_mask(c, matrix_root)
    slot = block[d]
    for idx in range(c.n):
        c.env_val[slot] = c.masks[idx]
        c.env_idx[slot] = idx
        out[d] = idx
        if _scan(c, matrix_root, block, n_block, d + 1, out):
            return 1
    return 0


def eval_table(int[:] kind, int[:] a, int[:] b, int[:] m_arity, int[:] m_start,
               int[:] m_flat, int root, int n_slots, int n_quant, int n_table,
               unsigned int[:] meet, unsigned int[:] join_, unsigned char[:] leq,
               int idx0, int idx1, int[:] pslots, int[:] pidxs, int n_params):
    cdef Ctx* c = _new_ctx(kind, a, b, m_arity, m_start, m_flat, n_slots, n_quant)
    cdef int i, res
    c.n_table = n_table
    c.meet = &meet[0]
    c.join_ = &join_[0]
    c.leq = &leq[0]
    c.idx0 = idx0
    c.idx1 = idx1
    for i in range(n_params):
        c.env_idx[pslots[i]] = pidxs[i]
    try:
        res = ev_table(c, root)
    finally:
        _free_ctx(c)
    return res


def is_separative(unsigned long long[:] masks):
    cdef int n = masks.shape[0]
    cdef int i, j, k, found
    cdef unsigned long long a, b, cm
    for i in range(n):
        a = masks[i]
        for j in range(n):
            b = masks[j]
            if (a & b) == a:
                continue
            found = 0
            for k in range(n):
                cm = masks[k]
                if cm != 0 and (cm & a) == cm and (cm & b) == 0:
                    found = 1
                    break
            if not found:
                return 0
    return 1


def is_normal(unsigned long long[:] masks, unsigned long long full):
    cdef int n = masks.shape[0]
    cdef int i, j, k, l, ok
    cdef unsigned long long a, b, f, g
    for i in range(n):
        a = masks[i]
        for j in range(n):
            b = masks[j]
            if a & b:
                continue
            ok = 0
            for k in range(n):
                f = masks[k]
                if a & f:
                    continue
                for l in range(n):
                    g = masks[l]
                    if (b & g) == 0 and (f | g) == full:
                        ok = 1
                        break
                if ok:
                    break
            if not ok:
                return 0
    return 1
