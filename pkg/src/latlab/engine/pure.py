"""Pure-Python program interpreter.

Reference semantics for the compiled kernel: classical satisfaction with
quantifiers sweeping the carrier in canonical order, short-circuiting, and
per-quantifier memo tables keyed by the outer quantifier slots a subtree
reads.  Two universe flavours: bitmask set families (meet/join are & and |)
and table universes (meet/join/leq looked up in precomputed tables, used for
interval samples).
"""

from __future__ import annotations

from .compile import (K_ALL, K_AND, K_CONST0, K_CONST1, K_EQ, K_EX, K_IMPL,
                      K_JOIN, K_LE, K_MEET, K_NOT, K_OR, K_VAR, Program)

name = "pure"


def _mask_session(prog: Program, masks, full: int, param_idx: dict):
    """Build an evaluator closure over a mask universe; returns (ev, bind)."""
    kind, aa, bb = prog.kind, prog.a, prog.b
    m_arity, m_start, m_flat = prog.memo_arity, prog.memo_start, prog.memo_slots_flat
    env_val = [0] * prog.n_slots
    env_idx = [-1] * prog.n_slots
    for slot, idx in param_idx.items():
        env_val[slot] = masks[idx]
        env_idx[slot] = idx
    memo: list = [None] * prog.n_nodes

    def term(i: int) -> int:
        k = kind[i]
        if k == K_VAR:
            return env_val[aa[i]]
        if k == K_CONST0:
            return 0
        if k == K_CONST1:
            return full
        if k == K_MEET:
            return term(aa[i]) & term(bb[i])
        return term(aa[i]) | term(bb[i])  # K_JOIN

    def ev(i: int) -> bool:
        k = kind[i]
        if k == K_EQ:
            return term(aa[i]) == term(bb[i])
        if k == K_LE:
            l = term(aa[i])
            return l & term(bb[i]) == l
        if k == K_NOT:
            return not ev(aa[i])
        if k == K_AND:
            return ev(aa[i]) and ev(bb[i])
        if k == K_OR:
            return ev(aa[i]) or ev(bb[i])
        if k == K_IMPL:
            return (not ev(aa[i])) or ev(bb[i])
        key = None
        if m_arity[i] >= 0:
            s = m_start[i]
            key = tuple(env_idx[m_flat[s + j]] for j in range(m_arity[i]))
            table = memo[i]
            if table is None:
                table = memo[i] = {}
            hit = table.get(key)
            if hit is not None:
                return hit
        slot, body = aa[i], bb[i]
        want = k == K_EX  # exists stops on True, forall stops on False
        res = not want
        for idx, m in enumerate(masks):
            env_val[slot] = m
            env_idx[slot] = idx
            if ev(body) == want:
                res = want
                break
        if key is not None:
            memo[i][key] = res
        return res

    def bind(slot: int, idx: int):
        env_val[slot] = masks[idx]
        env_idx[slot] = idx

    return ev, bind


def eval_mask(prog: Program, masks, full: int, param_idx: dict) -> bool:
    ev, _ = _mask_session(prog, masks, full, param_idx)
    return ev(prog.root)


def witness_mask(prog: Program, masks, full: int, param_idx: dict):
    """First tuple (canonical index order) satisfying the matrix of the
    leading existential block, or None."""
    ev, bind = _mask_session(prog, masks, full, param_idx)
    slots = [s for s, _ in prog.exists_block]
    n = len(masks)
    out = [0] * len(slots)

    def scan(d: int) -> bool:
        if d == len(slots):
            return ev(prog.matrix_root)
        for idx in range(n):
            bind(slots[d], idx)
            out[d] = idx
            if scan(d + 1):
                return True
        return False

    return tuple(out) if scan(0) else None


def eval_table(prog: Program, n_quant: int, n_table: int, meet, join, leq,
               idx0: int, idx1: int, param_idx: dict) -> bool:
    """Universe given by op tables; values are indices below n_table,
    quantifiers sweep indices below n_quant."""
    kind, aa, bb = prog.kind, prog.a, prog.b
    m_arity, m_start, m_flat = prog.memo_arity, prog.memo_start, prog.memo_slots_flat
    env = [-1] * prog.n_slots
    for slot, idx in param_idx.items():
        env[slot] = idx
    memo: list = [None] * prog.n_nodes

    def term(i: int) -> int:
        k = kind[i]
        if k == K_VAR:
            return env[aa[i]]
        if k == K_CONST0:
            return idx0
        if k == K_CONST1:
            return idx1
        if k == K_MEET:
            return meet[term(aa[i]) * n_table + term(bb[i])]
        return join[term(aa[i]) * n_table + term(bb[i])]

    def ev(i: int) -> bool:
        k = kind[i]
        if k == K_EQ:
            return term(aa[i]) == term(bb[i])
        if k == K_LE:
            return bool(leq[term(aa[i]) * n_table + term(bb[i])])
        if k == K_NOT:
            return not ev(aa[i])
        if k == K_AND:
            return ev(aa[i]) and ev(bb[i])
        if k == K_OR:
            return ev(aa[i]) or ev(bb[i])
        if k == K_IMPL:
            return (not ev(aa[i])) or ev(bb[i])
        key = None
        if m_arity[i] >= 0:
            s = m_start[i]
            key = tuple(env[m_flat[s + j]] for j in range(m_arity[i]))
            table = memo[i]
            if table is None:
                table = memo[i] = {}
            hit = table.get(key)
            if hit is not None:
                return hit
        slot, body = aa[i], bb[i]
        want = k == K_EX
        res = not want
        for idx in range(n_quant):
            env[slot] = idx
            if ev(body) == want:
                res = want
                break
        if key is not None:
            memo[i][key] = res
        return res

    return ev(prog.root)


def is_separative(masks) -> bool:
    nonzero = [m for m in masks if m]
    for a in masks:
        for b in masks:
            if a & b == a:  # a <= b
                continue
            if not any(c & a == c and c & b == 0 for c in nonzero):
                return False
    return True


def is_normal(masks, full: int) -> bool:
    for a in masks:
        for b in masks:
            if a & b:
                continue
            ok = False
            for f in masks:
                if a & f:
                    continue
                for g in masks:
                    if b & g == 0 and f | g == full:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
    return True
