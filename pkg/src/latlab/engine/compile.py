"""Compile a formula AST into a flat node program.

Both interpreters (pure Python and the compiled kernel) walk the same arrays:
kind/a/b per node, variable slots for parameters and quantifiers, and per-
quantifier memo signatures (the outer quantifier slots its subtree reads).
Memoizing on those signatures is what keeps nested formulas like the cut
family polynomial in practice; parameters are fixed per evaluation and are
deliberately excluded from memo keys.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field

from ..errors import InputError
from ..formulas import ast

K_VAR, K_CONST0, K_CONST1, K_MEET, K_JOIN = 0, 1, 2, 3, 4
K_EQ, K_LE, K_NOT, K_AND, K_OR, K_IMPL, K_ALL, K_EX = 10, 11, 12, 13, 14, 15, 16, 17

MEMO_MAX_ARITY = 3


@dataclass
class Program:
    kind: array
    a: array
    b: array
    memo_arity: array        # per node, -1 = not memoized
    memo_start: array        # per node, offset into memo_slots_flat
    memo_slots_flat: array
    root: int
    n_slots: int
    param_slot: dict = field(default_factory=dict)   # name -> slot
    slot_names: list = field(default_factory=list)   # slot -> name
    exists_block: list = field(default_factory=list)  # [(slot, name)] leading existentials
    matrix_root: int = -1

    @property
    def n_nodes(self):
        return len(self.kind)


def compile_formula(formula) -> Program:
    ast.check_well_formed(formula)
    params = sorted(ast.free_names(formula))
    slot_of = {name: i for i, name in enumerate(params)}
    names = list(params)
    param_slots = set(range(len(params)))

    kind = array("i")
    aa = array("i")
    bb = array("i")
    memo_sets: list = []  # per node: None or sorted slot tuple

    def add(k, a=-1, b=-1, memo=None):
        kind.append(k)
        aa.append(a)
        bb.append(b)
        memo_sets.append(memo)
        return len(kind) - 1

    def walk_term(t):
        if isinstance(t, ast.Var):
            if t.name not in slot_of:
                raise InputError(f"unknown name {t.name!r} in term")
            s = slot_of[t.name]
            return add(K_VAR, s), {s}
        if isinstance(t, ast.Const):
            return add(K_CONST0 if t.value == 0 else K_CONST1), set()
        if isinstance(t, (ast.Meet, ast.Join)):
            l, ul = walk_term(t.left)
            r, ur = walk_term(t.right)
            return add(K_MEET if isinstance(t, ast.Meet) else K_JOIN, l, r), ul | ur
        raise InputError(f"not a term: {t!r}")

    def walk(f):
        if isinstance(f, (ast.Eq, ast.Le)):
            l, ul = walk_term(f.left)
            r, ur = walk_term(f.right)
            return add(K_EQ if isinstance(f, ast.Eq) else K_LE, l, r), ul | ur
        if isinstance(f, ast.Not):
            body, used = walk(f.body)
            return add(K_NOT, body), used
        if isinstance(f, (ast.And, ast.Or, ast.Implies)):
            k = {ast.And: K_AND, ast.Or: K_OR, ast.Implies: K_IMPL}[type(f)]
            l, ul = walk(f.left)
            r, ur = walk(f.right)
            return add(k, l, r), ul | ur
        if isinstance(f, (ast.Forall, ast.Exists)):
            s = len(names)
            slot_of[f.var] = s
            names.append(f.var)
            body, used = walk(f.body)
            used = (used - {s}) - param_slots
            memo = tuple(sorted(used)) if len(used) <= MEMO_MAX_ARITY else None
            node = add(K_ALL if isinstance(f, ast.Forall) else K_EX, s, body, memo)
            return node, used
        raise InputError(f"not a formula: {f!r}")

    root, _ = walk(formula)

    arity = array("i")
    start = array("i")
    flat = array("i")
    for memo in memo_sets:
        if memo is None:
            arity.append(-1)
            start.append(0)
        else:
            arity.append(len(memo))
            start.append(len(flat))
            flat.extend(memo)
    if not flat:
        flat.append(0)  # keep buffers non-empty for memoryview exports

    prog = Program(kind=kind, a=aa, b=bb, memo_arity=arity, memo_start=start,
                   memo_slots_flat=flat, root=root, n_slots=len(names),
                   param_slot={n: i for i, n in enumerate(params)},
                   slot_names=names)

    node, nid = formula, root
    while isinstance(node, ast.Exists):
        prog.exists_block.append((aa[nid], node.var))
        nid = bb[nid]
        node = node.body
    prog.matrix_root = nid
    return prog
