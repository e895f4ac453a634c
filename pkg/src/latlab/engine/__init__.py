"""Formula evaluation over finite lattices and table universes.

Two interchangeable backends implement the same program interpreter: a
compiled Cython kernel (built at install time) and a pure-Python fallback.
The kernel is selected automatically at import when present; set_backend
forces a choice, which tests and the benchmark use to compare the two.
Results are identical by construction -- both walk the same compiled
program with the same sweep order.
"""

from __future__ import annotations

from array import array
from functools import lru_cache

from ..errors import InputError
from .compile import Program, compile_formula

from . import pure

try:
    from . import _speed
except ImportError:  # extension not built; pure fallback
    _speed = None


class _PureBackend:
    name = "pure"

    @staticmethod
    def eval_mask(prog, masks, full, param_idx):
        return pure.eval_mask(prog, masks, full, param_idx)

    @staticmethod
    def witness_mask(prog, masks, full, param_idx):
        return pure.witness_mask(prog, masks, full, param_idx)

    @staticmethod
    def eval_table(prog, n_quant, n_table, meet, join, leq, idx0, idx1, param_idx):
        return pure.eval_table(prog, n_quant, n_table, meet, join, leq, idx0, idx1, param_idx)

    @staticmethod
    def is_separative(masks):
        return pure.is_separative(masks)

    @staticmethod
    def is_normal(masks, full):
        return pure.is_normal(masks, full)


@lru_cache(maxsize=128)
def _mask_buffer(masks: tuple) -> array:
    return array("Q", masks)


def _param_buffers(param_idx: dict):
    slots = array("i", sorted(param_idx))
    idxs = array("i", [param_idx[s] for s in slots])
    if not slots:
        slots.append(0)
        idxs.append(0)
        return slots, idxs, 0
    return slots, idxs, len(param_idx)


class _SpeedBackend:
    name = "compiled"

    @staticmethod
    def eval_mask(prog, masks, full, param_idx):
        ps, pi, np_ = _param_buffers(param_idx)
        res = _speed.eval_mask(prog.kind, prog.a, prog.b, prog.memo_arity,
                               prog.memo_start, prog.memo_slots_flat, prog.root,
                               prog.n_slots, _mask_buffer(tuple(masks)), full,
                               ps, pi, np_)
        return bool(res)

    @staticmethod
    def witness_mask(prog, masks, full, param_idx):
        ps, pi, np_ = _param_buffers(param_idx)
        block = array("i", [s for s, _ in prog.exists_block]) or array("i", [0])
        out = array("i", [0] * max(1, len(prog.exists_block)))
        found = _speed.witness_mask(prog.kind, prog.a, prog.b, prog.memo_arity,
                                    prog.memo_start, prog.memo_slots_flat,
                                    prog.matrix_root, prog.n_slots,
                                    _mask_buffer(tuple(masks)), full, ps, pi, np_,
                                    block, len(prog.exists_block), out)
        if not found:
            return None
        return tuple(out[:len(prog.exists_block)])

    @staticmethod
    def eval_table(prog, n_quant, n_table, meet, join, leq, idx0, idx1, param_idx):
        ps, pi, np_ = _param_buffers(param_idx)
        res = _speed.eval_table(prog.kind, prog.a, prog.b, prog.memo_arity,
                                prog.memo_start, prog.memo_slots_flat, prog.root,
                                prog.n_slots, n_quant, n_table, meet, join, leq,
                                idx0, idx1, ps, pi, np_)
        return bool(res)

    @staticmethod
    def is_separative(masks):
        return bool(_speed.is_separative(_mask_buffer(tuple(masks))))

    @staticmethod
    def is_normal(masks, full):
        return bool(_speed.is_normal(_mask_buffer(tuple(masks)), full))


_BACKENDS = {"pure": _PureBackend}
if _speed is not None:
    _BACKENDS["compiled"] = _SpeedBackend

_active = _BACKENDS.get("compiled", _PureBackend)


def backend():
    return _active


def backend_name() -> str:
    return _active.name


def available_backends() -> tuple:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str):
    """Force 'pure' or 'compiled'; 'auto' restores the default preference."""
    global _active
    if name == "auto":
        _active = _BACKENDS.get("compiled", _PureBackend)
        return
    if name not in _BACKENDS:
        raise InputError(f"backend {name!r} not available (have {sorted(_BACKENDS)})")
    _active = _BACKENDS[name]


# --- public evaluation API over Lattice objects ---

@lru_cache(maxsize=256)
def compiled(formula) -> Program:
    return compile_formula(formula)


def _resolve_assignment(lat, prog: Program, assignment) -> dict:
    assignment = assignment or {}
    param_idx = {}
    for name, slot in prog.param_slot.items():
        if name not in assignment:
            missing = sorted(set(prog.param_slot) - set(assignment))
            raise InputError(f"assignment missing parameter(s): {', '.join(missing)}")
        val = assignment[name]
        if isinstance(val, int):
            if not 0 <= val < len(lat.masks):
                raise InputError(f"element index {val} out of range for {name!r}")
            param_idx[slot] = val
        else:
            param_idx[slot] = lat.index_of_points(val)
    return param_idx


def eval_formula(lat, formula, assignment=None) -> bool:
    """Classical first-order satisfaction over the lattice carrier."""
    prog = compiled(formula)
    param_idx = _resolve_assignment(lat, prog, assignment)
    full = (1 << lat.ground_size) - 1
    return _active.eval_mask(prog, lat.masks, full, param_idx)


def find_witness(lat, formula, assignment=None):
    """For a formula starting with an existential block: the first witness
    tuple in canonical order, returned as {name: element_index}, or None."""
    prog = compiled(formula)
    if not prog.exists_block:
        raise InputError("find_witness needs a formula starting with an existential quantifier")
    param_idx = _resolve_assignment(lat, prog, assignment)
    full = (1 << lat.ground_size) - 1
    tup = _active.witness_mask(prog, lat.masks, full, param_idx)
    if tup is None:
        return None
    out = {name: param_idx[slot] for name, slot in prog.param_slot.items()}
    for (slot, name), idx in zip(prog.exists_block, tup):
        out[name] = idx
    return out
