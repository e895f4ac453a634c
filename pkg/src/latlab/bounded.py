"""Bounded-universe evaluation over interval samples.

Quantifiers range over the sample only, so results are evidence about the
infinite interval lattices, never ground truth; every report built on these
values carries an evidence-only marker.  A sample closed under union and
intersection turns into meet/join/leq tables over indices (with a phantom
index for [0,1] when the sample cannot derive it, reachable only through the
constant 1), and the shared table interpreter does the sweep.
"""

from __future__ import annotations

from array import array

from .engine import backend, compiled
from .errors import InputError
from .intervals import EMPTY, FULL, IntervalSet, iv_intersect, iv_union


class SampleUniverse:
    """Op tables for a finite union/intersection-closed family."""

    def __init__(self, sets):
        sets = list(sets)
        index = {}
        for i, s in enumerate(sets):
            if s in index:
                raise InputError("sample contains duplicates")
            index[s] = i
        if EMPTY not in index:
            raise InputError("sample must contain the empty set")
        self.sets = sets
        self.index = index
        n = len(sets)
        self.n_quant = n
        phantom_top = FULL not in index
        self.n_table = n + 1 if phantom_top else n
        self.idx0 = index[EMPTY]
        self.idx1 = index[FULL] if not phantom_top else n

        nt = self.n_table
        meet = array("I", bytes(4 * nt * nt))
        join = array("I", bytes(4 * nt * nt))
        leq = bytearray(nt * nt)
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                m = iv_intersect(a, b)
                u = iv_union(a, b)
                if m not in index:
                    self._oops(a, b, m)
                if u not in index:
                    self._oops(a, b, u)
                meet[i * nt + j] = index[m]
                join[i * nt + j] = index[u]
                leq[i * nt + j] = 1 if m == a else 0
        if phantom_top:
            t = n
            for i in range(n):
                meet[i * nt + t] = i
                meet[t * nt + i] = i
                join[i * nt + t] = t
                join[t * nt + i] = t
                leq[i * nt + t] = 1
                leq[t * nt + i] = 1 if sets[i] == FULL else 0
            meet[t * nt + t] = t
            join[t * nt + t] = t
            leq[t * nt + t] = 1
        self.meet = meet
        self.join = join
        self.leq = leq

    @staticmethod
    def _oops(a, b, c):
        raise InputError(
            f"sample is not closed: combining {a!r} and {b!r} gives {c!r}, "
            "which is missing")


def bounded_eval(universe, formula, assignment=None) -> bool:
    """First-order satisfaction with quantifiers over the sample only.

    universe is a SampleUniverse or a list of IntervalSets (assumed closed
    under the operations, as generate_sample produces).  assignment maps
    parameter names to sample members or sample indices.
    """
    if not isinstance(universe, SampleUniverse):
        universe = SampleUniverse(universe)
    prog = compiled(formula)
    assignment = assignment or {}
    param_idx = {}
    for name, slot in prog.param_slot.items():
        if name not in assignment:
            missing = sorted(set(prog.param_slot) - set(assignment))
            raise InputError(f"assignment missing parameter(s): {', '.join(missing)}")
        val = assignment[name]
        if isinstance(val, IntervalSet):
            if val not in universe.index:
                raise InputError(f"parameter {name!r} is not a member of the sample")
            param_idx[slot] = universe.index[val]
        else:
            if not 0 <= val < universe.n_quant:
                raise InputError(f"sample index {val} out of range for {name!r}")
            param_idx[slot] = val
    return backend().eval_table(prog, universe.n_quant, universe.n_table,
                                universe.meet, universe.join, universe.leq,
                                universe.idx0, universe.idx1, param_idx)
