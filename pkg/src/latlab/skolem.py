"""Witness closure of a subfamily inside an ambient lattice.

Finite-scale rendering of sublattice elementarity: full elementarity is
unattainable for finite structures (no proper elementary substructures
exist), so the closure produces a subfamily that is *absolute* for a chosen
family of existential schemas -- every schema instance with parameters from
the subfamily that is solvable in the ambient lattice is already solvable in
the subfamily.  The loop alternates union/intersection closure with adding
canonical ambient witnesses until a fixpoint or the element budget.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .engine import backend, compiled
from .errors import InputError
from .families import FormulaFamily, Schema
from .lattice import Lattice


@dataclass(frozen=True)
class Violation:
    schema: str
    params: dict  # name -> ambient element index

    def describe(self, ambient: Lattice) -> str:
        asn = ", ".join(f"{k}={set(ambient.elements[v]) or '{}'}"
                        for k, v in sorted(self.params.items()))
        return f"{self.schema}({asn}) solvable in ambient but not in subfamily"


@dataclass
class ClosureReport:
    sublattice: Lattice
    iterations: int
    witnesses_added: dict
    exhausted: bool
    witness_mode: str
    rng_seed: int | None = None


def _guard_holds(lat: Lattice, schema: Schema, asn: dict) -> bool:
    if schema.guard is None:
        return True
    prog = compiled(schema.guard)
    full = (1 << lat.ground_size) - 1
    param_idx = {prog.param_slot[n]: asn[n] for n in prog.param_slot}
    return backend().eval_mask(prog, lat.masks, full, param_idx)


def _ambient_witness(ambient: Lattice, schema: Schema, asn: dict, cache: dict,
                     rng: random.Random | None):
    """Canonical (first-in-order) ambient witness tuple, or None.  With an
    rng, a uniformly random witness among all of them instead."""
    key = (schema.name, tuple(sorted(asn.items())))
    if key in cache:
        return cache[key]
    prog = compiled(schema.formula)
    full = (1 << ambient.ground_size) - 1
    param_idx = {prog.param_slot[n]: asn[n] for n in prog.param_slot}
    if rng is None:
        tup = backend().witness_mask(prog, ambient.masks, full, param_idx)
    else:
        all_tups = _all_witnesses(ambient, prog, param_idx)
        tup = rng.choice(all_tups) if all_tups else None
    cache[key] = tup
    return tup


def _all_witnesses(ambient: Lattice, prog, param_idx) -> list:
    full = (1 << ambient.ground_size) - 1
    n = len(ambient.masks)
    slots = [s for s, _ in prog.exists_block]
    out = []
    be = backend()
    for tup in itertools.product(range(n), repeat=len(slots)):
        env = dict(param_idx)
        env.update(zip(slots, tup))
        # evaluate the matrix by treating block variables as parameters
        if be.eval_mask(_matrix_program(prog), ambient.masks, full, env):
            out.append(tup)
    return out


def _matrix_program(prog):
    """A view of the program rooted at the matrix (block vars become params)."""
    view = getattr(prog, "_matrix_view", None)
    if view is None:
        import copy
        view = copy.copy(prog)
        view.root = prog.matrix_root
        view.exists_block = []
        prog._matrix_view = view
    return view


def _solvable_in(lat: Lattice, schema: Schema, asn: dict) -> bool:
    prog = compiled(schema.formula)
    full = (1 << lat.ground_size) - 1
    param_idx = {prog.param_slot[n]: asn[n] for n in prog.param_slot}
    return backend().eval_mask(prog, lat.masks, full, param_idx)


def _lattice_close(ambient: Lattice, current: set) -> set:
    """Close a set of ambient indices under meet and join."""
    fresh = list(current)
    while fresh:
        new = set()
        for i in fresh:
            for j in current:
                for k in (ambient.meet(i, j), ambient.join(i, j)):
                    if k not in current:
                        new.add(k)
        current |= new
        fresh = list(new)
    return current


def skolem_closure(ambient: Lattice, seed, family: FormulaFamily, budget: int,
                   witness_mode: str = "canonical",
                   rng_seed: int | None = None) -> ClosureReport:
    """Iterate lattice closure and witness adjunction to a fixpoint.

    The result always contains bottom and top.  budget bounds the element
    count of the result; stopping on budget sets the exhausted flag and the
    result is still a valid sublattice, just possibly not absolute.
    """
    seed = set(seed)
    for i in seed:
        if not 0 <= i < len(ambient.masks):
            raise InputError(f"seed element index {i} out of range")
    if budget < len(seed):
        raise InputError("budget must be at least the seed size")
    if witness_mode not in ("canonical", "random"):
        raise InputError("witness_mode must be 'canonical' or 'random'")
    rng = random.Random(rng_seed) if witness_mode == "random" else None

    current = set(seed) | {ambient.bottom_index, ambient.top_index}
    added = {s.name: 0 for s in family}
    cache: dict = {}
    iterations = 0
    exhausted = False

    # Budget is checked after each lattice-closure phase so the returned
    # family is always union/intersection closed; the overshoot is bounded
    # by the ambient size.
    while True:
        iterations += 1
        before = len(current)
        current = _lattice_close(ambient, current)
        if len(current) > budget:
            exhausted = True
            break
        ordered = sorted(current)
        grew = False
        for schema in family:
            for combo in itertools.product(ordered, repeat=len(schema.params)):
                asn = dict(zip(schema.params, combo))
                if not _guard_holds(ambient, schema, asn):
                    continue
                tup = _ambient_witness(ambient, schema, asn, cache, rng)
                if tup is None:
                    continue
                for idx in tup:
                    if idx not in current:
                        current.add(idx)
                        added[schema.name] += 1
                        grew = True
        if not grew and len(current) == before:
            break

    masks = [ambient.masks[i] for i in sorted(current)]
    sub = Lattice(ambient.ground_size, masks, validate=True)
    return ClosureReport(sublattice=sub, iterations=iterations,
                         witnesses_added=added, exhausted=exhausted,
                         witness_mode=witness_mode, rng_seed=rng_seed)


def check_absoluteness(ambient: Lattice, sub: Lattice, family: FormulaFamily) -> list[Violation]:
    """One violation per schema instance with parameters from sub that is
    solvable in the ambient lattice but not in sub."""
    if sub.ground_size != ambient.ground_size:
        raise InputError("subfamily has a different ground set")
    for m, pts in zip(sub.masks, sub.elements):
        if m not in ambient._index_of:
            raise InputError(f"subfamily element {set(pts) or '{}'} is not in the ambient lattice")
    out = []
    n_sub = len(sub.masks)
    for schema in family:
        for combo in itertools.product(range(n_sub), repeat=len(schema.params)):
            sub_asn = dict(zip(schema.params, combo))
            if not _guard_holds(sub, schema, sub_asn):
                continue
            amb_asn = {k: ambient.index_of_mask(sub.masks[v]) for k, v in sub_asn.items()}
            if _solvable_in(ambient, schema, amb_asn) and not _solvable_in(sub, schema, sub_asn):
                out.append(Violation(schema.name, amb_asn))
    return out
