"""Generating subbases for interval lattices and sampled closures.

Three parametric kinds:

  rational_intervals  closed intervals with endpoints from a rational list;
  base32              [0,q] for rational q plus [p,1] for irrational p;
  base33              [0,q] with a right geometric tail at q, plus [p,1]
                      with a left tail at p.

generate_sample grows the subbase under unions and intersections for a given
number of rounds, deduplicating canonically; when a round would exceed the
size cap it keeps a seeded random subsample (generators, the empty set and,
when present, [0,1] always survive).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_LIMITS, Limits
from .errors import InputError, ResourceError
from .intervals import (EMPTY, FULL, IntervalSet, Seg, Tail, iv_intersect,
                        iv_union, parse_num, seg, to_literal)
from .qnum import Num

KINDS = ("rational_intervals", "base32", "base33")


@dataclass(frozen=True)
class BaseSpec:
    kind: str
    rational: tuple = ()    # Nums with b == 0
    irrational: tuple = ()  # Nums with b != 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown base kind {self.kind!r}")
        for q in self.rational:
            if not q.is_rational():
                raise InputError(f"{q} listed as rational but has a sqrt-2 part")
        for p in self.irrational:
            if p.is_rational():
                raise InputError(f"{p} listed as irrational but is rational")
        if self.kind in ("base32", "base33"):
            for v in (*self.rational, *self.irrational):
                if not (Num(0) < v < Num(1)):
                    raise InputError(f"cut parameter {v} must lie strictly inside (0,1)")
        else:
            for v in self.rational:
                if not (Num(0) <= v <= Num(1)):
                    raise InputError(f"endpoint {v} outside [0,1]")
            if self.irrational:
                raise InputError("rational_intervals takes no irrational parameters")


def generators(base: BaseSpec) -> list[IntervalSet]:
    if base.kind == "rational_intervals":
        endpoints = sorted(base.rational)
        out = []
        for i, a in enumerate(endpoints):
            for b in endpoints[i:]:
                out.append(seg(a, b))
        return out
    out = []
    if base.kind == "base32":
        for q in sorted(base.rational):
            out.append(seg(Num(0), q))
        for p in sorted(base.irrational):
            out.append(seg(p, Num(1)))
        return out
    for q in sorted(base.rational):  # base33
        out.append(iv_union(seg(Num(0), q), IntervalSet((Seg(q, q), Tail(q, 1, 0)))))
    for p in sorted(base.irrational):
        out.append(iv_union(seg(p, Num(1)), IntervalSet((Seg(p, p), Tail(p, -1, 0)))))
    return out


def generate_sample(base: BaseSpec, depth: int, sample_seed: int,
                    max_size: int = 200, limits: Limits = DEFAULT_LIMITS) -> list[IntervalSet]:
    """Deterministic operation-closed sample of the generated interval lattice.

    Candidates are the subbase generators followed by `depth` rounds of
    pairwise union/intersection growth, shuffled by the seeded rng (with the
    generators kept first).  They are admitted greedily: each candidate joins
    the sample only if the closure stays within max_size, so the result is
    always union/intersection closed -- the shape bounded evaluation needs.
    The empty set is always present; for rich bases not every generator or
    combination can fit under the cap.
    """
    if depth > limits.sample_depth_max:
        raise ResourceError(f"depth {depth} exceeds bound {limits.sample_depth_max}")
    if depth < 0:
        raise InputError("depth must be >= 0")
    rng = random.Random(sample_seed)
    gens = _dedup(generators(base))
    grown = list(gens)
    seen = set(grown)
    for _ in range(depth):
        level = list(grown)
        new = []
        for i, a in enumerate(level):
            for b in level[i:]:
                for c in (iv_union(a, b), iv_intersect(a, b)):
                    if c not in seen:
                        seen.add(c)
                        new.append(c)
        if len(new) > 4 * max_size:  # keep the growth itself bounded
            rng.shuffle(new)
            new = new[:4 * max_size]
        grown.extend(new)

    later = [s for s in grown if s not in set(gens)]
    rng.shuffle(later)
    sample = {EMPTY}
    for cand in [*gens, *later]:
        if cand in sample:
            continue
        extended = _close_into(sample, cand, max_size)
        if extended is not None:
            sample = extended
    return sorted(sample, key=_sample_key)


def _close_into(closed: set, new_elem, max_size: int):
    """Closure of closed | {new_elem}, or None when it would exceed max_size."""
    out = set(closed)
    fresh = [new_elem]
    out.add(new_elem)
    while fresh:
        next_fresh = []
        for a in fresh:
            for b in list(out):
                for c in (iv_union(a, b), iv_intersect(a, b)):
                    if c not in out:
                        if len(out) >= max_size:
                            return None
                        out.add(c)
                        next_fresh.append(c)
        fresh = next_fresh
    return out


def _dedup(sets):
    out = []
    seen = set()
    for s in sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def _sample_key(s: IntervalSet):
    def piece_key(p):
        if isinstance(p, Seg):
            return (p.lo, p.hi, 0, 0)
        return (p.span()[0], p.span()[1], 1, p.n0)
    return (len(s.pieces), [piece_key(p) for p in s.pieces])


def close_sample(sets, max_size: int = 2000) -> list[IntervalSet]:
    """Full union/intersection closure of a finite family (plus the empty
    set), for when bounded evaluation needs an operation-closed universe."""
    current = _dedup([EMPTY, *sets])
    seen = set(current)
    fresh = list(current)
    while fresh:
        new = []
        for a in fresh:
            for b in current:
                for c in (iv_union(a, b), iv_intersect(a, b)):
                    if c not in seen:
                        if len(seen) >= max_size:
                            raise ResourceError(
                                f"sample closure exceeds {max_size} elements")
                        seen.add(c)
                        new.append(c)
        current.extend(new)
        fresh = new
    return sorted(current, key=_sample_key)


# --- file format ---

def basespec_from_json(data) -> BaseSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError('base spec file needs a JSON object with a "kind"')
    rational = tuple(parse_num(s) for s in data.get("rational", []))
    irrational = tuple(parse_num(s) for s in data.get("irrational", []))
    return BaseSpec(kind=data["kind"], rational=rational, irrational=irrational)


def load_basespec(path) -> BaseSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read base spec {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")
    return basespec_from_json(data)


def basespec_to_json(base: BaseSpec) -> str:
    data = {"kind": base.kind,
            "rational": [str(q) for q in base.rational],
            "irrational": [str(p) for p in base.irrational]}
    return json.dumps(data, indent=2) + "\n"
