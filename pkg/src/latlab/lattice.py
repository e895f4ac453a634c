"""Finite bounded distributive lattices, represented as set families.

Every lattice here is a concrete family of subsets of {0..ground_size-1},
closed under pairwise union and intersection and containing the empty set and
the full ground set.  Meet and join are set intersection and union, so
distributivity is automatic.  Subsets are stored as bitmasks; the canonical
element order is by size, then lexicographically on the sorted point list.
"""

from __future__ import annotations

import json

from .config import DEFAULT_LIMITS, Limits
from .errors import InputError, ResourceError


def mask_of(points, ground_size: int) -> int:
    m = 0
    for p in points:
        if not 0 <= p < ground_size:
            raise InputError(f"point {p} outside ground set of size {ground_size}")
        m |= 1 << p
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return tuple(out)


def canonical_key(mask: int):
    pts = points_of(mask)
    return (len(pts), pts)


class Lattice:
    """Immutable set-family lattice.

    elements are exposed as tuples of point tuples; masks as a parallel tuple
    of ints.  bottom_index is always 0 and top_index is always the last
    position, by the canonical order.
    """

    __slots__ = ("ground_size", "masks", "elements", "bottom_index", "top_index",
                 "_index_of")

    def __init__(self, ground_size: int, masks, validate: bool = True,
                 limits: Limits = DEFAULT_LIMITS):
        if ground_size < 0:
            raise InputError("ground size must be >= 0")
        if ground_size > limits.ground_max:
            raise ResourceError(f"ground size {ground_size} exceeds bound {limits.ground_max}")
        full = (1 << ground_size) - 1
        uniq = sorted(set(masks), key=canonical_key)
        if len(uniq) > limits.element_max:
            raise ResourceError(f"{len(uniq)} elements exceed bound {limits.element_max}")
        for m in uniq:
            if m & ~full:
                raise InputError(f"element {sorted(points_of(m))} outside ground set")
        object.__setattr__(self, "ground_size", ground_size)
        object.__setattr__(self, "masks", tuple(uniq))
        object.__setattr__(self, "elements", tuple(points_of(m) for m in uniq))
        object.__setattr__(self, "_index_of", {m: i for i, m in enumerate(uniq)})
        if validate:
            self._check_closed()
        object.__setattr__(self, "bottom_index", self._index_of[0])
        object.__setattr__(self, "top_index", self._index_of[full])

    def __setattr__(self, *_):
        raise AttributeError("Lattice is immutable")

    def _check_closed(self):
        if 0 not in self._index_of:
            raise InputError("family does not contain the empty set")
        full = (1 << self.ground_size) - 1
        if full not in self._index_of:
            raise InputError("family does not contain the full ground set")
        ms = self.masks
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                u = a | b
                if u not in self._index_of:
                    raise InputError(
                        f"family not closed: union of {set(points_of(a)) or '{}'} and "
                        f"{set(points_of(b)) or '{}'} = {set(points_of(u))} is missing")
                w = a & b
                if w not in self._index_of:
                    raise InputError(
                        f"family not closed: intersection of {set(points_of(a))} and "
                        f"{set(points_of(b))} = {set(points_of(w)) or '{}'} is missing")

    # --- basic queries ---

    def __len__(self):
        return len(self.masks)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ground_size == other.ground_size and self.masks == other.masks

    def __hash__(self):
        return hash((self.ground_size, self.masks))

    def __repr__(self):
        return f"Lattice(ground={self.ground_size}, elements={len(self.masks)})"

    def index_of_mask(self, mask: int) -> int:
        try:
            return self._index_of[mask]
        except KeyError:
            raise InputError(f"{sorted(points_of(mask))} is not an element of this lattice")

    def index_of_points(self, points) -> int:
        return self.index_of_mask(mask_of(points, self.ground_size))

    def leq(self, i: int, j: int) -> bool:
        a, b = self.masks[i], self.masks[j]
        return a & b == a

    def meet(self, i: int, j: int) -> int:
        return self._index_of[self.masks[i] & self.masks[j]]

    def join(self, i: int, j: int) -> int:
        return self._index_of[self.masks[i] | self.masks[j]]


def close_subbase(ground_size: int, subbase, limits: Limits = DEFAULT_LIMITS) -> Lattice:
    """Smallest union/intersection-closed family containing the subbase,
    the empty set and the full ground set."""
    if ground_size < 0:
        raise InputError("ground size must be >= 0")
    if ground_size > limits.ground_max:
        raise ResourceError(f"ground size {ground_size} exceeds bound {limits.ground_max}")
    full = (1 << ground_size) - 1
    current = {0, full}
    for member in subbase:
        current.add(member if isinstance(member, int) else mask_of(member, ground_size))
    for m in current:
        if m & ~full:
            raise InputError(f"subbase member {sorted(points_of(m))} outside ground set")
    fresh = list(current)
    while fresh:
        new = set()
        for a in fresh:
            for b in current:
                u, w = a | b, a & b
                if u not in current:
                    new.add(u)
                if w not in current:
                    new.add(w)
        current |= new
        if len(current) > limits.element_max:
            raise ResourceError(f"closure exceeds {limits.element_max} elements")
        fresh = list(new)
    return Lattice(ground_size, current, validate=False, limits=limits)


def powerset_lattice(n: int, limits: Limits = DEFAULT_LIMITS) -> Lattice:
    """All 2**n subsets of an n-point ground set."""
    if n < 0:
        raise InputError("n must be >= 0")
    if n > limits.ground_max:
        raise ResourceError(f"n={n} exceeds ground bound {limits.ground_max}")
    if (1 << n) > limits.element_max:
        raise ResourceError(f"2^{n} elements exceed bound {limits.element_max}")
    return Lattice(n, range(1 << n), validate=False, limits=limits)


def atoms(lat: Lattice) -> list[int]:
    """Indices of the minimal nonzero elements, in canonical order."""
    out = []
    for i, m in enumerate(lat.masks):
        if m == 0:
            continue
        minimal = True
        for other in lat.masks:
            if other and other != m and other & m == other:
                minimal = False
                break
        if minimal:
            out.append(i)
    return out


def is_separative(lat: Lattice) -> bool:
    """Whenever a is not below b, some nonzero c <= a is disjoint from b."""
    from .engine import backend
    return backend().is_separative(lat.masks)


def is_normal(lat: Lattice) -> bool:
    """Disjoint pairs extend to a pair f, g with a.f = 0, b.g = 0, f+g = 1."""
    from .engine import backend
    full = (1 << lat.ground_size) - 1
    return backend().is_normal(lat.masks, full)


# --- file format: {"ground": n, "elements": [[i, ...], ...]} ---

def to_json_dict(lat: Lattice) -> dict:
    return {"ground": lat.ground_size, "elements": [list(e) for e in lat.elements]}


def dumps(lat: Lattice) -> str:
    return json.dumps(to_json_dict(lat), sort_keys=True, separators=(",", ":")) + "\n"


def from_json_dict(data, limits: Limits = DEFAULT_LIMITS) -> Lattice:
    if not isinstance(data, dict):
        raise InputError("lattice file must contain a JSON object")
    try:
        ground = data["ground"]
        elements = data["elements"]
    except (KeyError, TypeError):
        raise InputError('lattice object needs "ground" and "elements" keys')
    if not isinstance(ground, int):
        raise InputError('"ground" must be an integer')
    if not isinstance(elements, list):
        raise InputError('"elements" must be a list of point lists')
    masks = []
    for e in elements:
        if not isinstance(e, list) or not all(isinstance(p, int) for p in e):
            raise InputError(f"element {e!r} is not a list of integers")
        masks.append(mask_of(e, ground))
    return Lattice(ground, masks, validate=True, limits=limits)


def load(path, limits: Limits = DEFAULT_LIMITS) -> Lattice:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read lattice file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")
    return from_json_dict(data, limits=limits)


def save(lat: Lattice, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(lat))
