"""Wallman representation of a finite lattice.

Points are the ultrafilters; each lattice element a names the basic closed
set of ultrafilters containing a.  Ultrafilters are enumerated from the
maximal-proper-filter definition: on a finite meet-closed family every
filter is the up-set of its minimum, so candidate filters are the up-sets of
nonzero elements, and we keep the maximal ones.  The atom correspondence is
kept out of the construction; tests use it as an independent oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .lattice import Lattice, atoms, is_normal, is_separative, points_of


@dataclass(frozen=True)
class Ultrafilter:
    """Maximal proper filter, stored as a frozenset of element indices.
    least is the index of the filter's minimum element (its generator)."""
    members: frozenset
    least: int


def _upset(lat: Lattice, i: int) -> frozenset:
    m = lat.masks[i]
    return frozenset(j for j, other in enumerate(lat.masks) if other & m == m)


def ultrafilters(lat: Lattice) -> list[Ultrafilter]:
    """All maximal proper filters, ordered by their minimum element."""
    candidates = {}
    for i, m in enumerate(lat.masks):
        if m == 0:
            continue
        candidates[i] = _upset(lat, i)
    maximal = []
    for i, fil in candidates.items():
        if not any(fil < other for other in candidates.values()):
            maximal.append(Ultrafilter(fil, i))
    maximal.sort(key=lambda u: u.least)
    return maximal


@dataclass(frozen=True)
class WallmanSpace:
    host: Lattice
    points: tuple          # Ultrafilters
    closed_base: tuple     # per element index: frozenset of point positions

    def bar(self, element: int) -> frozenset:
        return self.closed_base[element]

    def point_label(self, p: int) -> str:
        u = self.points[p]
        pts = points_of(self.host.masks[u.least])
        return "u" + "".join(str(x) for x in pts) if pts else "u_bottom"


def wallman_space(lat: Lattice) -> WallmanSpace:
    ufs = tuple(ultrafilters(lat))
    base = tuple(frozenset(p for p, u in enumerate(ufs) if i in u.members)
                 for i in range(len(lat.masks)))
    space = WallmanSpace(lat, ufs, base)
    _check_homomorphism(space)
    return space


def _check_homomorphism(space: WallmanSpace):
    """bar commutes with meet and join, sends 0 to the empty set and 1 to
    the whole space; violations indicate a construction bug."""
    lat = space.host
    base = space.closed_base
    all_pts = frozenset(range(len(space.points)))
    assert base[lat.bottom_index] == frozenset()
    assert base[lat.top_index] == all_pts
    for i in range(len(lat.masks)):
        for j in range(i, len(lat.masks)):
            assert base[i] & base[j] == base[lat.meet(i, j)]
            assert base[i] | base[j] == base[lat.join(i, j)]


def closed_sets(space: WallmanSpace) -> set[frozenset]:
    """The full closed-set family of the finite space: the base is already
    union/intersection closed and contains the empty set and the space."""
    return set(space.closed_base)


def is_t1(space: WallmanSpace) -> bool:
    fam = closed_sets(space)
    return all(frozenset([p]) in fam for p in range(len(space.points)))


def is_hausdorff(space: WallmanSpace) -> bool:
    """Directly: p, q separate iff closed C, D exist with p outside C,
    q outside D, C union D the whole space (complements are the opens)."""
    fam = list(closed_sets(space))
    n = len(space.points)
    everything = frozenset(range(n))
    for p in range(n):
        for q in range(p + 1, n):
            ok = False
            for c in fam:
                if p in c:
                    continue
                for d in fam:
                    if q not in d and c | d == everything:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
    return True


@dataclass(frozen=True)
class DualityReport:
    separative: bool
    injective: bool
    normal: bool
    t1: bool
    hausdorff: bool

    def as_dict(self):
        return {"separative": self.separative, "injective": self.injective,
                "normal": self.normal, "t1": self.t1, "hausdorff": self.hausdorff}


def duality_report(lat: Lattice) -> DualityReport:
    space = wallman_space(lat)
    injective = len(set(space.closed_base)) == len(space.closed_base)
    return DualityReport(
        separative=is_separative(lat),
        injective=injective,
        normal=is_normal(lat),
        t1=is_t1(space),
        hausdorff=is_hausdorff(space),
    )


# --- exports ---

def space_to_json_dict(space: WallmanSpace) -> dict:
    return {
        "points": [{"id": p, "label": space.point_label(p),
                    "least_element": list(points_of(space.host.masks[u.least])),
                    "members": sorted(u.members)}
                   for p, u in enumerate(space.points)],
        "closed_base": {str(i): sorted(space.closed_base[i])
                        for i in range(len(space.host.masks))},
    }


def space_to_dot(space: WallmanSpace) -> str:
    """Bipartite element-point incidence graph."""
    lines = ["graph wallman {", "  rankdir=LR;"]
    for i, e in enumerate(space.host.elements):
        label = "{" + ",".join(str(p) for p in e) + "}"
        lines.append(f'  e{i} [shape=box, label="{label}"];')
    for p in range(len(space.points)):
        lines.append(f'  p{p} [shape=circle, label="{space.point_label(p)}"];')
    for i in range(len(space.host.masks)):
        for p in sorted(space.closed_base[i]):
            lines.append(f"  e{i} -- p{p};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_to_json(space: WallmanSpace) -> str:
    return json.dumps(space_to_json_dict(space), indent=2, sort_keys=True) + "\n"


def atom_principal_filters(lat: Lattice) -> list[Ultrafilter]:
    """Independent oracle: the principal filters generated by the atoms."""
    out = [Ultrafilter(_upset(lat, a), a) for a in atoms(lat)]
    out.sort(key=lambda u: u.least)
    return out
