"""Cuts, partitions, swellings and component splits on interval sets.

Everything here is an exact finite decision.  The one real difficulty is
geometric tails: near a tail limit the set structure repeats at every scale,
so the procedures first compute a "pristine radius" around each relevant
limit -- a distance within which the only possible material is the limit
itself, points on the same dyadic grid, or a segment covering the whole
neighborhood.  Inside that radius each question has a uniform answer, and
outside it everything is a finite sweep over critical endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, LatlabError
from .intervals import (EMPTY, FULL, IntervalSet, Seg, Tail, _n_min, _pow2,
                        _recip_pow2, iv_intersect, iv_subset, iv_union,
                        point_in_tail, seg, tail_ns_in_range)
from .qnum import Num, midpoint

ZERO = Num(0)
ONE = Num(1)


class ComponentSplitError(LatlabError):
    """A component of the host set meets both sides."""

    def __init__(self, component: IntervalSet):
        super().__init__(f"component {component!r} meets both input sets")
        self.component = component


# --- critical coordinates and pristine radii ---

def _coords_of(s: IntervalSet):
    out = []
    for p in s.pieces:
        if isinstance(p, Seg):
            out.append(p.lo)
            out.append(p.hi)
        else:
            out.append(p.limit)
            out.append(p.point(p.n0))
    return out


def _nearest_tail_point_gap(t: Tail, c: Num):
    """Smallest positive |point - c| over t's points, or None if c is hit
    exactly or no point comes near.  Finite scan: points accumulate only at
    t.limit != c, so candidates are the few indices where 2**-n ~ |c-limit|."""
    best = None
    target = (c - t.limit) * Num(t.direction)  # point offset that would hit c
    seed = _n_min(abs_num(target)) if target.sign() > 0 else 0
    for n in range(t.n0, max(seed + 3, t.n0 + 3)):
        d = abs_num(t.point(n) - c)
        if d.sign() > 0 and (best is None or d < best):
            best = d
        if _pow2(n) < abs_num(c - t.limit) and n > seed + 2:
            break
    # deep points sit within |c - limit|/2 of the limit, hence at least
    # |c - limit|/2 away from c
    deep = abs_num(c - t.limit) * Num(Fraction(1, 2))
    if deep.sign() > 0 and (best is None or deep < best):
        best = deep
    return best


def abs_num(x: Num) -> Num:
    return -x if x.sign() < 0 else x


def _pristine_radius(c: Num, direction: int, sets) -> Num:
    """A radius r > 0 such that (c, c + direction*r) contains no segment
    endpoint, no isolated point, no other tail's limit and no other tail's
    point from any of the sets; only same-grid points, the limit itself, or
    segments sweeping across can live there."""
    best = ONE
    for s in sets:
        for coord in _coords_of(s):
            d = abs_num(coord - c)
            if d.sign() > 0 and d < best:
                best = d
        for t in (p for p in s.pieces if isinstance(p, Tail)):
            if t.limit == c and t.direction == direction:
                continue  # same grid
            if t.limit == c:
                continue  # opposite side of c
            d = _nearest_tail_point_gap(t, c)
            if d is not None and d < best:
                best = d
    return best


def _wall_depth(t: Tail, sets) -> int:
    """Start index R with 2**-R strictly inside the pristine radius."""
    r = _pristine_radius(t.limit, t.direction, sets)
    k = _n_min(r)
    if _pow2(k) == r:
        k += 1
    return max(t.n0, k)


# --- solid picture of a set: segments + explicit tail points + wall spans ---

@dataclass(frozen=True)
class Wall:
    tail: Tail
    depth: int  # remainder start index

    def span(self):
        t = self.tail
        p = t.limit + Num(t.direction * Fraction(1, 1 << self.depth))
        return (t.limit, p) if t.direction > 0 else (p, t.limit)


def _solidify(s: IntervalSet, others) -> tuple[list, list]:
    """Segments covering exactly s, with each tail replaced by explicit
    points down to its wall depth plus a solid span around the limit.

    Returns (segments, walls).  The spans cover points not in s (the deep
    micro-gaps); callers account for that via the wall list.
    """
    sets = [s, *others]
    segs = []
    walls = []
    for p in s.pieces:
        if isinstance(p, Seg):
            segs.append((p.lo, p.hi))
        else:
            depth = _wall_depth(p, sets)
            for n in range(p.n0, depth):
                q = p.point(n)
                segs.append((q, q))
            wall = Wall(Tail(p.limit, p.direction, depth), depth)
            segs.append(wall.span())
            walls.append(wall)
    segs.sort(key=lambda ab: (ab[0], ab[1]))
    merged = []
    for lo, hi in segs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged, walls


def _components_of_complement(solids) -> list:
    """Maximal intervals of [0,1] minus the solid segments, as
    (lo, hi, closed_left, closed_right)."""
    out = []
    cursor = ZERO
    closed_left = True
    for lo, hi in solids:
        if cursor < lo:
            out.append((cursor, lo, closed_left, False))
        cursor = max(cursor, hi)
        closed_left = False
    if cursor < ONE:
        out.append((cursor, ONE, closed_left, True))
    return out


def _material_in(s: IntervalSet, lo, hi, closed_left, closed_right) -> bool:
    """Does s have a point in the (possibly half-open) interval?"""
    z = iv_intersect(s, seg(lo, hi))
    for p in z.pieces:
        if isinstance(p, Tail):
            return True  # infinitely many points, at most two on the boundary
        if p.lo < p.hi:
            return True  # a nondegenerate overlap always has interior points
        q = p.lo
        if (q > lo or closed_left) and (q < hi or closed_right):
            return True
    return False


def _has_neighborhood_seg(s: IntervalSet, c: Num, direction: int) -> bool:
    """s contains a one-sided neighborhood of c on the given side."""
    for p in s.pieces:
        if isinstance(p, Seg):
            if direction > 0 and p.lo <= c < p.hi:
                return True
            if direction < 0 and p.lo < c <= p.hi:
                return True
    return False


# --- cut verification and construction ---

def verify_cut(u: IntervalSet, x: IntervalSet, y: IntervalSet) -> bool:
    """Does every closed interval of [0,1] meeting x and y meet u?

    Decided by sweeping the components of the complement of u: a violating
    interval exists iff some component holds material of both x and y, or
    both sets run segments into the deep micro-gaps of one of u's tails.
    """
    solids, walls = _solidify(u, (x, y))
    for w in walls:
        if _has_neighborhood_seg(x, w.tail.limit, w.tail.direction) and \
           _has_neighborhood_seg(y, w.tail.limit, w.tail.direction):
            return False
    for lo, hi, cl, cr in _components_of_complement(solids):
        if _material_in(x, lo, hi, cl, cr) and _material_in(y, lo, hi, cl, cr):
            return False
    return True


def make_cut(x: IntervalSet, y: IntervalSet) -> IntervalSet:
    """A finite point set, disjoint from x and y, meeting every interval
    that meets both: one midpoint per gap between differently-owned blocks."""
    if x.is_empty() or y.is_empty():
        raise InputError("make_cut needs two nonempty sets")
    if not iv_intersect(x, y).is_empty():
        raise InputError("make_cut needs disjoint sets")
    blocks = []  # (lo, hi, owner)
    for owner, s, other in (("x", x, y), ("y", y, x)):
        for p in s.pieces:
            if isinstance(p, Seg):
                blocks.append((p.lo, p.hi, owner))
            else:
                depth = _tail_block_depth(p, other)
                for n in range(p.n0, depth):
                    q = p.point(n)
                    blocks.append((q, q, owner))
                lo, hi = Wall(Tail(p.limit, p.direction, depth), depth).span()
                blocks.append((lo, hi, owner))
    blocks.sort(key=lambda t: (t[0], t[1]))
    merged = []
    for lo, hi, owner in blocks:
        if merged and lo <= merged[-1][1]:
            prev_lo, prev_hi, prev_owner = merged[-1]
            if prev_owner != owner:
                raise LatlabError("internal: disjoint sets produced touching blocks")
            merged[-1] = (prev_lo, max(prev_hi, hi), owner)
        else:
            merged.append((lo, hi, owner))
    cut_pts = []
    for (_, hi1, o1), (lo2, _, o2) in zip(merged, merged[1:]):
        if o1 != o2:
            cut_pts.append(Seg(midpoint(hi1, lo2), midpoint(hi1, lo2)))
    u = IntervalSet(tuple(cut_pts))
    if not (iv_intersect(u, x).is_empty() and iv_intersect(u, y).is_empty()
            and verify_cut(u, x, y)):
        raise LatlabError("internal: constructed cut failed verification")
    return u


def _tail_block_depth(t: Tail, other: IntervalSet) -> int:
    """Depth at which the span around t.limit stays clear of the other set
    (half the distance, so two opposing spans can never meet)."""
    best = ONE
    c = t.limit
    for p in other.pieces:
        if isinstance(p, Seg):
            if p.lo <= c <= p.hi:
                raise LatlabError("internal: limit inside the other set")
            d = p.lo - c if p.lo > c else c - p.hi
        else:
            d0 = _nearest_tail_point_gap(p, c)
            dl = abs_num(p.limit - c)
            d = dl if (d0 is None or dl < d0) else d0
        if d.sign() > 0 and d < best:
            best = d
    half = best * Num(Fraction(1, 2))
    k = _n_min(half)
    if _pow2(k) == half:
        k += 1
    return max(t.n0, k)


# --- partitions ---

def verify_partition(u: IntervalSet, x: IntervalSet, y: IntervalSet):
    """Closed f, g with x.f = 0, y.g = 0, f+g = [0,1], f.g = u, or None.

    f and g exist iff u avoids x and y and no component of the complement
    of u holds material of both; the construction assigns components
    (x-side, y-side, free ones to the x-side) and complements.
    """
    if not iv_intersect(x, y).is_empty():
        raise InputError("verify_partition needs disjoint x and y")
    if not iv_intersect(u, x).is_empty() or not iv_intersect(u, y).is_empty():
        return None
    solids, walls = _solidify(u, (x, y))
    u_hulls = []   # closed hulls of components on the x-avoiding side (go to g)
    v_hulls = []   # hulls of y-side components (go to f)
    for lo, hi, cl, cr in _components_of_complement(solids):
        mx = _material_in(x, lo, hi, cl, cr)
        my = _material_in(y, lo, hi, cl, cr)
        if mx and my:
            return None
        if my:
            v_hulls.append(Seg(lo, hi))
        else:  # x-side or free
            u_hulls.append(Seg(lo, hi))
    for w in walls:
        u_hulls.append(Seg(*w.span()))  # micro-gap bundles ride with the x-side
    f = iv_union(u, IntervalSet(tuple(v_hulls)))
    g = iv_union(u, IntervalSet(tuple(u_hulls)))
    if not (iv_intersect(x, f).is_empty() and iv_intersect(y, g).is_empty()
            and iv_union(f, g) == FULL and iv_intersect(f, g) == u):
        raise LatlabError("internal: partition construction failed verification")
    return f, g


# --- component splitting ---

def _tail_claims(claimer: IntervalSet, t: Tail):
    """Indices of t's points inside the claimer: (finite_set, cofinal_start)."""
    fin = set()
    cof = None
    for p in claimer.pieces:
        if isinstance(p, Seg):
            ns, start = tail_ns_in_range(t, p.lo, p.hi)
            fin.update(ns)
            if start is not None:
                cof = start if cof is None else min(cof, start)
        elif p.limit == t.limit and p.direction == t.direction:
            start = max(p.n0, t.n0)
            cof = start if cof is None else min(cof, start)
        else:
            from .intervals import shared_tail_indices
            fin.update(shared_tail_indices(p, t))
    return fin, cof


def component_split(h: IntervalSet, a: IntervalSet, b: IntervalSet):
    """Split h's components: those meeting a (plus unclaimed ones) against
    those meeting b.  Raises ComponentSplitError when a component meets both.

    Deep unclaimed tail points follow their limit's side so both halves stay
    closed; all other unclaimed components go to the first half.
    """
    f_pieces = []
    g_pieces = []
    limit_side = {}  # Num -> "f" | "g", for tails to consult

    for p in h.pieces:
        if isinstance(p, Seg):
            comp = IntervalSet((p,))
            ma = not iv_intersect(a, comp).is_empty()
            mb = not iv_intersect(b, comp).is_empty()
            if ma and mb:
                raise ComponentSplitError(comp)
            side = "g" if mb else "f"
            (g_pieces if mb else f_pieces).append(p)
            for q in (p.lo, p.hi):
                limit_side[q] = side

    for p in h.pieces:
        if not isinstance(p, Tail):
            continue
        fa, ca = _tail_claims(a, p)
        fb, cb = _tail_claims(b, p)
        if ca is not None and cb is not None:
            raise ComponentSplitError(IntervalSet((Seg(p.limit, p.limit),)))
        both = (fa & fb) | ({n for n in fa if cb is not None and n >= cb}
                            | {n for n in fb if ca is not None and n >= ca})
        if both:
            n = min(both)
            q = p.point(n)
            raise ComponentSplitError(IntervalSet((Seg(q, q),)))
        side_of_limit = limit_side.get(p.limit, "f")
        # cofinal claim wins the deep part (its owner also holds the limit)
        if ca is not None:
            deep_side, deep_start = "f", ca
        elif cb is not None:
            deep_side, deep_start = "g", cb
        else:
            deep_side = side_of_limit
            top = max(fa | fb | {p.n0 - 1})
            deep_start = top + 1
        deep_list = f_pieces if deep_side == "f" else g_pieces
        deep_list.append(Tail(p.limit, p.direction, deep_start))
        for n in range(p.n0, deep_start):
            q = Seg(p.point(n), p.point(n))
            if n in fb:
                g_pieces.append(q)
            elif n in fa:
                f_pieces.append(q)
            else:
                f_pieces.append(q)

    f = IntervalSet(tuple(f_pieces))
    g = IntervalSet(tuple(g_pieces))
    if not (iv_intersect(f, g).is_empty() and iv_union(f, g) == h
            and iv_subset(iv_intersect(a, h), f) and iv_subset(iv_intersect(b, h), g)):
        raise LatlabError("internal: component split failed verification")
    return f, g


# --- swelling for the covering-dimension witness ---

def _meet_all(sets):
    out = sets[0]
    for s in sets[1:]:
        out = iv_intersect(out, s)
    return out


def _tails_to_hulls(s: IntervalSet, depth: int) -> IntervalSet:
    """Superset of s with each tail replaced by explicit points above the
    depth and a solid hull below it."""
    soup = []
    for p in s.pieces:
        if isinstance(p, Seg):
            soup.append(p)
        else:
            for n in range(p.n0, depth):
                q = p.point(n)
                soup.append(Seg(q, q))
            hull_pt = p.point(max(p.n0, depth))
            lo, hi = (p.limit, hull_pt) if p.direction > 0 else (hull_pt, p.limit)
            soup.append(Seg(lo, hi))
    return IntervalSet(tuple(soup))


def swell_1d(n: int, xs):
    """Expand n+2 closed sets with empty intersection into closed sets that
    still have empty intersection and cover [0,1]; None when impossible
    (exactly the case n = 0 with both sets nonempty)."""
    xs = list(xs)
    if len(xs) != n + 2:
        raise InputError(f"need {n + 2} sets for index {n}, got {len(xs)}")
    if not _meet_all(xs).is_empty():
        raise InputError("the sets must have empty intersection")
    if n == 0:
        if xs[0].is_empty():
            return [EMPTY, FULL]
        if xs[1].is_empty():
            return [FULL, EMPTY]
        return None  # two disjoint nonempty closed sets cannot cover [0,1]

    # eliminate tails: hulls shrink toward the limits until the meet empties
    # (guaranteed at a finite depth because the hulled sets are compact and
    # decrease to sets whose intersection is empty)
    hulled = xs
    if any(s.tails() for s in xs):
        start = max(t.n0 for s in xs for t in s.tails())
        for depth in range(start, start + 200):
            hulled = [_tails_to_hulls(s, depth) for s in xs]
            if _meet_all(hulled).is_empty():
                break
        else:
            raise LatlabError("internal: hull shrinking did not empty the meet")

    grid = sorted({ZERO, ONE} | {c for s in hulled for g in s.segs() for c in (g.lo, g.hi)})
    point_owners = {g: [i for i, s in enumerate(hulled) if s.contains(g)] for g in grid}
    assigned = [[] for _ in xs]  # closed segments per output set

    for g in grid:
        owners = point_owners[g]
        for i in owners:
            assigned[i].append((g, g))
        if not owners:
            assigned[0].append((g, g))
    for gl, gr in zip(grid, grid[1:]):
        owners = [i for i, s in enumerate(hulled)
                  if any(sg.lo <= gl and gr <= sg.hi for sg in s.segs())]
        if owners:
            for i in owners:
                assigned[i].append((gl, gr))
        else:
            m = midpoint(gl, gr)
            assigned[min(point_owners[gl], default=0)].append((gl, m))
            assigned[min(point_owners[gr], default=0)].append((m, gr))

    ys = [IntervalSet(tuple(Seg(lo, hi) for lo, hi in cells)) for cells in assigned]
    if not (_meet_all(ys).is_empty()
            and all(iv_subset(x, y) for x, y in zip(xs, ys))):
        raise LatlabError("internal: swelling failed verification")
    cover = ys[0]
    for y in ys[1:]:
        cover = iv_union(cover, y)
    if cover != FULL:
        raise LatlabError("internal: swelling does not cover [0,1]")
    return ys
