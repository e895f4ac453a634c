"""Canonical closed subsets of [0,1] with endpoints in Q(sqrt 2).

An IntervalSet is a sorted tuple of pairwise disjoint pieces:

  Seg(lo, hi)        a closed segment, possibly degenerate (a point);
  Tail(limit, d, n0) the geometric point sequence {limit + d*2^-n : n >= n0},
                     *without* its limit.

The represented set is the union of the pieces, and the closedness invariant
says every Tail's limit is covered by some Seg of the same set (possibly the
degenerate one the tail factory adds).  Canonical form: segments merged and
sorted, no point stored twice, tails maximal (an isolated point extending a
tail is absorbed into it), every coordinate inside [0,1].  Equality of
canonical forms is equality of the represented sets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .qnum import Num, midpoint

ZERO = Num(0)
ONE = Num(1)


@dataclass(frozen=True, slots=True)
class Seg:
    lo: Num
    hi: Num


@dataclass(frozen=True, slots=True)
class Tail:
    limit: Num
    direction: int  # +1 or -1
    n0: int

    def point(self, n: int) -> Num:
        return self.limit + Num(self.direction * Fraction(1, 1 << n))

    def span(self):
        """Closed hull [limit, first point] (oriented)."""
        p = self.point(self.n0)
        return (self.limit, p) if self.direction > 0 else (p, self.limit)


def _pow2(n: int) -> Num:
    return Num(Fraction(1, 1 << n))


def _recip_pow2(d: Num):
    """n >= 0 with d == 2**-n, else None."""
    if not d.is_rational():
        return None
    f = d.a
    if f <= 0 or f > 1 or f.numerator != 1:
        return None
    den = f.denominator
    n = den.bit_length() - 1
    return n if (1 << n) == den else None


@lru_cache(maxsize=8192)
def _n_min(d: Num) -> int:
    """Smallest n >= 0 with 2**-n <= d (d > 0).  Exact; float only seeds."""
    if d >= ONE:
        return 0
    try:
        f = float(d.a) + float(d.b) * math.sqrt(2)
    except OverflowError:
        f = 0.0
    n = max(0, int(-math.log2(f)) - 2) if f > 0 else 0
    while _pow2(n) > d:
        n += 1
    while n > 0 and _pow2(n - 1) <= d:
        n -= 1
    return n


def _n_max(d: Num):
    """Largest n with 2**-n >= d (d > 0), or None when even n=0 fails."""
    if d > ONE:
        return None
    n = _n_min(d)
    return n if _pow2(n) == d else n - 1


@lru_cache(maxsize=65536)
def tail_ns_in_range(t: Tail, lo: Num, hi: Num):
    """Indices n >= t.n0 whose point lies in [lo, hi].

    Returns (finite_list, cofinal_start): either a finite list of n, or a
    start N meaning every n >= N qualifies (the segment reaches the limit).
    """
    c, d = t.limit, t.direction
    if d > 0:
        d_hi = hi - c
        if d_hi.sign() <= 0:
            return (), None
        a = max(t.n0, _n_min(d_hi))
        d_lo = lo - c
        if d_lo.sign() <= 0:
            return (), a
        b = _n_max(d_lo)
    else:
        d_lo = c - lo
        if d_lo.sign() <= 0:
            return (), None
        a = max(t.n0, _n_min(d_lo))
        d_hi = c - hi
        if d_hi.sign() <= 0:
            return (), a
        b = _n_max(d_hi)
    if b is None or b < a:
        return (), None
    return tuple(range(a, b + 1)), None


def point_in_tail(p: Num, t: Tail) -> bool:
    r = (p - t.limit) * Num(t.direction)
    n = _recip_pow2(r)
    return n is not None and n >= t.n0


@lru_cache(maxsize=65536)
def shared_tail_indices(placed: Tail, later: Tail) -> tuple[int, ...]:
    """Indices n of `later` whose point also belongs to `placed`'s sequence.

    Solving placed-membership for later's points reduces to
    2**-m = c + e*2**-n with c = d1*(c2 - c1), e = d1*d2; irrational c has no
    solutions, rational c only finitely many, found by a short exact scan
    plus a window check around 2**-m ~ c.
    """
    c_num = (later.limit - placed.limit) * Num(placed.direction)
    if c_num.sign() == 0:
        return ()  # same limit: same direction is merged earlier, opposite is disjoint
    if not c_num.is_rational():
        return ()
    c = c_num.a
    e = placed.direction * later.direction
    out = set()

    def try_n(n: int):
        r = Fraction(c) + e * Fraction(1, 1 << n)
        m = _recip_pow2(Num(r)) if r > 0 else None
        if m is not None and m >= placed.n0:
            out.add(n)

    # direct range: 2**-n >= |c|/4
    n = later.n0
    bound = abs(c) / 4
    while n <= later.n0 + 400 and Fraction(1, 1 << n) >= bound:
        try_n(n)
        n += 1
    deep_start = n
    # beyond it 2**-m must land in (3c/4, 5c/4); test the few candidate m
    if c > 0:
        m0 = _n_min(Num(c))
        for m in range(max(0, m0 - 2), m0 + 3):
            diff = Fraction(1, 1 << m) - c
            want = diff * e
            if want <= 0:
                continue
            nn = _recip_pow2(Num(want))
            if nn is not None and nn >= deep_start and m >= placed.n0:
                out.add(nn)
    return tuple(sorted(out))


def _merge_segs(segs):
    segs = sorted(segs, key=lambda s: (s[0], s[1]))
    out = []
    for lo, hi in segs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def _span_start(piece):
    if isinstance(piece, Seg):
        return (piece.lo, 0)
    return (piece.span()[0], 1)


class IntervalSet:
    __slots__ = ("pieces",)

    def __init__(self, pieces=(), _canonical=False):
        if not _canonical:
            pieces = _canonicalize(pieces)
        object.__setattr__(self, "pieces", tuple(pieces))

    def __setattr__(self, *_):
        raise AttributeError("IntervalSet is immutable")

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        return f"IntervalSet({to_literal(self)!r})"

    def is_empty(self) -> bool:
        return not self.pieces

    def segs(self):
        return [p for p in self.pieces if isinstance(p, Seg)]

    def tails(self):
        return [p for p in self.pieces if isinstance(p, Tail)]

    def contains(self, p: Num) -> bool:
        for piece in self.pieces:
            if isinstance(piece, Seg):
                if piece.lo <= p <= piece.hi:
                    return True
            elif point_in_tail(p, piece):
                return True
        return False


def _validate_coord(x: Num, what: str):
    if not (ZERO <= x <= ONE):
        raise InputError(f"{what} {x} outside [0,1]")


def _canonicalize(pieces) -> list:
    segs = []
    tail_start: dict = {}
    for p in pieces:
        if isinstance(p, Seg):
            _validate_coord(p.lo, "segment endpoint")
            _validate_coord(p.hi, "segment endpoint")
            if p.lo > p.hi:
                raise InputError(f"segment [{p.lo}, {p.hi}] reversed")
            segs.append((p.lo, p.hi))
        elif isinstance(p, Tail):
            if p.direction not in (1, -1):
                raise InputError("tail direction must be +1 or -1")
            if p.n0 < 0:
                raise InputError("tail start index must be >= 0")
            _validate_coord(p.limit, "tail limit")
            lo, hi = p.span()
            # clamp: keep only in-range points
            n0 = p.n0
            if lo < ZERO or hi > ONE:
                d = p.limit if p.direction < 0 else ONE - p.limit
                if d.sign() <= 0:
                    continue  # no in-range points; the limit is covered elsewhere
                n0 = max(n0, _n_min(d))
            key = (p.limit, p.direction)
            tail_start[key] = min(tail_start.get(key, n0), n0)
        else:
            raise InputError(f"not a piece: {p!r}")

    merged = _merge_segs(segs)
    nsegs = [(lo, hi) for lo, hi in merged if lo < hi]
    points = [lo for lo, hi in merged if lo == hi]

    # reduce tails against the nondegenerate segments and each other; a tail
    # owns every grid point in its final range, evicted points join the pool
    final_tails: list[Tail] = []
    for (c, d) in sorted(tail_start, key=lambda k: (k[0], k[1])):
        t = Tail(c, d, tail_start[(c, d)])
        excl = set()
        cof = None
        for lo, hi in nsegs:
            ns, start = tail_ns_in_range(t, lo, hi)
            excl.update(ns)
            if start is not None:
                cof = start if cof is None else min(cof, start)
        for prev in final_tails:
            excl.update(shared_tail_indices(prev, t))
        if cof is not None:
            points.extend(t.point(n) for n in range(t.n0, cof) if n not in excl)
            continue
        start = max([x for x in excl if x >= t.n0], default=t.n0 - 1) + 1
        points.extend(t.point(n) for n in range(t.n0, start) if n not in excl)
        final_tails.append(Tail(c, d, start))

    # drop pool points a segment or tail already covers, absorb extensions
    def covered(p):
        return any(lo <= p <= hi for lo, hi in nsegs) or \
            any(point_in_tail(p, t) for t in final_tails)

    pool = []
    for p in points:
        if not covered(p) and p not in pool:
            pool.append(p)
    changed = True
    while changed:
        changed = False
        for i, t in enumerate(final_tails):
            if t.n0 == 0:
                continue
            ext = t.point(t.n0 - 1)
            if ext in pool:
                final_tails[i] = Tail(t.limit, t.direction, t.n0 - 1)
                pool.remove(ext)
                changed = True

    all_segs = _merge_segs(nsegs + [(p, p) for p in pool])
    out = [Seg(lo, hi) for lo, hi in all_segs] + final_tails

    # closedness: every tail limit must be covered
    for t in final_tails:
        if not any(lo <= t.limit <= hi for lo, hi in all_segs):
            raise InputError(f"tail at {t.limit} is missing its limit point; "
                             "the set would not be closed")
    out.sort(key=_span_start)
    return out


# --- factories ---

EMPTY = IntervalSet(())


def seg(lo, hi) -> IntervalSet:
    return IntervalSet((Seg(_num(lo), _num(hi)),))


def pt(x) -> IntervalSet:
    x = _num(x)
    return IntervalSet((Seg(x, x),))


def tail(limit, direction: int, n0: int) -> IntervalSet:
    """The geometric tail together with its limit point, clamped to [0,1]."""
    limit = _num(limit)
    return IntervalSet((Seg(limit, limit), Tail(limit, direction, n0)))


def from_pieces(pieces) -> IntervalSet:
    return IntervalSet(tuple(pieces))


FULL = None  # assigned below


def _num(x) -> Num:
    if isinstance(x, Num):
        return x
    return Num(x)


# --- the lattice operations ---

@lru_cache(maxsize=262144)
def iv_union(x: IntervalSet, y: IntervalSet) -> IntervalSet:
    return IntervalSet(x.pieces + y.pieces)


def _isect_seg_seg(a: Seg, b: Seg):
    lo = a.lo if a.lo >= b.lo else b.lo
    hi = a.hi if a.hi <= b.hi else b.hi
    if lo > hi:
        return []
    return [Seg(lo, hi)]


def _isect_seg_tail(s: Seg, t: Tail):
    ns, cof = tail_ns_in_range(t, s.lo, s.hi)
    out = [Seg(t.point(n), t.point(n)) for n in ns]
    if cof is not None:
        # all deep points are inside, and so is the limit (s is closed)
        out.append(Tail(t.limit, t.direction, cof))
        out.append(Seg(t.limit, t.limit))
    return out


def _isect_tail_tail(a: Tail, b: Tail):
    if a.limit == b.limit and a.direction == b.direction:
        return [Tail(a.limit, a.direction, max(a.n0, b.n0))]
    shared = shared_tail_indices(a, b)
    return [Seg(b.point(n), b.point(n)) for n in shared]


@lru_cache(maxsize=262144)
def iv_intersect(x: IntervalSet, y: IntervalSet) -> IntervalSet:
    soup = []
    for p in x.pieces:
        for q in y.pieces:
            if isinstance(p, Seg) and isinstance(q, Seg):
                soup.extend(_isect_seg_seg(p, q))
            elif isinstance(p, Seg):
                soup.extend(_isect_seg_tail(p, q))
            elif isinstance(q, Seg):
                soup.extend(_isect_seg_tail(q, p))
            else:
                soup.extend(_isect_tail_tail(p, q))
    return IntervalSet(tuple(soup))


def iv_subset(x: IntervalSet, y: IntervalSet) -> bool:
    return iv_intersect(x, y) == x


def is_connected_pointset(x: IntervalSet) -> bool:
    """Connected as a subset of [0,1]: one piece and it is a segment.
    The empty set counts as not connected (a documented convention)."""
    return len(x.pieces) == 1 and isinstance(x.pieces[0], Seg)


# --- literals: [lo,hi], pt(x), tail(c,+|-,n0), joined by 'u'; 'empty' ---

_NUM_RE = r"-?\d+(?:/\d+)?"
_NUM_FULL = rf"(?:{_NUM_RE}\s*[+-]\s*)?{_NUM_RE}\s*\*\s*rt2|{_NUM_RE}"


def parse_num(text: str) -> Num:
    text = text.strip()
    m = re.fullmatch(rf"({_NUM_RE})\s*([+-])\s*({_NUM_RE})\s*\*\s*rt2", text)
    if m:
        s = Fraction(m.group(3))
        return Num(Fraction(m.group(1)), -s if m.group(2) == "-" else s)
    m = re.fullmatch(rf"({_NUM_RE})\s*\*\s*rt2", text)
    if m:
        return Num(0, Fraction(m.group(1)))
    m = re.fullmatch(_NUM_RE, text)
    if m:
        return Num(Fraction(text))
    raise InputError(f"cannot parse number {text!r}")


def parse_literal(text: str) -> IntervalSet:
    text = text.strip()
    if text in ("empty", "0"):
        return EMPTY
    soup = []
    for part in re.split(r"\bu\b", text):
        part = part.strip()
        if not part:
            raise InputError(f"empty piece in interval literal {text!r}")
        if part.startswith("["):
            m = re.fullmatch(r"\[([^,\]]+),([^,\]]+)\]", part)
            if not m:
                raise InputError(f"bad segment literal {part!r}")
            soup.append(Seg(parse_num(m.group(1)), parse_num(m.group(2))))
        elif part.startswith("pt"):
            m = re.fullmatch(r"pt\(([^)]*)\)", part)
            if not m:
                raise InputError(f"bad point literal {part!r}")
            x = parse_num(m.group(1))
            soup.append(Seg(x, x))
        elif part.startswith("tail"):
            m = re.fullmatch(r"tail\(([^,)]+),\s*([+-])\s*,\s*(\d+)\)", part)
            if not m:
                raise InputError(f"bad tail literal {part!r}")
            c = parse_num(m.group(1))
            d = 1 if m.group(2) == "+" else -1
            soup.append(Seg(c, c))
            soup.append(Tail(c, d, int(m.group(3))))
        else:
            raise InputError(f"unrecognized piece {part!r}")
    return IntervalSet(tuple(soup))


def num_literal(x: Num) -> str:
    return str(x)


def to_literal(x: IntervalSet) -> str:
    if x.is_empty():
        return "empty"
    tail_limits = {t.limit for t in x.tails()}
    parts = []
    for p in x.pieces:
        if isinstance(p, Seg):
            if p.lo == p.hi:
                if p.lo in tail_limits:
                    continue  # implied by the tail literal
                parts.append(f"pt({num_literal(p.lo)})")
            else:
                parts.append(f"[{num_literal(p.lo)},{num_literal(p.hi)}]")
        else:
            sign = "+" if p.direction > 0 else "-"
            parts.append(f"tail({num_literal(p.limit)},{sign},{p.n0})")
    return " u ".join(parts)


FULL = seg(0, 1)
