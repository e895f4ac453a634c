"""Evidence reports for the three interval base families.

Everything here quantifies over finite samples of infinite lattices, so all
computed truth values are bounded evidence, labeled as such; the reports
never claim ground truth about the full lattices.
"""

from __future__ import annotations

from fractions import Fraction

from .basespec import BaseSpec, close_sample, generate_sample
from .bounded import SampleUniverse, bounded_eval
from .errors import InputError
from .formulas import ast, parse
from .intervals import FULL, IntervalSet, is_connected_pointset, seg, to_literal
from .qnum import Num

ZERO_PARTITION_BETWEEN = parse(
    "E f. E g. (x ^ f = 0) & (y ^ g = 0) & (f v g = 1) & (f ^ g = 0)")

SPLIT_TOP = parse(
    "E f. E g. (f ^ g = 0) & (f v g = 1) & !(f = 0) & !(g = 0)")

# cut-dimension-zero formula at the top element, in two readings: the cut
# condition quantified over every element, and over every non-top element
# (whether "connected element" should include the whole space is exactly
# the ambiguity the report documents)
DG0_ALL = parse(
    "A x. A y. E u. ((x ^ y = 0) -> ("
    "(A w. ((A cx. A cy. ((cx ^ cy = 0) & (cx v cy = w)) -> ((cx = 0) | (cx = w)))"
    " & !(w ^ x = 0) & !(w ^ y = 0)) -> !(w ^ u = 0))"
    " & (u = 0)))")

DG0_NONTOP = parse(
    "A x. A y. E u. ((x ^ y = 0) -> ("
    "(A w. (!(w = 1) &"
    " (A cx. A cy. ((cx ^ cy = 0) & (cx v cy = w)) -> ((cx = 0) | (cx = w)))"
    " & !(w ^ x = 0) & !(w ^ y = 0)) -> !(w ^ u = 0))"
    " & (u = 0)))")


def demo_report(base: BaseSpec, depth: int, sample_seed: int) -> dict:
    if base.kind == "base32":
        return _demo_base32(base, depth, sample_seed)
    if base.kind == "base33":
        return _demo_base33(base, depth, sample_seed)
    return _demo_rational(base, depth, sample_seed)


def _header(base: BaseSpec, depth, sample_seed, sample):
    return {
        "kind": base.kind,
        "depth": depth,
        "sample_seed": sample_seed,
        "sample_size": len(sample),
        "evidence_only": True,
        "note": "all values are quantified over the finite sample, not the full lattice",
    }


def _demo_rational(base, depth, sample_seed):
    sample = generate_sample(base, depth, sample_seed)
    uni = SampleUniverse(sample)
    split = bounded_eval(uni, SPLIT_TOP)
    report = _header(base, depth, sample_seed, sample)
    report["queries"] = {
        "top_splits_into_disjoint_nonzero": {
            "value": split, "evidence_only": True,
            "reading": "the unit interval is connected, so no sample can split it"},
    }
    return report


def _demo_base32(base, depth, sample_seed):
    """Evidence that the mixed rational/irrational base admits no partition
    with empty intersection between [0,1/4] and [3/4,1]."""
    sample = generate_sample(base, depth, sample_seed)
    x = seg(0, Fraction(1, 4))
    y = seg(Fraction(3, 4), 1)
    adjoined = x not in sample or y not in sample
    if adjoined:
        sample = close_sample([*sample, x, y])
    uni = SampleUniverse(sample)
    exists = bounded_eval(uni, ZERO_PARTITION_BETWEEN, {"x": x, "y": y})
    report = _header(base, depth, sample_seed, sample)
    report["query_pair_adjoined"] = adjoined
    report["queries"] = {
        "zero_partition_between": {
            "x": to_literal(x), "y": to_literal(y),
            "value": exists, "evidence_only": True,
            "reading": "no f, g in the sample cover [0,1] disjointly while "
                       "avoiding x and y; evidence toward the failure of the "
                       "inductive-dimension formula at every index"},
    }
    return report


def _demo_base33(base, depth, sample_seed, connectivity_count: int = 50):
    """Per-element disconnectedness plus the two readings of the
    cut-dimension-zero formula (the vacuity hinges on whether the whole
    space counts as a connected element)."""
    sample = generate_sample(base, depth, sample_seed)
    nontrivial = [s for s in sample if not s.is_empty() and s != FULL]
    rows = []
    for s in nontrivial:
        rows.append({"element": to_literal(s),
                     "topologically_connected": is_connected_pointset(s)})
    small = generate_sample(base, depth, sample_seed, max_size=80)
    uni = SampleUniverse(small)
    all_reading = bounded_eval(uni, DG0_ALL)
    nontop_reading = bounded_eval(uni, DG0_NONTOP)
    report = _header(base, depth, sample_seed, sample)
    report["connectivity"] = {
        "elements_reported": len(rows),
        "all_disconnected": all(not r["topologically_connected"] for r in rows),
        "rows": rows,
    }
    report["dg0_discrepancy"] = {
        "sample_size": len(small),
        "cut_over_all_elements": {"value": all_reading, "evidence_only": True},
        "cut_over_nontop_elements": {"value": nontop_reading, "evidence_only": True},
        "reading": "the two values differ exactly when the only connected "
                   "element meeting both sides of some disjoint pair is the "
                   "top element itself",
    }
    return report


def default_demo_spec(kind: str) -> BaseSpec:
    """Built-in parameter choices rich enough for the demo reports."""
    rt2_over_2 = Num(0, Fraction(1, 2))
    if kind == "rational_intervals":
        return BaseSpec(kind, rational=tuple(Num(Fraction(k, 4)) for k in range(5)))
    if kind == "base32":
        return BaseSpec(kind,
                        rational=(Num(Fraction(1, 4)), Num(Fraction(1, 2))),
                        irrational=(rt2_over_2,))
    if kind == "base33":
        rationals = tuple(Num(Fraction(k, 8)) for k in (1, 2, 3, 4, 6, 7))
        irrationals = (Num(0, Fraction(1, 4)), rt2_over_2, Num(1, Fraction(-1, 4)))
        return BaseSpec(kind, rational=rationals, irrational=irrationals)
    raise InputError(f"unknown base kind {kind!r}")
