"""Constructors for the dimension formula families.

delta_formula(n) characterizes covering dimension <= n over a lattice base;
ind_formula(n) and dg_formula(n) are the recursive inductive-dimension and
cut-dimension formulas, realized by inlining the recursion with fresh
variable names so the result stays plain first-order.  All of them relate
dimension of the represented space to satisfaction in the lattice.
"""

from __future__ import annotations

from ..config import DEFAULT_LIMITS, Limits
from ..errors import ResourceError
from .ast import And, Const, Eq, Exists, Forall, Implies, Le, Meet, Join, Not, Or, Var


def _and_all(parts):
    f = parts[0]
    for p in parts[1:]:
        f = And(f, p)
    return f


def _meet_all(terms):
    t = terms[0]
    for u in terms[1:]:
        t = Meet(t, u)
    return t


def _join_all(terms):
    t = terms[0]
    for u in terms[1:]:
        t = Join(t, u)
    return t


def delta_formula(n: int, limits: Limits = DEFAULT_LIMITS):
    """Forall x_1..x_{n+2} exists y_1..y_{n+2}: if the x's have empty meet,
    they expand to y's with empty meet that join to 1."""
    if n < 0:
        raise ResourceError("delta index must be >= 0")
    if n > limits.delta_n_max:
        raise ResourceError(f"delta index {n} exceeds bound {limits.delta_n_max}")
    k = n + 2
    xs = [Var(f"x{i}") for i in range(1, k + 1)]
    ys = [Var(f"y{i}") for i in range(1, k + 1)]
    antecedent = Eq(_meet_all(xs), Const(0))
    consequent = _and_all(
        [Le(x, y) for x, y in zip(xs, ys)]
        + [Eq(_meet_all(ys), Const(0)), Eq(_join_all(ys), Const(1))])
    body = Implies(antecedent, consequent)
    for y in reversed(ys):
        body = Exists(y.name, body)
    for x in reversed(xs):
        body = Forall(x.name, body)
    return body


def part_formula(u="u", x="x", y="y", a="a"):
    """part(u,x,y,a): u is a partition between x and y inside a, i.e. some
    closed f, g cover a, avoid x and y respectively, and meet exactly in u."""
    f, g = Var(f"{u}_f"), Var(f"{u}_g")
    body = _and_all([
        Eq(Meet(Var(x), f), Const(0)),
        Eq(Meet(Var(y), g), Const(0)),
        Eq(Join(f, g), Var(a)),
        Eq(Meet(f, g), Var(u)),
    ])
    return Exists(f.name, Exists(g.name, body))


def ind_formula(n: int, limits: Limits = DEFAULT_LIMITS):
    """I_n(a) with parameter a; I_{-1}(a) is a = 0."""
    if n < -1:
        raise ResourceError("inductive index must be >= -1")
    if n > limits.ind_n_max:
        raise ResourceError(f"inductive index {n} exceeds bound {limits.ind_n_max}")

    def rec(k: int, subject):
        if k == -1:
            return Eq(subject, Const(0))
        x, y, u = f"x{k}", f"y{k}", f"u{k}"
        f, g = f"f{k}", f"g{k}"
        part = Exists(f, Exists(g, _and_all([
            Eq(Meet(Var(x), Var(f)), Const(0)),
            Eq(Meet(Var(y), Var(g)), Const(0)),
            Eq(Join(Var(f), Var(g)), subject),
            Eq(Meet(Var(f), Var(g)), Var(u)),
        ])))
        antecedent = _and_all([Le(Var(x), subject), Le(Var(y), subject),
                               Eq(Meet(Var(x), Var(y)), Const(0))])
        body = Implies(antecedent, And(part, rec(k - 1, Var(u))))
        return Forall(x, Forall(y, Exists(u, body)))

    return rec(n, Var("a"))


def conn_formula(a="a"):
    """conn(a): a does not split into two nonzero disjoint lattice elements."""
    x, y = f"{a}_cx", f"{a}_cy"
    body = Implies(
        And(Eq(Meet(Var(x), Var(y)), Const(0)), Eq(Join(Var(x), Var(y)), Var(a))),
        Or(Eq(Var(x), Const(0)), Eq(Var(x), Var(a))))
    return Forall(x, Forall(y, body))


def cut_formula(u="u", x="x", y="y", a="a"):
    """cut(u,x,y,a): every connected v <= a meeting x and y also meets u."""
    v = f"{u}_v"
    cx, cy = f"{u}_vx", f"{u}_vy"
    conn_v = Forall(cx, Forall(cy, Implies(
        And(Eq(Meet(Var(cx), Var(cy)), Const(0)), Eq(Join(Var(cx), Var(cy)), Var(v))),
        Or(Eq(Var(cx), Const(0)), Eq(Var(cx), Var(v))))))
    antecedent = _and_all([
        Le(Var(v), Var(a)),
        conn_v,
        Not(Eq(Meet(Var(v), Var(x)), Const(0))),
        Not(Eq(Meet(Var(v), Var(y)), Const(0))),
    ])
    return Forall(v, Implies(antecedent, Not(Eq(Meet(Var(v), Var(u)), Const(0)))))


def dg_formula(n: int, limits: Limits = DEFAULT_LIMITS):
    """Delta_n(a) with parameter a; Delta_{-1}(a) is a = 0."""
    if n < -1:
        raise ResourceError("cut-dimension index must be >= -1")
    if n > limits.dg_n_max:
        raise ResourceError(f"cut-dimension index {n} exceeds bound {limits.dg_n_max}")

    def rec(k: int, subject):
        if k == -1:
            return Eq(subject, Const(0))
        x, y, u = f"x{k}", f"y{k}", f"u{k}"
        v, cx, cy = f"v{k}", f"cx{k}", f"cy{k}"
        conn_v = Forall(cx, Forall(cy, Implies(
            And(Eq(Meet(Var(cx), Var(cy)), Const(0)), Eq(Join(Var(cx), Var(cy)), Var(v))),
            Or(Eq(Var(cx), Const(0)), Eq(Var(cx), Var(v))))))
        cut = Forall(v, Implies(
            _and_all([Le(Var(v), subject), conn_v,
                      Not(Eq(Meet(Var(v), Var(x)), Const(0))),
                      Not(Eq(Meet(Var(v), Var(y)), Const(0)))]),
            Not(Eq(Meet(Var(v), Var(u)), Const(0)))))
        antecedent = _and_all([Le(Var(x), subject), Le(Var(y), subject),
                               Eq(Meet(Var(x), Var(y)), Const(0))])
        body = Implies(antecedent, And(cut, rec(k - 1, Var(u))))
        return Forall(x, Forall(y, Exists(u, body)))

    return rec(n, Var("a"))
