"""First-order lattice formulas over meet, join, 0, 1, =, <=.

Terms and formulas are small frozen dataclasses.  A name that is never
quantified is a parameter; well-formedness demands that parameter names and
quantified names are disjoint and that no quantifier shadows another.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnboundVariableError


# --- terms ---

@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Const:
    value: int  # 0 or 1

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError("Const must be 0 or 1")


@dataclass(frozen=True, slots=True)
class Meet:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Join:
    left: object
    right: object


# --- formulas ---

@dataclass(frozen=True, slots=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Le:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Not:
    body: object


@dataclass(frozen=True, slots=True)
class And:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: object


TERM_TYPES = (Var, Const, Meet, Join)
BINARY = {And: "&", Or: "|", Implies: "->"}


def _term_names(t, acc):
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, (Meet, Join)):
        _term_names(t.left, acc)
        _term_names(t.right, acc)
    elif not isinstance(t, Const):
        raise TypeError(f"not a term: {t!r}")


def free_names(f) -> set[str]:
    """Names with a free occurrence (these are the formula's parameters)."""
    out: set[str] = set()

    def walk(node, bound):
        if isinstance(node, (Eq, Le)):
            names: set[str] = set()
            _term_names(node.left, names)
            _term_names(node.right, names)
            out.update(names - bound)
        elif isinstance(node, Not):
            walk(node.body, bound)
        elif isinstance(node, (And, Or, Implies)):
            walk(node.left, bound)
            walk(node.right, bound)
        elif isinstance(node, (Forall, Exists)):
            walk(node.body, bound | {node.var})
        else:
            raise TypeError(f"not a formula: {node!r}")

    walk(f, set())
    return out


def bound_names(f) -> set[str]:
    out: set[str] = set()

    def walk(node):
        if isinstance(node, (Forall, Exists)):
            out.add(node.var)
            walk(node.body)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, (And, Or, Implies)):
            walk(node.left)
            walk(node.right)
        elif not isinstance(node, (Eq, Le)):
            raise TypeError(f"not a formula: {node!r}")

    walk(f)
    return out


def check_well_formed(f):
    """Reject shadowed quantifiers and names used both bound and free."""
    seen_quantified: set[str] = set()

    def walk(node, in_scope):
        if isinstance(node, (Forall, Exists)):
            if node.var in in_scope:
                raise UnboundVariableError(
                    f"variable {node.var!r} is quantified twice along one branch", node.var)
            seen_quantified.add(node.var)
            walk(node.body, in_scope | {node.var})
        elif isinstance(node, Not):
            walk(node.body, in_scope)
        elif isinstance(node, (And, Or, Implies)):
            walk(node.left, in_scope)
            walk(node.right, in_scope)

    walk(f, set())
    clash = free_names(f) & seen_quantified
    if clash:
        name = sorted(clash)[0]
        raise UnboundVariableError(
            f"variable {name!r} occurs free but is quantified elsewhere", name)
    return f


# --- printing (round-trips through parse) ---

def _print_term(t, parent_meet=False):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Meet):
        left = _print_term(t.left, parent_meet=False)
        right = _print_term(t.right, parent_meet=True)
        if isinstance(t.left, Join):
            left = f"({left})"
        if isinstance(t.right, (Join, Meet)):
            right = f"({right})"
        return f"{left} ^ {right}"
    if isinstance(t, Join):
        left = _print_term(t.left)
        right = _print_term(t.right)
        if isinstance(t.right, Join):
            right = f"({right})"
        s = f"{left} v {right}"
        return s
    raise TypeError(f"not a term: {t!r}")


# formula precedence levels: -> is 1, | is 2, & is 3, ! is 4, atoms/quantifiers wrap
_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def _print_formula(f, level):
    if isinstance(f, Eq):
        return f"{_print_term(f.left)} = {_print_term(f.right)}"
    if isinstance(f, Le):
        return f"{_print_term(f.left)} <= {_print_term(f.right)}"
    if isinstance(f, (Forall, Exists)):
        q = "A" if isinstance(f, Forall) else "E"
        body = _print_formula(f.body, 0)
        s = f"{q} {f.var}. {body}"
        return f"({s})" if level > 0 else s
    if isinstance(f, Not):
        body = _print_formula(f.body, 5)
        if isinstance(f.body, (Eq, Le)):
            body = f"({body})"
        return f"!{body}"
    prec = _PREC[type(f)]
    op = BINARY[type(f)]
    if isinstance(f, Implies):  # right-associative
        left = _print_formula(f.left, prec + 1)
        right = _print_formula(f.right, prec)
    else:  # left-associative
        left = _print_formula(f.left, prec)
        right = _print_formula(f.right, prec + 1)
    s = f"{left} {op} {right}"
    return f"({s})" if level > prec else s


def to_source(f) -> str:
    """Render a formula in the ASCII DSL; parse(to_source(f)) == f."""
    return _print_formula(f, 0)
