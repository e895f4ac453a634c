from .ast import (And, Const, Eq, Exists, Forall, Implies, Join, Le, Meet, Not,
                  Or, Var, bound_names, check_well_formed, free_names, to_source)
from .builders import (conn_formula, cut_formula, delta_formula, dg_formula,
                       ind_formula, part_formula)
from .parse import parse

__all__ = [
    "Var", "Const", "Meet", "Join", "Eq", "Le", "Not", "And", "Or", "Implies",
    "Forall", "Exists", "free_names", "bound_names", "check_well_formed",
    "to_source", "parse", "delta_formula", "part_formula", "ind_formula",
    "conn_formula", "cut_formula", "dg_formula",
]
