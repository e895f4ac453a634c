"""Named existential witness schemas and families of them.

A schema is an existential-block formula over declared parameter slots plus
an optional quantifier-free guard saying when it applies.  Families drive
the witness-closure engine; the built-in family covers the separativity,
normality and dimension-zero expansion schemas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .engine import compiled
from .errors import InputError
from .formulas import ast, parse


@dataclass(frozen=True)
class Schema:
    name: str
    params: tuple
    formula: object          # AST, begins with an existential block
    guard: object = None     # quantifier-free AST over the params, or None
    source: str = ""
    guard_source: str = ""

    def __post_init__(self):
        prog = compiled(self.formula)
        if not prog.exists_block:
            raise InputError(f"schema {self.name!r} must start with an existential block")
        free = ast.free_names(self.formula)
        if not free <= set(self.params):
            extra = sorted(free - set(self.params))
            raise InputError(f"schema {self.name!r} uses undeclared parameter(s) {extra}")
        if self.guard is not None:
            if ast.bound_names(self.guard):
                raise InputError(f"guard of schema {self.name!r} must be quantifier-free")
            if not ast.free_names(self.guard) <= set(self.params):
                raise InputError(f"guard of {self.name!r} mentions undeclared names")


@dataclass(frozen=True)
class FormulaFamily:
    schemas: tuple

    def __iter__(self):
        return iter(self.schemas)

    def __len__(self):
        return len(self.schemas)


def make_schema(name: str, params, formula_src: str, guard_src: str | None = None) -> Schema:
    return Schema(name=name, params=tuple(params), formula=parse(formula_src),
                  guard=parse(guard_src) if guard_src else None,
                  source=formula_src, guard_source=guard_src or "")


SEPARATIVITY = make_schema(
    "separativity", ["a", "b"],
    "E c. (c <= a) & !(c = 0) & (c ^ b = 0)",
    "!(a <= b)")

NORMALITY = make_schema(
    "normality", ["a", "b"],
    "E f. E g. (a ^ f = 0) & (b ^ g = 0) & (f v g = 1)",
    "a ^ b = 0")

DIM0_EXPANSION = make_schema(
    "dim0-expansion", ["x1", "x2"],
    "E y1. E y2. (x1 <= y1) & (x2 <= y2) & (y1 ^ y2 = 0) & (y1 v y2 = 1)",
    "x1 ^ x2 = 0")

# contraposition companion: pulls a failing pair into the subfamily whenever
# the ambient lattice refutes the dimension-zero expansion property
DIM0_FAILURE = make_schema(
    "dim0-failure", [],
    "E x1. E x2. (x1 ^ x2 = 0) & "
    "!(E y1. E y2. (x1 <= y1) & (x2 <= y2) & (y1 ^ y2 = 0) & (y1 v y2 = 1))")

BASIC_FAMILY = FormulaFamily((SEPARATIVITY, NORMALITY, DIM0_EXPANSION))


def family_from_json(data) -> FormulaFamily:
    if not isinstance(data, list):
        raise InputError("family file must contain a JSON list of schemas")
    schemas = []
    for item in data:
        if not isinstance(item, dict) or "name" not in item or "formula" not in item:
            raise InputError('each schema needs at least "name" and "formula"')
        schemas.append(make_schema(item["name"], item.get("params", []),
                                   item["formula"], item.get("guard")))
    return FormulaFamily(tuple(schemas))


def load_family(path) -> FormulaFamily:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read family file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")
    return family_from_json(data)


def family_to_json(family: FormulaFamily) -> str:
    out = []
    for s in family:
        item = {"name": s.name, "params": list(s.params),
                "formula": s.source or ast.to_source(s.formula)}
        if s.guard is not None:
            item["guard"] = s.guard_source or ast.to_source(s.guard)
        out.append(item)
    return json.dumps(out, indent=2) + "\n"
