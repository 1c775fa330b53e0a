"""JSON schemas for algebras, modules, subspaces, polynomials and configs.

Schema violations raise SchemaError with the offending path or axiom named,
so the CLI can map them to its usage/schema exit code.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .algebras import Algebra, AlgebraAxiomError
from .fields import QQ, Field, field_from_json
from .linalg import Subspace
from .modules import ModuleAxiomError, ModuleSpace
from .polyspaces import EvalConfig, IntegralConfig, Poly


class SchemaError(ValueError):
    pass


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    return obj[key]


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read JSON from {path}: {exc}") from exc


def parse_field(obj) -> Field:
    try:
        return field_from_json(obj)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def parse_vector(field: Field, obj, where="vector") -> tuple:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: expected a JSON array")
    try:
        return tuple(field.parse_scalar(x) for x in obj)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def parse_matrix(field: Field, obj, where="matrix") -> tuple:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: expected a JSON array of rows")
    return tuple(parse_vector(field, row, f"{where}[{i}]") for i, row in enumerate(obj))


def vector_to_json(field: Field, v) -> list:
    return [field.scalar_to_json(x) for x in v]


def matrix_to_json(field: Field, rows) -> list:
    return [vector_to_json(field, r) for r in rows]


# -- algebra -----------------------------------------------------------------------


def algebra_from_json(obj, check: bool = True) -> Algebra:
    field = parse_field(_require(obj, "field", "algebra"))
    dim = _require(obj, "dim", "algebra")
    structure = _require(obj, "structure", "algebra")
    unit = parse_vector(field, _require(obj, "unit", "algebra"), "algebra.unit")
    if not isinstance(structure, list) or len(structure) != dim:
        raise SchemaError(f"algebra.structure: expected {dim} rows")
    rows = []
    for i, row in enumerate(structure):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"algebra.structure[{i}]: expected {dim} cells")
        rows.append(tuple(parse_vector(field, cell, f"algebra.structure[{i}][{j}]")
                          for j, cell in enumerate(row)))
    try:
        return Algebra(field, rows, unit, name=obj.get("name"), check=check)
    except AlgebraAxiomError as exc:
        raise SchemaError(str(exc)) from exc


def algebra_to_json(a: Algebra) -> dict:
    f = a.field
    return {
        "field": f.to_json(),
        "dim": a.dim,
        "unit": vector_to_json(f, a.unit),
        "structure": [[vector_to_json(f, cell) for cell in row] for row in a.structure],
        "name": a.name,
    }


# -- module ------------------------------------------------------------------------


def module_from_json(obj, base_dir: str = ".", check: bool = True) -> ModuleSpace:
    spec = _require(obj, "algebra", "module")
    if isinstance(spec, str):
        spec = load_json(os.path.join(base_dir, spec))
    algebra = algebra_from_json(spec, check=check)
    actions = _require(obj, "actions", "module")
    if not isinstance(actions, list):
        raise SchemaError("module.actions: expected an array of matrices")
    mats = [parse_matrix(algebra.field, m, f"module.actions[{i}]")
            for i, m in enumerate(actions)]
    try:
        module = ModuleSpace(algebra, mats, name=obj.get("name"), check=check)
    except ModuleAxiomError as exc:
        raise SchemaError(str(exc)) from exc
    if "dim" in obj and obj["dim"] != module.dim:
        raise SchemaError(f"module.dim says {obj['dim']} but actions are {module.dim}-dimensional")
    return module


def module_to_json(m: ModuleSpace) -> dict:
    return {
        "algebra": algebra_to_json(m.algebra),
        "dim": m.dim,
        "actions": [matrix_to_json(m.field, a) for a in m.actions],
        "name": m.name,
    }


# -- subspace ----------------------------------------------------------------------


def subspace_from_json(field: Field, obj) -> Subspace:
    ambient = _require(obj, "ambient", "subspace")
    basis = _require(obj, "basis", "subspace")
    rows = [parse_vector(field, row, f"subspace.basis[{i}]") for i, row in enumerate(basis)]
    try:
        return Subspace(field, ambient, rows)
    except ValueError as exc:
        raise SchemaError(f"subspace: {exc}") from exc


def subspace_to_json(s: Subspace) -> dict:
    return s.to_json()


# -- polynomials and configs ---------------------------------------------------------


def poly_from_json(field: Field, obj) -> Poly:
    nvars = _require(obj, "vars", "poly")
    terms_json = _require(obj, "terms", "poly")
    terms = {}
    for i, t in enumerate(terms_json):
        exp = tuple(_require(t, "exp", f"poly.terms[{i}]"))
        try:
            coef = field.parse_scalar(_require(t, "coef", f"poly.terms[{i}]"))
        except ValueError as exc:
            raise SchemaError(f"poly.terms[{i}].coef: {exc}") from exc
        terms[exp] = coef
    try:
        return Poly(field, nvars, terms)
    except ValueError as exc:
        raise SchemaError(f"poly: {exc}") from exc


def poly_to_json(p: Poly) -> dict:
    f = p.field
    terms = [{"exp": list(e), "coef": f.scalar_to_json(c)}
             for e, c in sorted(p.terms.items())]
    return {"vars": p.nvars, "terms": terms}


def eval_config_from_json(obj) -> EvalConfig:
    field = parse_field(_require(obj, "field", "eval config"))
    points = [parse_vector(field, p, f"points[{i}]")
              for i, p in enumerate(_require(obj, "points", "eval config"))]
    alpha = parse_vector(field, _require(obj, "alpha", "eval config"), "alpha")
    try:
        return EvalConfig(field, tuple(points), alpha)
    except ValueError as exc:
        raise SchemaError(f"eval config: {exc}") from exc


def integral_config_from_json(obj) -> IntegralConfig:
    a = QQ.parse_scalar(_require(obj, "a", "integral config"))
    b = QQ.parse_scalar(_require(obj, "b", "integral config"))
    q = poly_from_json(QQ, _require(obj, "q", "integral config"))
    try:
        return IntegralConfig(Fraction(a), Fraction(b), q)
    except ValueError as exc:
        raise SchemaError(f"integral config: {exc}") from exc
