"""JSON interchange for algebras, products, connections, forms, symbols.

Rationals travel as strings ("3", "-1/2") because JSON numbers are lossy.
Sparse tables list only nonzero entries; loaders complete the declared
symmetry and reject contradictory duplicates. Every dumper/loader pair
round-trips to exact equality.

Documents:
    algebra     {"dim": m, "bracket": [[i, j, k, "p/q"], ...]}
    product     {"dim": m, "gamma":   [[i, j, k, "p/q"], ...]}
    connection  same as product, interpreted over a base algebra
    form        {"dim": m, "sym": "symmetric"|"skew"|"general",
                 "entries": [[i, j, "p/q"], ...]}
    symbol      {"v": m, "w": w, "basis": [[row-major rationals], ...]}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from koszul.algebra import (
    BilinearProduct,
    LieAlgebra,
    lie_from_sparse,
    product_from_sparse,
)
from koszul.connections import InvariantConnection
from koszul.errors import ValidationError
from koszul.forms import BilinearForm, form_from_sparse
from koszul.spencer import SymbolSpace, symbol_space

_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.fullmatch(value):
            raise ValidationError(
                f"bad rational literal {value!r}; use \"p\" or \"p/q\"")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {value!r}") from exc
    if isinstance(value, float):
        raise ValidationError(
            f"floats are not accepted as rationals: {value!r}; "
            "use a string like \"1/3\"")
    raise ValidationError(f"expected a rational, got {value!r}")


def fraction_str(f: Fraction) -> str:
    return str(f)


def read_document(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top-level JSON must be an object")
    return doc


def _require(doc: dict, key: str, path):
    if key not in doc:
        raise ValidationError(f"{path}: missing key {key!r}")
    return doc[key]


def _int_field(doc: dict, key: str, path) -> int:
    v = _require(doc, key, path)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ValidationError(f"{path}: {key!r} must be a non-negative "
                              f"integer, got {v!r}")
    return v


def _sparse_triples(doc: dict, key: str, dim: int, path):
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: {key!r} must be a list")
    out = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ValidationError(
                f"{path}: each {key} entry must be [i, j, k, value], "
                f"got {entry!r}")
        i, j, k, val = entry
        for idx in (i, j, k):
            if not isinstance(idx, int) or isinstance(idx, bool) or \
                    not 0 <= idx < dim:
                raise ValidationError(
                    f"{path}: index {idx!r} out of range for dim {dim}")
        out.append((i, j, k, parse_fraction(val)))
    return out


def load_algebra(path) -> LieAlgebra:
    doc = read_document(path)
    dim = _int_field(doc, "dim", path)
    return lie_from_sparse(dim, _sparse_triples(doc, "bracket", dim, path))


def dump_algebra(algebra: LieAlgebra) -> dict:
    entries = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            for k in range(algebra.dim):
                v = algebra.c[i][j][k]
                if v:
                    entries.append([i, j, k, fraction_str(v)])
    return {"dim": algebra.dim, "bracket": entries}


def load_product(path) -> BilinearProduct:
    doc = read_document(path)
    dim = _int_field(doc, "dim", path)
    return product_from_sparse(dim, _sparse_triples(doc, "gamma", dim, path))


def dump_product(p: BilinearProduct) -> dict:
    entries = []
    for i in range(p.dim):
        for j in range(p.dim):
            for k in range(p.dim):
                v = p.gamma[i][j][k]
                if v:
                    entries.append([i, j, k, fraction_str(v)])
    return {"dim": p.dim, "gamma": entries}


def load_connection(path, base: LieAlgebra) -> InvariantConnection:
    p = load_product(path)
    if p.dim != base.dim:
        raise ValidationError(
            f"{path}: connection dim {p.dim} does not match the base "
            f"algebra dim {base.dim}")
    return InvariantConnection(base, p)


def dump_connection(conn: InvariantConnection) -> dict:
    return dump_product(conn.gamma)


def load_form(path) -> BilinearForm:
    doc = read_document(path)
    dim = _int_field(doc, "dim", path)
    sym = doc.get("sym", "general")
    if sym not in ("symmetric", "skew", "general"):
        raise ValidationError(f"{path}: bad symmetry tag {sym!r}")
    raw = doc.get("entries", [])
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: 'entries' must be a list")
    entries = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValidationError(
                f"{path}: each form entry must be [i, j, value], "
                f"got {entry!r}")
        i, j, val = entry
        for idx in (i, j):
            if not isinstance(idx, int) or isinstance(idx, bool) or \
                    not 0 <= idx < dim:
                raise ValidationError(
                    f"{path}: index {idx!r} out of range for dim {dim}")
        entries.append((i, j, parse_fraction(val)))
    return form_from_sparse(dim, sym, entries)


def dump_form(form: BilinearForm) -> dict:
    entries = []
    for i in range(form.dim):
        for j in range(form.dim):
            if form.sym == "symmetric" and j < i:
                continue
            if form.sym == "skew" and j <= i:
                continue
            v = form.entries[i][j]
            if v:
                entries.append([i, j, fraction_str(v)])
    return {"dim": form.dim, "sym": form.sym, "entries": entries}


def load_symbol(path) -> SymbolSpace:
    doc = read_document(path)
    v = _int_field(doc, "v", path)
    w = _int_field(doc, "w", path)
    raw = doc.get("basis", [])
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: 'basis' must be a list")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != v * w:
            raise ValidationError(
                f"{path}: each basis row must list {v * w} rationals "
                "(row-major w x v)")
        rows.append([parse_fraction(x) for x in row])
    return symbol_space(v, w, rows)


def dump_symbol(a: SymbolSpace) -> dict:
    if a.order != 1:
        raise ValidationError("only order-1 symbols have a file form")
    return {"v": a.v_dim, "w": a.w_dim,
            "basis": [[fraction_str(x) for x in b] for b in a.basis]}


def dump_space(space, r_b: int | None = None) -> dict:
    """Solution-space report: {"dim_solution", "basis", optional "r_b"}."""
    doc = {
        "dim_solution": space.dim,
        "basis": [[fraction_str(x) for x in b] for b in space.basis],
    }
    if space.shape is not None:
        doc["shape"] = list(space.shape)
    if r_b is not None:
        doc["r_b"] = r_b
    return doc


def jsonable(obj):
    """Recursively convert report payloads to JSON-encodable values."""
    from dataclasses import fields, is_dataclass

    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    try:
        import numpy as np
        if isinstance(obj, np.ndarray):
            return [jsonable(x) for x in obj.tolist()]
        if isinstance(obj, (np.floating, np.integer)):
            return float(obj)
    except ImportError:
        pass
    return str(obj)
