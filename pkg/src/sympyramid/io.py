"""JSON documents for tables and pyramids, and DOT rendering.

Table document::

    {"variables": [{"name": "y1", "kind": "interval", "domain": [1, 6]}, ...],
     "rows": [{"id": 1, "cells": [[1, 4], ["2"], {"1": 0.4, "2": 0.1}]}, ...]}

Interval cells are ``[a, b]``, categorical cells a list of labels, modal
cells a ``{label: weight}`` object.

Pyramid document::

    {"variables": [...], "order": [...],
     "nodes": [{"id", "left", "right", "f", "object", "extent"}, ...],
     "meta": {"algorithm", "iterations", "N", "NG"}}
"""
from __future__ import annotations

import json
import sys
from typing import Optional

from .errors import DataError
from .model import NodeQuadruple, PyramidStructure
from .symbolic import (
    CategorySet,
    Interval,
    Kind,
    Modal,
    SymbolicObject,
    SymbolicTable,
    Variable,
    extent_modal,
)


def _num(x: float) -> float:
    """Round to 12 significant digits."""
    return float(f"{x:.12g}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise DataError(f"{where}: {msg}")


# --- variables and cells ------------------------------------------------------

def variable_from_json(raw, where: str) -> Variable:
    _expect(isinstance(raw, dict), where, "variable must be an object")
    for key in ("name", "kind", "domain"):
        _expect(key in raw, where, f"missing field {key!r}")
    kinds = [k.value for k in Kind]
    _expect(raw["kind"] in kinds, f"{where}.kind", f"must be one of {kinds}, got {raw['kind']!r}")
    _expect(isinstance(raw["domain"], list), f"{where}.domain", "must be a list")
    try:
        return Variable(str(raw["name"]), Kind(raw["kind"]), tuple(raw["domain"]))
    except DataError as exc:
        raise DataError(f"{where}: {exc}") from None


def variable_to_json(var: Variable) -> dict:
    domain = [_num(x) for x in var.domain] if var.kind is Kind.INTERVAL else list(var.domain)
    return {"name": var.name, "kind": var.kind.value, "domain": domain}


def cell_from_json(var: Variable, raw, where: str):
    try:
        if var.kind is Kind.INTERVAL:
            _expect(isinstance(raw, list) and len(raw) == 2, where, "interval cell must be [a, b]")
            _expect(all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw),
                    where, "interval bounds must be numbers")
            cell = Interval(raw[0], raw[1])
        elif var.kind is Kind.CATEGORICAL:
            _expect(isinstance(raw, list), where, "categorical cell must be a list of labels")
            cell = CategorySet(frozenset(str(x) for x in raw))
        else:
            _expect(isinstance(raw, dict), where, "modal cell must be an object {label: weight}")
            for label, w in raw.items():
                _expect(isinstance(w, (int, float)) and not isinstance(w, bool),
                        f"{where}[{label!r}]", "weight must be a number")
                _expect(0.0 <= w <= 1.0, f"{where}",
                        f"variable {var.name!r}, label {label!r}: weight {w} outside [0, 1]")
            cell = Modal(raw)
        var.check(cell)
    except DataError as exc:
        msg = str(exc)
        raise DataError(msg if msg.startswith(where) else f"{where}: {msg}") from None
    return cell


def cell_to_json(var: Variable, cell):
    if var.kind is Kind.INTERVAL:
        return [_num(cell.lo), _num(cell.hi)]
    if var.kind is Kind.CATEGORICAL:
        return [label for label in var.domain if label in cell.labels]
    weights = cell.as_dict()
    return {label: _num(weights[label]) for label in var.domain if label in weights}


def _description_from_json(schema, raw, where: str) -> tuple:
    _expect(isinstance(raw, list), where, "cells must be a list")
    _expect(len(raw) == len(schema), where, f"expected {len(schema)} cells, got {len(raw)}")
    return tuple(
        cell_from_json(var, c, f"{where}[{j}] ({var.name})")
        for j, (var, c) in enumerate(zip(schema, raw))
    )


def _schema_from_json(doc) -> tuple:
    _expect(isinstance(doc, dict), "document", "must be a JSON object")
    _expect(isinstance(doc.get("variables"), list), "variables", "must be a list")
    return tuple(variable_from_json(v, f"variables[{j}]") for j, v in enumerate(doc["variables"]))


# --- tables ---------------------------------------------------------------------

def parse_table(text: str) -> SymbolicTable:
    """Parse a table document. Every error names the offending position."""
    doc = _loads(text)
    schema = _schema_from_json(doc)
    _expect(len(schema) > 0, "variables", "table must declare at least one variable")
    _expect(isinstance(doc.get("rows"), list), "rows", "must be a list")
    _expect(len(doc["rows"]) > 0, "rows", "table must contain at least one row")
    rows = {}
    for k, row in enumerate(doc["rows"]):
        where = f"rows[{k}]"
        _expect(isinstance(row, dict), where, "row must be an object")
        rid = row.get("id", k + 1)
        _expect(isinstance(rid, int) and not isinstance(rid, bool), f"{where}.id", "must be an integer")
        _expect(rid not in rows, f"{where}.id", f"duplicate row id {rid}")
        rows[rid] = _description_from_json(schema, row.get("cells"), f"{where}.cells")
    _expect(sorted(rows) == list(range(1, len(rows) + 1)), "rows",
            f"row ids must be 1..{len(rows)}, got {sorted(rows)}")
    return SymbolicTable(schema, [rows[i] for i in sorted(rows)])


def table_document(table: SymbolicTable) -> dict:
    return {
        "variables": [variable_to_json(v) for v in table.schema],
        "rows": [
            {"id": i, "cells": [cell_to_json(v, c) for v, c in zip(table.schema, table.row(i))]}
            for i in table.ids
        ],
    }


def dump_table(table: SymbolicTable) -> str:
    return json.dumps(table_document(table), indent=2) + "\n"


# --- pyramids ---------------------------------------------------------------------

def pyramid_document(pyramid: PyramidStructure, table: Optional[SymbolicTable] = None,
                     alpha: Optional[float] = None) -> dict:
    """Build the pyramid document; with ``alpha`` each node also lists its modal extent."""
    if alpha is not None and table is None:
        raise ValueError("alpha extents need the input table")
    schema = pyramid.schema
    nodes = []
    for q in pyramid.quadruples:
        obj = pyramid.objects[q.p]
        node = {
            "id": q.p,
            "left": q.left,
            "right": q.right,
            "f": _num(q.f),
            "object": [cell_to_json(v, c) for v, c in zip(schema, obj.description)],
            "extent": sorted(pyramid.extents[q.p]),
        }
        if alpha is not None:
            node["extent_alpha"] = sorted(extent_modal(obj, table, alpha))
        nodes.append(node)
    meta = {"algorithm": pyramid.algorithm, "iterations": pyramid.iterations,
            "N": pyramid.n, "NG": pyramid.ng}
    if alpha is not None:
        meta["alpha"] = _num(alpha)
    return {
        "variables": [variable_to_json(v) for v in schema],
        "order": list(pyramid.final_order),
        "nodes": nodes,
        "meta": meta,
    }


def emit_pyramid(pyramid: PyramidStructure, table: Optional[SymbolicTable] = None,
                 alpha: Optional[float] = None) -> str:
    return json.dumps(pyramid_document(pyramid, table, alpha), indent=2) + "\n"


def parse_pyramid(text: str) -> PyramidStructure:
    doc = _loads(text)
    schema = _schema_from_json(doc)
    for key in ("order", "nodes", "meta"):
        _expect(key in doc, "document", f"missing field {key!r}")
    quadruples, objects, extents = [], {}, {}
    for k, node in enumerate(doc["nodes"]):
        where = f"nodes[{k}]"
        _expect(isinstance(node, dict), where, "node must be an object")
        _expect(node.get("id") == k + 1, f"{where}.id", f"expected {k + 1}")
        p = node["id"]
        quadruples.append(NodeQuadruple(p, int(node["left"]), int(node["right"]), float(node["f"])))
        objects[p] = SymbolicObject(_description_from_json(schema, node["object"], f"{where}.object"), schema)
        extents[p] = frozenset(int(x) for x in node["extent"])
    meta = doc["meta"]
    pyramid = PyramidStructure(
        quadruples=quadruples,
        objects=objects,
        extents=extents,
        final_order=tuple(int(x) for x in doc["order"]),
        algorithm=str(meta.get("algorithm", "caps")),
        iterations=int(meta.get("iterations", 0)),
    )
    _expect(meta.get("N", pyramid.n) == pyramid.n, "meta.N", "does not match the terminal node count")
    _expect(meta.get("NG", pyramid.ng) == pyramid.ng, "meta.NG", "does not match the node count")
    return pyramid


# --- DOT --------------------------------------------------------------------------

def emit_dot(pyramid: PyramidStructure, name: str = "pyramid") -> str:
    """Graphviz source: leaves on one rank in the compatible order, edges labelled by f."""
    lines = [
        f"digraph {name} {{",
        "  node [shape=circle, fontsize=10];",
        "  { rank=same; " + " ".join(f"{p};" for p in pyramid.final_order) + " }",
    ]
    for p in pyramid.final_order:
        lines.append(f'  {p} [label="{p}", shape=box];')
    for q in pyramid.quadruples:
        if q.is_terminal:
            continue
        ext = ",".join(str(x) for x in sorted(pyramid.members(q.p)))
        lines.append(f'  {q.p} [label="{q.p}\\n{{{ext}}}"];')
        for child in (q.left, q.right):
            lines.append(f'  {q.p} -> {child} [label="{q.f:.4f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
