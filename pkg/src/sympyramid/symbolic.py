"""Symbolic data model: cells, descriptions, assertion objects.

A description is a tuple of cells, one per variable of the schema. Three cell
kinds are supported:

* :class:`Interval` -- a closed real interval ``[lo, hi]``;
* :class:`CategorySet` -- a non-empty subset of a finite label domain;
* :class:`Modal` -- a weight in ``[0, 1]`` per label of a finite domain
  (absent labels weigh 0).

Every relation between descriptions is containment: an interval inside an
interval, a subset of a set, a weight vector dominated label by label. Under
that order :func:`generalize` is the least upper bound, which makes every
generalization complete with respect to its own extent.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import DataError, UsageError

#: Absolute tolerance for every real-valued comparison.
TOL = 1e-9


class Kind(str, enum.Enum):
    INTERVAL = "interval"
    CATEGORICAL = "categorical"
    MODAL = "modal"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi) or math.isinf(lo) or math.isinf(hi):
            raise DataError(f"interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if lo > hi:
            raise DataError(f"interval is reversed: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class CategorySet:
    labels: frozenset

    def __post_init__(self):
        labels = frozenset(str(x) for x in self.labels)
        if not labels:
            raise DataError("category set must not be empty")
        object.__setattr__(self, "labels", labels)


@dataclass(frozen=True)
class Modal:
    """Weight distribution over category labels.

    ``weights`` accepts any mapping; it is stored as a tuple of
    ``(label, weight)`` pairs sorted by label so that cells hash and compare
    structurally. Use :meth:`get` for lookups.
    """

    weights: tuple

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, Mapping) else self.weights
        norm = {}
        for label, w in items:
            w = float(w)
            if math.isnan(w) or w < 0.0 or w > 1.0:
                raise DataError(f"modal weight for label {label!r} outside [0, 1]: {w}")
            norm[str(label)] = w
        object.__setattr__(self, "weights", tuple(sorted(norm.items())))

    def get(self, label: str) -> float:
        for key, w in self.weights:
            if key == label:
                return w
        return 0.0

    def as_dict(self) -> dict:
        return dict(self.weights)

    @property
    def total(self) -> float:
        return math.fsum(w for _, w in self.weights)


Cell = Union[Interval, CategorySet, Modal]
Description = tuple  # tuple[Cell, ...], one cell per variable

_CELL_TYPES = {Kind.INTERVAL: Interval, Kind.CATEGORICAL: CategorySet, Kind.MODAL: Modal}


@dataclass(frozen=True)
class Variable:
    """One column of a symbolic table.

    ``domain`` is ``(lo, hi)`` for interval variables and a tuple of unique
    labels for categorical and modal ones.
    """

    name: str
    kind: Kind
    domain: tuple

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is Kind.INTERVAL:
            try:
                lo, hi = (float(x) for x in self.domain)
            except (TypeError, ValueError):
                raise DataError(f"variable {self.name!r}: interval domain must be [lo, hi]") from None
            if not lo < hi:
                raise DataError(f"variable {self.name!r}: interval domain needs lo < hi, got [{lo}, {hi}]")
            object.__setattr__(self, "domain", (lo, hi))
        else:
            labels = tuple(str(x) for x in self.domain)
            if not labels:
                raise DataError(f"variable {self.name!r}: domain must list at least one label")
            if len(set(labels)) != len(labels):
                raise DataError(f"variable {self.name!r}: domain labels are not unique")
            object.__setattr__(self, "domain", labels)

    @property
    def domain_size(self) -> float:
        if self.kind is Kind.INTERVAL:
            return self.domain[1] - self.domain[0]
        return len(self.domain)

    def check(self, cell) -> None:
        """Raise :class:`DataError` unless ``cell`` is a legal value of this variable."""
        expected = _CELL_TYPES[self.kind]
        if not isinstance(cell, expected):
            raise DataError(
                f"variable {self.name!r} is {self.kind.value} but got {type(cell).__name__}"
            )
        if self.kind is Kind.INTERVAL:
            lo, hi = self.domain
            if cell.lo < lo - TOL or cell.hi > hi + TOL:
                raise DataError(
                    f"variable {self.name!r}: [{cell.lo}, {cell.hi}] leaves domain [{lo}, {hi}]"
                )
            return
        labels = cell.labels if self.kind is Kind.CATEGORICAL else {k for k, _ in cell.weights}
        unknown = sorted(set(labels) - set(self.domain))
        if unknown:
            raise DataError(f"variable {self.name!r}: labels {unknown} not in domain")

    def full_cell(self) -> Cell:
        """The most general cell: the whole domain, or weight 1 everywhere."""
        if self.kind is Kind.INTERVAL:
            return Interval(*self.domain)
        if self.kind is Kind.CATEGORICAL:
            return CategorySet(frozenset(self.domain))
        return Modal({label: 1.0 for label in self.domain})


Schema = tuple  # tuple[Variable, ...]


def check_description(description: Sequence, schema: Sequence[Variable]) -> None:
    if len(description) != len(schema):
        raise DataError(f"description has {len(description)} cells, schema has {len(schema)} variables")
    for var, cell in zip(schema, description):
        var.check(cell)


# --- per-cell operators ---------------------------------------------------

def _union_cells(kind: Kind, cells: Sequence[Cell]) -> Cell:
    if kind is Kind.INTERVAL:
        return Interval(min(c.lo for c in cells), max(c.hi for c in cells))
    if kind is Kind.CATEGORICAL:
        return CategorySet(frozenset().union(*(c.labels for c in cells)))
    best: dict = {}
    for c in cells:
        for label, w in c.weights:
            if w > best.get(label, -1.0):
                best[label] = w
    return Modal(best)


def _cell_contains(kind: Kind, outer: Cell, inner: Cell) -> bool:
    if kind is Kind.INTERVAL:
        return outer.lo <= inner.lo + TOL and inner.hi <= outer.hi + TOL
    if kind is Kind.CATEGORICAL:
        return inner.labels <= outer.labels
    return all(w <= outer.get(label) + TOL for label, w in inner.weights)


def _cell_equal(kind: Kind, a: Cell, b: Cell) -> bool:
    if kind is Kind.INTERVAL:
        return abs(a.lo - b.lo) <= TOL and abs(a.hi - b.hi) <= TOL
    if kind is Kind.CATEGORICAL:
        return a.labels == b.labels
    labels = {k for k, _ in a.weights} | {k for k, _ in b.weights}
    return all(abs(a.get(k) - b.get(k)) <= TOL for k in labels)


def _cell_match(kind: Kind, s: Cell, w: Cell) -> float:
    if _cell_contains(kind, s, w):
        return 1.0
    if kind is not Kind.MODAL:
        return 0.0
    total = w.total
    if total == 0.0:
        return 1.0
    return math.fsum(min(x, s.get(label)) for label, x in w.weights) / total


def _cell_generality(var: Variable, cell: Cell) -> float:
    if var.kind is Kind.INTERVAL:
        return cell.length / var.domain_size
    if var.kind is Kind.CATEGORICAL:
        return len(cell.labels) / len(var.domain)
    return cell.total / len(var.domain)


def _kinds(schema: Sequence[Variable]) -> list:
    return [v.kind for v in schema]


def _same_shape(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DataError(f"descriptions have different lengths ({len(a)} vs {len(b)})")
    for i, (x, y) in enumerate(zip(a, b)):
        if type(x) is not type(y):
            raise DataError(f"cell {i}: {type(x).__name__} vs {type(y).__name__}")


def _kind_of(cell) -> Kind:
    for kind, cls in _CELL_TYPES.items():
        if isinstance(cell, cls):
            return kind
    raise DataError(f"not a cell: {cell!r}")


# --- description-level operations ------------------------------------------

def generalize(descriptions: Iterable[Sequence], schema: Sequence[Variable]) -> Description:
    """Least general description covering every input.

    Intervals take their convex hull, category sets their union and modal
    cells the label-wise maximum weight.
    """
    descriptions = list(descriptions)
    if not descriptions:
        raise UsageError("generalize needs at least one description")
    for d in descriptions:
        check_description(d, schema)
    return tuple(
        _union_cells(var.kind, [d[j] for d in descriptions]) for j, var in enumerate(schema)
    )


def contains(outer: Sequence, inner: Sequence) -> bool:
    """True iff every cell of ``inner`` lies inside the matching cell of ``outer``."""
    _same_shape(outer, inner)
    return all(_cell_contains(_kind_of(o), o, i) for o, i in zip(outer, inner))


def descriptions_equal(a: Sequence, b: Sequence) -> bool:
    _same_shape(a, b)
    return all(_cell_equal(_kind_of(x), x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class SymbolicTable:
    """Rows of descriptions over a shared schema. Row ids run from 1 to N."""

    schema: tuple
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if not self.schema:
            raise DataError("table must declare at least one variable")
        if not self.rows:
            raise DataError("table must contain at least one row")
        names = [v.name for v in self.schema]
        if len(set(names)) != len(names):
            raise DataError("variable names are not unique")
        for i, row in enumerate(self.rows, start=1):
            try:
                check_description(row, self.schema)
            except DataError as exc:
                raise DataError(f"row {i}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def ids(self) -> range:
        return range(1, len(self.rows) + 1)

    def row(self, i: int) -> Description:
        if not 1 <= i <= len(self.rows):
            raise UsageError(f"row id {i} outside 1..{len(self.rows)}")
        return self.rows[i - 1]


@dataclass(frozen=True)
class SymbolicObject:
    """Assertion object: one containment relation per variable against ``description``."""

    description: tuple
    schema: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "description", tuple(self.description))
        object.__setattr__(self, "schema", tuple(self.schema))
        check_description(self.description, self.schema)

    def __str__(self) -> str:
        return format_object(self)


def _shared_schema(s: SymbolicObject, table: SymbolicTable) -> None:
    if s.schema != table.schema:
        raise DataError("symbolic object and table use different schemas")


def extent_boolean(s: SymbolicObject, table: SymbolicTable) -> frozenset:
    _shared_schema(s, table)
    return frozenset(i for i in table.ids if contains(s.description, table.row(i)))


def match_degree(s: SymbolicObject, w: Sequence) -> float:
    """Degree in [0, 1] to which ``w`` satisfies ``s``.

    Interval and categorical variables score 0 or 1. A modal variable scores
    the share of ``w``'s mass that fits under ``s``'s weights. The overall
    degree is the minimum over variables, so it is 1 exactly on containment.
    """
    check_description(w, s.schema)
    return min(_cell_match(v.kind, sc, wc) for v, sc, wc in zip(s.schema, s.description, w))


def extent_modal(s: SymbolicObject, table: SymbolicTable, alpha: float) -> frozenset:
    if not 0.0 <= alpha <= 1.0:
        raise UsageError(f"alpha must lie in [0, 1], got {alpha}")
    _shared_schema(s, table)
    return frozenset(i for i in table.ids if match_degree(s, table.row(i)) >= alpha - TOL)


def degree_of_generality(s: SymbolicObject) -> float:
    g = 1.0
    for var, cell in zip(s.schema, s.description):
        g *= _cell_generality(var, cell)
    return g


def is_complete(s: SymbolicObject, table: SymbolicTable) -> bool:
    """True iff ``s`` equals the generalization of the rows it covers."""
    ext = extent_boolean(s, table)
    if not ext:
        return False
    closure = generalize((table.row(i) for i in sorted(ext)), table.schema)
    return descriptions_equal(s.description, closure)


def format_cell(var: Variable, cell: Cell) -> str:
    if var.kind is Kind.INTERVAL:
        return f"[{cell.lo:.3f},{cell.hi:.3f}]"
    if var.kind is Kind.CATEGORICAL:
        return "{" + ",".join(l for l in var.domain if l in cell.labels) + "}"
    parts = [f"{l}({cell.get(l):.4f})" for l in var.domain if l in dict(cell.weights)]
    return "(" + ",".join(parts) + ")"


def format_object(s: SymbolicObject) -> str:
    """Render like ``[y1=[1.000,4.000]]^[y2={1}]^[y3=(1(0.7000),2(0.0000))]``."""
    return "^".join(
        f"[{v.name}={format_cell(v, c)}]" for v, c in zip(s.schema, s.description)
    )
