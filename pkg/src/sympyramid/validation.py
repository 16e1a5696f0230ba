"""Brute-force checks that a finished structure is a symbolic pyramid.

Only the emitted :class:`~sympyramid.model.PyramidStructure` and the input
table are consulted; nothing here depends on engine state.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import UsageError
from .model import PyramidStructure
from .symbolic import SymbolicTable, extent_boolean, format_object, is_complete

#: Largest ground set :func:`find_compatible_order` will enumerate.
MAX_BRUTE_FORCE = 8


@dataclass
class ValidationReport:
    axiom1_omega_present: bool = True
    axiom2_singletons: bool = True
    axiom3_intersection_closed: bool = True
    axiom4_order_compatible: bool = True
    completeness_ok: bool = True
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.axiom1_omega_present
            and self.axiom2_singletons
            and self.axiom3_intersection_closed
            and self.axiom4_order_compatible
            and self.completeness_ok
            and not self.violations
        )

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def format(self) -> str:
        rows = [
            ("omega present", self.axiom1_omega_present),
            ("all singletons present", self.axiom2_singletons),
            ("closed under intersection", self.axiom3_intersection_closed),
            ("compatible with the order", self.axiom4_order_compatible),
            ("every node complete", self.completeness_ok),
        ]
        lines = [f"{'PASS' if good else 'FAIL'}  {label}" for label, good in rows]
        lines += [f"  - {v}" for v in self.violations]
        lines.append("symbolic pyramid: " + ("yes" if self.ok else "no"))
        return "\n".join(lines) + "\n"


def _is_interval(members: frozenset, pos: dict) -> bool:
    ps = sorted(pos[x] for x in members)
    return ps[-1] - ps[0] + 1 == len(ps)


def _member_sets(pyramid: PyramidStructure, report: ValidationReport) -> Optional[dict]:
    """Member set of every node, rebuilt from the quadruples alone."""
    sets: dict = {}
    for k, q in enumerate(pyramid.quadruples, start=1):
        if q.p != k:
            report.violations.append(f"node ids are not consecutive: position {k} holds {q.p}")
            return None
        if q.left == 0 and q.right == 0:
            sets[q.p] = frozenset([q.p])
            continue
        if q.left not in sets or q.right not in sets or q.left == q.right:
            report.violations.append(f"node {q.p}: children ({q.left}, {q.right}) are not two earlier nodes")
            return None
        sets[q.p] = sets[q.left] | sets[q.right]
    return sets


def check_pyramid(pyramid: PyramidStructure, table: SymbolicTable) -> ValidationReport:
    report = ValidationReport()
    n = table.n
    omega = frozenset(range(1, n + 1))
    sets = _member_sets(pyramid, report)
    if sets is None:
        report.axiom1_omega_present = report.axiom2_singletons = False
        report.axiom3_intersection_closed = report.axiom4_order_compatible = False
        report.completeness_ok = False
        return report
    family = set(sets.values())

    if omega not in family:
        report.axiom1_omega_present = False
        report.violations.append("no node covers every row")

    missing = [i for i in omega if frozenset([i]) not in family]
    if missing or any(not s <= omega for s in family):
        report.axiom2_singletons = False
        if missing:
            report.violations.append(f"singletons missing for rows {missing}")
        else:
            report.violations.append("a node refers to a row outside the table")

    for a, b in itertools.combinations(sorted(family, key=sorted), 2):
        meet = a & b
        if meet and meet not in family:
            report.axiom3_intersection_closed = False
            report.violations.append(
                f"intersection of {sorted(a)} and {sorted(b)} is {sorted(meet)}, not a node"
            )

    order = tuple(pyramid.final_order)
    if sorted(order) != sorted(omega):
        report.axiom4_order_compatible = False
        report.violations.append(f"order {list(order)} is not a permutation of the rows")
    else:
        pos = {x: i for i, x in enumerate(order)}
        for p, s in sorted(sets.items()):
            if s <= omega and not _is_interval(s, pos):
                report.axiom4_order_compatible = False
                report.violations.append(f"node {p} {sorted(s)} is not an interval of the order")

    for p in sorted(sets):
        obj = pyramid.objects.get(p)
        if obj is None:
            report.completeness_ok = False
            report.violations.append(f"node {p} has no symbolic object")
            continue
        if not is_complete(obj, table):
            report.completeness_ok = False
            report.violations.append(f"node {p} object is not complete: {format_object(obj)}")
        recorded = frozenset(pyramid.extents.get(p, ()))
        actual = extent_boolean(obj, table)
        if recorded != actual:
            report.completeness_ok = False
            report.violations.append(
                f"node {p} records extent {sorted(recorded)} but its object covers {sorted(actual)}"
            )
        if not sets[p] <= actual:
            report.completeness_ok = False
            report.violations.append(f"node {p} object does not cover its members {sorted(sets[p])}")
    return report


def find_compatible_order(family: Iterable[Iterable[int]], n: int) -> Optional[tuple]:
    """Some permutation of ``1..n`` under which every set is an interval, or None.

    Exhaustive over all ``n!`` orders, hence the ``n <= 8`` guard.
    """
    if n > MAX_BRUTE_FORCE:
        raise UsageError(f"brute-force order search limited to n <= {MAX_BRUTE_FORCE}, got {n}")
    sets = [frozenset(s) for s in family]
    sets = [s for s in set(sets) if len(s) > 1]
    for perm in itertools.permutations(range(1, n + 1)):
        pos = {x: i for i, x in enumerate(perm)}
        if all(_is_interval(s, pos) for s in sets):
            return perm
    return None


def is_compatible(order: Sequence[int], family: Iterable[Iterable[int]]) -> bool:
    pos = {x: i for i, x in enumerate(order)}
    return all(_is_interval(frozenset(s), pos) for s in family)
