"""CAPS and CAPSO: agglomerative construction of symbolic pyramids.

Each iteration runs three phases over the set of active nodes:

* elimination -- recompute which active pairs are aggregable and drop the
  nodes that have no partner left;
* formation -- among aggregable pairs take the one whose union has the
  smallest degree of generality, provided the union is complete and covers
  no row that its two parents did not already cover;
* update -- join the components if needed, register the new node and retire
  parents that have now been aggregated twice.

The run succeeds once a node covering every row exists.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

from .errors import ConstructionError, StructureError, UsageError
from .model import (
    ActiveNode,
    Component,
    NodeQuadruple,
    PyramidStructure,
    aggregable_pair,
    merge_components,
)
from .symbolic import (
    TOL,
    SymbolicObject,
    SymbolicTable,
    degree_of_generality,
    extent_boolean,
    generalize,
    is_complete,
)

log = logging.getLogger(__name__)


def default_max_iter(n: int) -> int:
    """Upper bound on the merges a pyramid over ``n`` rows can need."""
    return n * (n - 1) // 2 + n


class CapsEngine:
    """State machine for one CAPS or CAPSO run.

    Parameters
    ----------
    table : SymbolicTable
        Input rows.
    max_iter : int
        Iteration budget; the run fails once the counter exceeds it.
    order : sequence of int, optional
        A priori total order on the row ids. When given the run is CAPSO and
        starts from a single component laid out in that order.
    """

    def __init__(self, table: SymbolicTable, max_iter: int, order: Optional[Sequence[int]] = None):
        if max_iter < 1:
            raise UsageError(f"max_iter must be a positive integer, got {max_iter}")
        n = table.n
        if order is not None:
            order = tuple(int(x) for x in order)
            if sorted(order) != list(range(1, n + 1)):
                raise UsageError(f"order must be a permutation of 1..{n}, got {list(order)}")
        self.table = table
        self.schema = table.schema
        self.max_iter = max_iter
        self.algorithm = "caps" if order is None else "capso"

        self.h = 1
        self.quadruples = [NodeQuadruple(s, 0, 0, 0.0) for s in table.ids]
        self.objects = {s: SymbolicObject(table.row(s), self.schema) for s in table.ids}
        self.extents = {s: extent_boolean(self.objects[s], table) for s in table.ids}

        self._next_cid = 1
        self.components: dict = {}
        self.owner: dict = {}
        if order is None:
            for s in table.ids:
                self._add_component(Component(self._new_cid(), [s]))
        else:
            self._add_component(Component(self._new_cid(), order))
        for s in table.ids:
            self.owner[s].add_node(s, [s])

        self.active = [
            ActiveNode(alpha=q, beta=q, obj=self.objects[q], members=frozenset([q]),
                       extent=self.extents[q])
            for q in table.ids
        ]
        self._union_cache: dict = {}
        self.D: dict = {}
        self.B: set = set()
        self._refresh_dissimilarities()

    # --- bookkeeping ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def n_nodes(self) -> int:
        return len(self.quadruples)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_active(self) -> int:
        return len(self.active)

    def _new_cid(self) -> int:
        cid = self._next_cid
        self._next_cid += 1
        return cid

    def _add_component(self, c: Component) -> None:
        self.components[c.id] = c
        for x in c.sequence:
            self.owner[x] = c

    def _union(self, a: ActiveNode, b: ActiveNode) -> tuple:
        key = (min(a.beta, b.beta), max(a.beta, b.beta))
        if key not in self._union_cache:
            desc = generalize([a.obj.description, b.obj.description], self.schema)
            obj = SymbolicObject(desc, self.schema)
            self._union_cache[key] = (obj, degree_of_generality(obj))
        return self._union_cache[key]

    def _refresh_dissimilarities(self) -> None:
        self.D = {}
        for i, a in enumerate(self.active):
            for b in self.active[i + 1:]:
                self.D[(a.beta, b.beta)] = self._union(a, b)[1]

    def _renumber(self) -> None:
        self.active.sort(key=lambda g: g.beta)
        for k, g in enumerate(self.active, start=1):
            g.alpha = k

    def root_formed(self) -> bool:
        return any(len(g.members) == self.n for g in self.active)

    def check_invariants(self) -> None:
        seen = []
        for c in self.components.values():
            seen.extend(c.sequence)
            for beta, members in c.nodes.items():
                if not c.is_interval(members):
                    raise StructureError(f"node {beta} is not connected in {c!r}")
        if sorted(seen) != list(self.table.ids):
            raise StructureError("component sequences do not partition the rows")
        for g in self.active:
            if g.ell > 1:
                raise StructureError(f"active node {g.beta} was aggregated {g.ell} times")

    # --- phases ----------------------------------------------------------------

    def elimination_phase(self) -> list:
        """Recompute the aggregability matrix and drop partnerless nodes.

        Returns the removed nodes.
        """
        self.B = set()
        for i, a in enumerate(self.active):
            for b in self.active[i + 1:]:
                if aggregable_pair(a, b, self.owner):
                    self.B.add((a.beta, b.beta))
        partnered = {x for pair in self.B for x in pair}
        removed = [g for g in self.active if g.beta not in partnered]
        if removed:
            self.active = [g for g in self.active if g.beta in partnered]
            gone = {g.beta for g in removed}
            self.D = {k: v for k, v in self.D.items() if not gone & set(k)}
            self._renumber()
        return removed

    def formation_phase(self) -> tuple:
        """Pick the cheapest acceptable pair.

        Returns ``(g_i, g_j, union_object, union_extent)``. Candidates whose
        union is incomplete or covers extra rows are struck from ``B``.
        Among equally cheap pairs the smallest ``(beta_i, beta_j)`` wins.
        """
        by_beta = {g.beta: g for g in self.active}
        while self.B:
            best = min(self.D[k] for k in self.B)
            key = min(k for k in self.B if self.D[k] <= best + TOL)
            gi, gj = by_beta[key[0]], by_beta[key[1]]
            obj, _ = self._union(gi, gj)
            ext = extent_boolean(obj, self.table)
            if ext == gi.extent | gj.extent and is_complete(obj, self.table):
                return gi, gj, obj, ext
            log.debug("rejecting pair %s: extent %s", key, sorted(ext))
            self.B.discard(key)
        raise ConstructionError(
            f"no aggregable pair yields a complete, extent-additive node "
            f"(iteration {self.h}, {self.n_active} active nodes)"
        )

    def update_phase(self, gi: ActiveNode, gj: ActiveNode, obj: SymbolicObject, ext: frozenset) -> ActiveNode:
        f = self.D[(gi.beta, gj.beta)]
        beta = self.n + self.h
        self.h += 1

        ci, cj = self.owner[next(iter(gi.members))], self.owner[next(iter(gj.members))]
        if ci is not cj:
            merged, case = merge_components(ci, gi.members, cj, gj.members, self._new_cid())
            log.debug("components %d and %d joined (case %d)", ci.id, cj.id, case)
            del self.components[ci.id], self.components[cj.id]
            self._add_component(merged)
            comp = merged
        else:
            comp = ci
        members = gi.members | gj.members
        comp.add_node(beta, members)

        self.quadruples.append(NodeQuadruple(beta, gi.beta, gj.beta, f))
        self.objects[beta] = obj
        self.extents[beta] = ext

        new = ActiveNode(alpha=gi.alpha, beta=beta, obj=obj, members=members, extent=ext)
        gi.ell += 1
        gj.ell += 1
        self.active = [g for g in self.active if g.ell < 2]
        self.active.append(new)
        self._renumber()
        self._refresh_dissimilarities()
        return new

    # --- driver ----------------------------------------------------------------

    def run(self) -> PyramidStructure:
        self.check_invariants()
        while not self.root_formed():
            self.elimination_phase()
            self.check_invariants()
            gi, gj, obj, ext = self.formation_phase()
            self.update_phase(gi, gj, obj, ext)
            self.check_invariants()
            if self.root_formed():
                break
            if self.h > self.max_iter:
                raise ConstructionError(f"iteration budget exceeded (h={self.h} > M={self.max_iter})")
        root = next(g for g in self.active if len(g.members) == self.n)
        # only the root can still be aggregated with anything
        self.active = [root]
        self._renumber()
        self.D, self.B = {}, set()
        (comp,) = self.components.values()
        return PyramidStructure(
            quadruples=list(self.quadruples),
            objects=dict(self.objects),
            extents=dict(self.extents),
            final_order=comp.sequence,
            algorithm=self.algorithm,
            iterations=self.h - 1,
        )


def run_caps(table: SymbolicTable, max_iter: Optional[int] = None) -> PyramidStructure:
    """Build a symbolic pyramid, discovering the compatible order on the way.

    Raises :class:`ConstructionError` when no acceptable pair remains or the
    iteration budget is exhausted.
    """
    if max_iter is None:
        max_iter = default_max_iter(table.n)
    return CapsEngine(table, max_iter).run()


def run_capso(table: SymbolicTable, order: Sequence[int], max_iter: Optional[int] = None) -> PyramidStructure:
    """Build a symbolic pyramid compatible with a given order of the rows."""
    if max_iter is None:
        max_iter = default_max_iter(table.n)
    return CapsEngine(table, max_iter, order=order).run()
