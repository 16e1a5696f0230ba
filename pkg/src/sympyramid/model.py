"""Pyramid under construction: components, order relations, aggregability.

Nodes are identified by their member sets (subsets of the row ids). Every
relation is local to a :class:`Component`, which carries its total order as
an explicit sequence of row ids. Wherever a node is expected, either a
collection of row ids or an object with a ``members`` attribute is accepted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Mapping, Optional

from .errors import StructureError, UsageError
from .symbolic import SymbolicObject


def _members(g) -> frozenset:
    members = getattr(g, "members", g)
    return members if isinstance(members, frozenset) else frozenset(members)


@dataclass(frozen=True)
class NodeQuadruple:
    """Output record ``(p, p_I, p_D, f(p))``; children are 0 for terminal nodes."""

    p: int
    left: int
    right: int
    f: float

    @property
    def is_terminal(self) -> bool:
        return self.left == 0 and self.right == 0


@dataclass
class ActiveNode:
    alpha: int
    beta: int
    obj: SymbolicObject
    members: frozenset
    extent: frozenset
    ell: int = 0


class Component:
    """A block of rows sharing a total order, plus the nodes living on it.

    ``nodes`` maps a global node id to its member set; each member set is a
    contiguous run of ``sequence``.
    """

    def __init__(self, cid: int, sequence):
        self.id = cid
        self.sequence = tuple(sequence)
        self.pos = {x: i for i, x in enumerate(self.sequence)}
        if len(self.pos) != len(self.sequence):
            raise UsageError("component sequence repeats a row id")
        self.nodes: dict = {}
        self._maximal: Optional[list] = None
        self._spans: dict = {}

    def __repr__(self):
        return f"Component({self.id}, {list(self.sequence)})"

    def __contains__(self, x) -> bool:
        return x in self.pos

    def add_node(self, beta: int, members: Collection) -> None:
        members = frozenset(members)
        if not self.is_interval(members):
            raise StructureError(f"node {beta} {sorted(members)} is not connected in {self!r}")
        self.nodes[beta] = members
        self._maximal = None

    def span(self, g) -> tuple:
        """(first position, last position) of a node under this order."""
        members = _members(g)
        span = self._spans.get(members)
        if span is None:
            try:
                ps = [self.pos[x] for x in members]
            except KeyError:
                raise UsageError(f"node {sorted(members)} does not belong to {self!r}") from None
            if not ps:
                raise UsageError("empty node")
            span = self._spans[members] = (min(ps), max(ps))
        return span

    def first(self, g):
        return self.sequence[self.span(g)[0]]

    def last(self, g):
        return self.sequence[self.span(g)[1]]

    def is_interval(self, members: Collection) -> bool:
        lo, hi = self.span(members)
        return hi - lo + 1 == len(frozenset(members))

    def touches_end(self, g) -> bool:
        lo, hi = self.span(g)
        return lo == 0 or hi == len(self.sequence) - 1

    def maximal_nodes(self) -> list:
        """Inclusion-maximal member sets, ordered left to right."""
        if self._maximal is None:
            spans = {m: self.span(m) for m in set(self.nodes.values())}
            keep = [
                m for m, (lo, hi) in spans.items()
                if not any(o != (lo, hi) and o[0] <= lo and hi <= o[1] for o in spans.values())
            ]
            self._maximal = sorted(keep, key=lambda m: spans[m])
        return self._maximal


def _same_component(c: Component, *nodes) -> list:
    return [c.span(g) for g in nodes]


def is_interior(g1, g2, c: Component) -> bool:
    (lo1, hi1), (lo2, hi2) = _same_component(c, g1, g2)
    if _members(g1) == _members(g2):
        return False
    return lo2 < lo1 and hi1 < hi2


def is_left_of(g1, g2, c: Component) -> bool:
    (lo1, hi1), (lo2, hi2) = _same_component(c, g1, g2)
    return lo1 <= lo2 and hi1 <= hi2


def strictly_left_of(g1, g2, c: Component) -> bool:
    """g1 starts strictly before g2 and both end on the same row."""
    (lo1, hi1), (lo2, hi2) = _same_component(c, g1, g2)
    return lo1 < lo2 and hi1 == hi2


def strictly_right_of(g2, g1, c: Component) -> bool:
    """g2 starts on the same row as g1 and ends strictly after it."""
    (lo1, hi1), (lo2, hi2) = _same_component(c, g1, g2)
    return lo1 == lo2 and hi1 < hi2


def _left_maximal(g, c: Component) -> Optional[int]:
    lo, hi = c.span(g)
    for k, m in enumerate(c.maximal_nodes()):
        mlo, mhi = c.span(m)
        if mhi == hi and mlo <= lo:
            return k
    return None


def left_maximal_node(g, c: Component) -> frozenset:
    """The maximal node ending where ``g`` ends and starting no later."""
    k = _left_maximal(g, c)
    if k is None:
        raise StructureError(f"no maximal node of {c!r} ends at the last row of {sorted(_members(g))}")
    return c.maximal_nodes()[k]


def next_maximal_node(g, c: Component) -> Optional[frozenset]:
    k = _left_maximal(g, c)
    if k is None:
        raise StructureError(f"no maximal node of {c!r} ends at the last row of {sorted(_members(g))}")
    maximal = c.maximal_nodes()
    return maximal[k + 1] if k + 1 < len(maximal) else None


def has_interior_position(g, c: Component) -> bool:
    """True iff ``g`` is interior to some node of ``c``."""
    lo, hi = c.span(g)
    return any(olo < lo and hi < ohi for olo, ohi in map(c.span, c.nodes.values()))


def aggregable_in_component(g1, g2, c: Component) -> bool:
    """Same-component rule with ``g1`` on the left and ``g2`` on the right.

    ``g1`` must end where its left maximal node ends and start before the
    overlap of that maximal node with the next one; ``g2`` must start where
    the overlap starts, end after it and not beyond the next maximal node.
    When the two maximal nodes are adjacent but disjoint, the overlap is
    the empty gap between them: ``g2`` must start right after it.
    """
    k = _left_maximal(g1, c)
    maximal = c.maximal_nodes()
    if k is None or k + 1 >= len(maximal):
        return False
    left, right = maximal[k], maximal[k + 1]
    (lo1, hi1), (lo2, hi2) = c.span(g1), c.span(g2)
    (llo, lhi), (rlo, rhi) = c.span(left), c.span(right)
    if not (llo <= lo1 and lhi <= hi1):  # g1 to the right of the left maximal node
        return False
    if not (lo2 <= rlo and hi2 <= rhi):  # g2 to the left of the next maximal node
        return False
    if rlo <= lhi:
        # overlap spans positions [rlo, lhi]
        return lo1 < rlo and hi1 == lhi and lo2 == rlo and lhi < hi2
    return rlo == lhi + 1 and lo2 == rlo


def aggregable(g1, g2, owner: Mapping) -> bool:
    """Whether ``g1`` (left) and ``g2`` (right) may be merged.

    ``owner`` maps every row id to the :class:`Component` holding it. Nodes
    interior to another node are never aggregable.
    """
    m1, m2 = _members(g1), _members(g2)
    c1, c2 = owner[next(iter(m1))], owner[next(iter(m2))]
    if has_interior_position(m1, c1) or has_interior_position(m2, c2):
        return False
    if c1 is not c2:
        return c1.touches_end(m1) and c2.touches_end(m2)
    return aggregable_in_component(m1, m2, c1)


def aggregable_pair(g1, g2, owner: Mapping) -> bool:
    """Symmetric closure of :func:`aggregable`."""
    return aggregable(g1, g2, owner) or aggregable(g2, g1, owner)


def is_active(g, others, owner: Mapping) -> bool:
    if g.ell > 1:
        return False
    c = owner[next(iter(g.members))]
    if has_interior_position(g.members, c):
        return False
    return any(o is not g and aggregable_pair(g, o, owner) for o in others)


def merge_components(c1: Component, g1, c2: Component, g2, cid: int) -> tuple:
    """Join two components so that ``g1`` and ``g2`` become adjacent.

    Returns the new component and the orientation case applied:

    1. ``g1`` at the end of ``c1``, ``g2`` at the start of ``c2``: c1 + c2;
    2. both at the end: c1 + reversed(c2);
    3. both at the start: reversed(c1) + c2;
    4. ``g1`` at the start, ``g2`` at the end: reversed(c1) + reversed(c2).
    """
    if c1 is c2:
        raise UsageError("cannot merge a component with itself")
    lo1, hi1 = c1.span(g1)
    lo2, hi2 = c2.span(g2)
    end1, end2 = len(c1.sequence) - 1, len(c2.sequence) - 1
    s1, s2 = c1.sequence, c2.sequence
    if hi1 == end1 and lo2 == 0:
        case, seq = 1, s1 + s2
    elif hi1 == end1 and hi2 == end2:
        case, seq = 2, s1 + s2[::-1]
    elif lo1 == 0 and lo2 == 0:
        case, seq = 3, s1[::-1] + s2
    elif lo1 == 0 and hi2 == end2:
        case, seq = 4, s1[::-1] + s2[::-1]
    else:
        raise StructureError("neither node touches an end of its component")
    merged = Component(cid, seq)
    for beta, members in list(c1.nodes.items()) + list(c2.nodes.items()):
        merged.add_node(beta, members)
    return merged, case


@dataclass
class PyramidStructure:
    """A finished pyramid.

    ``quadruples`` lists nodes by id (terminal nodes 1..N first);
    ``objects`` and ``extents`` are keyed by node id; ``final_order`` is the
    compatible order on the rows.
    """

    quadruples: list
    objects: dict
    extents: dict
    final_order: tuple
    algorithm: str = "caps"
    iterations: int = 0
    _members: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return sum(1 for q in self.quadruples if q.is_terminal)

    @property
    def ng(self) -> int:
        return len(self.quadruples)

    @property
    def schema(self) -> tuple:
        return next(iter(self.objects.values())).schema

    @property
    def root(self) -> int:
        return self.quadruples[-1].p

    def quadruple(self, p: int) -> NodeQuadruple:
        return self.quadruples[p - 1]

    def members(self, p: int) -> frozenset:
        if p not in self._members:
            q = self.quadruple(p)
            if q.is_terminal:
                self._members[p] = frozenset([p])
            else:
                self._members[p] = self.members(q.left) | self.members(q.right)
        return self._members[p]
