"""Random symbolic tables for property tests and stress runs.

Interval cells are sorted pairs of uniform draws inside the domain,
categorical cells uniform non-empty subsets, modal cells independent uniform
weights per label. Everything flows from one seeded ``random.Random``.
"""
from __future__ import annotations

import random
from typing import Optional

from .symbolic import CategorySet, Interval, Kind, Modal, SymbolicTable, Variable

KINDS = (Kind.INTERVAL, Kind.CATEGORICAL, Kind.MODAL)


def random_variable(rng: random.Random, name: str, kind: Optional[Kind] = None) -> Variable:
    kind = kind or rng.choice(KINDS)
    if kind is Kind.INTERVAL:
        lo = round(rng.uniform(-5.0, 5.0), 3)
        return Variable(name, kind, (lo, lo + round(rng.uniform(1.0, 10.0), 3)))
    size = rng.randint(2, 5)
    return Variable(name, kind, tuple(f"c{k}" for k in range(1, size + 1)))


def random_cell(rng: random.Random, var: Variable):
    if var.kind is Kind.INTERVAL:
        lo, hi = var.domain
        a, b = sorted(rng.uniform(lo, hi) for _ in range(2))
        return Interval(a, b)
    if var.kind is Kind.CATEGORICAL:
        k = rng.randint(1, len(var.domain))
        return CategorySet(frozenset(rng.sample(var.domain, k)))
    return Modal({label: rng.random() for label in var.domain})


def random_table(rng: random.Random, n: int, p: int, kinds=None) -> SymbolicTable:
    """``n`` rows over ``p`` variables; ``kinds`` pins the variable kinds if given."""
    schema = [
        random_variable(rng, f"y{j + 1}", kinds[j] if kinds else None) for j in range(p)
    ]
    rows = [[random_cell(rng, v) for v in schema] for _ in range(n)]
    return SymbolicTable(schema, rows)


def random_order(rng: random.Random, n: int) -> list:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return order
