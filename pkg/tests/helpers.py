"""Small hand-built tables shared by several test modules."""
from sympyramid.symbolic import CategorySet, Interval, Kind, Modal, SymbolicTable, Variable


def stuck_table():
    """Three rows where each union of order-neighbours swallows the third row."""
    schema = [Variable("x", Kind.INTERVAL, (0, 3)), Variable("y", Kind.INTERVAL, (0, 5))]
    return SymbolicTable(schema, [
        [Interval(1, 1), Interval(0, 0)],
        [Interval(0, 3), Interval(5, 5)],
        [Interval(2, 2), Interval(0, 0)],
    ])


def two_row_table():
    schema = [
        Variable("y1", Kind.INTERVAL, (0, 10)),
        Variable("y2", Kind.CATEGORICAL, ("a", "b", "c", "d")),
        Variable("y3", Kind.MODAL, ("x", "y")),
    ]
    return SymbolicTable(schema, [
        [Interval(1, 3), CategorySet({"a"}), Modal({"x": 0.2, "y": 0.6})],
        [Interval(2, 6), CategorySet({"b"}), Modal({"x": 0.5, "y": 0.1})],
    ])
