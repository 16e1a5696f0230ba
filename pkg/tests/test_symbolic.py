import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympyramid.errors import DataError, UsageError
from sympyramid.symbolic import (
    CategorySet,
    Interval,
    Kind,
    Modal,
    SymbolicObject,
    SymbolicTable,
    Variable,
    contains,
    degree_of_generality,
    descriptions_equal,
    extent_boolean,
    extent_modal,
    format_object,
    generalize,
    is_complete,
    match_degree,
)

SCHEMA = (
    Variable("iv", Kind.INTERVAL, (0.0, 10.0)),
    Variable("cat", Kind.CATEGORICAL, ("a", "b", "c", "d")),
    Variable("mod", Kind.MODAL, ("x", "y", "z")),
)


@st.composite
def intervals(draw, lo=0.0, hi=10.0):
    a = draw(st.floats(lo, hi, allow_nan=False))
    b = draw(st.floats(lo, hi, allow_nan=False))
    return Interval(min(a, b), max(a, b))


categories = st.frozensets(st.sampled_from("abcd"), min_size=1).map(CategorySet)
modals = st.dictionaries(st.sampled_from("xyz"), st.floats(0.0, 1.0, allow_nan=False)).map(Modal)
descriptions = st.tuples(intervals(), categories, modals)


# --- cells and schema -----------------------------------------------------------

def test_reversed_interval_rejected():
    with pytest.raises(DataError, match="reversed"):
        Interval(3, 1)


def test_modal_weight_out_of_range_rejected():
    with pytest.raises(DataError):
        Modal({"x": 1.5})


def test_empty_category_set_rejected():
    with pytest.raises(DataError):
        CategorySet(frozenset())


@pytest.mark.parametrize("domain", [(2.0, 2.0), (3.0, 1.0)])
def test_interval_domain_needs_positive_length(domain):
    with pytest.raises(DataError):
        Variable("v", Kind.INTERVAL, domain)


def test_duplicate_labels_rejected():
    with pytest.raises(DataError, match="unique"):
        Variable("v", Kind.MODAL, ("a", "a"))


def test_cell_outside_domain_rejected():
    with pytest.raises(DataError):
        SCHEMA[0].check(Interval(-1, 2))
    with pytest.raises(DataError):
        SCHEMA[1].check(CategorySet({"e"}))
    with pytest.raises(DataError):
        SCHEMA[2].check(Modal({"w": 0.1}))


def test_table_needs_rows():
    with pytest.raises(DataError, match="at least one row"):
        SymbolicTable(SCHEMA, [])


# --- generalize -----------------------------------------------------------------

def test_generalize_rows_4_5_interval_and_category(example_table):
    d = generalize([example_table.row(4), example_table.row(5)], example_table.schema)
    assert d[0] == Interval(1, 4)
    assert d[1] == CategorySet({"1"})


def test_generalize_rows_1_3_interval_and_category(example_table):
    d = generalize([example_table.row(1), example_table.row(3)], example_table.schema)
    assert d[0] == Interval(1, 5)
    assert d[1] == CategorySet({"2"})


def test_generalize_rows_4_5_modal_is_labelwise_max(example_table):
    d = generalize([example_table.row(4), example_table.row(5)], example_table.schema)
    expected = {"1": 0.7, "2": 0.0, "3": 0.4, "4": 0.0, "5": 0.0, "6": 0.0, "7": 0.0}
    assert d[2].as_dict() == pytest.approx(expected)


def test_generalize_single_is_identity(example_table):
    for i in example_table.ids:
        assert generalize([example_table.row(i)], example_table.schema) == example_table.row(i)


def test_generalize_empty_is_usage_error():
    with pytest.raises(UsageError):
        generalize([], SCHEMA)


def test_generalize_schema_mismatch(example_table):
    with pytest.raises(DataError):
        generalize([example_table.row(1)], SCHEMA)


@given(st.lists(descriptions, min_size=1, max_size=5), st.randoms())
def test_generalize_commutative_idempotent_covering(ds, rnd):
    g = generalize(ds, SCHEMA)
    shuffled = list(ds)
    rnd.shuffle(shuffled)
    assert descriptions_equal(generalize(shuffled, SCHEMA), g)
    assert descriptions_equal(generalize(ds + ds, SCHEMA), g)
    assert descriptions_equal(generalize([g], SCHEMA), g)
    assert all(contains(g, d) for d in ds)


@given(descriptions, descriptions, descriptions)
def test_generalize_associative(a, b, c):
    left = generalize([generalize([a, b], SCHEMA), c], SCHEMA)
    right = generalize([a, generalize([b, c], SCHEMA)], SCHEMA)
    assert descriptions_equal(left, right)
    assert descriptions_equal(left, generalize([a, b, c], SCHEMA))


@given(st.lists(descriptions, min_size=1, max_size=4), st.lists(descriptions, max_size=3))
def test_generality_monotone_under_union(small, extra):
    g_small = degree_of_generality(SymbolicObject(generalize(small, SCHEMA), SCHEMA))
    g_big = degree_of_generality(SymbolicObject(generalize(small + extra, SCHEMA), SCHEMA))
    assert g_big >= g_small - 1e-12


# --- contains -------------------------------------------------------------------

@given(descriptions)
def test_contains_reflexive(d):
    assert contains(d, d)


def test_contains_interval_subset(example_table):
    outer = list(example_table.row(1))
    outer[0] = Interval(1, 5)
    assert contains(tuple(outer), example_table.row(1))
    assert not contains(example_table.row(1), tuple(outer))


def test_contains_shape_mismatch(example_table):
    with pytest.raises(DataError):
        contains(example_table.row(1), example_table.row(1)[:2])


# --- extents --------------------------------------------------------------------

def _obj(table, ids):
    return SymbolicObject(generalize([table.row(i) for i in ids], table.schema), table.schema)


def test_extent_of_rows_4_5(example_table):
    assert extent_boolean(_obj(example_table, [4, 5]), example_table) == {4, 5}


def test_extent_of_rows_1_3_by_scan(example_table):
    obj = _obj(example_table, [1, 3])
    scan = {i for i in example_table.ids if contains(obj.description, example_table.row(i))}
    assert scan == {1, 3}
    assert extent_boolean(obj, example_table) == {1, 3}


def test_extent_of_top_object(example_table):
    assert extent_boolean(_obj(example_table, example_table.ids), example_table) == set(example_table.ids)


@given(descriptions, descriptions, st.lists(descriptions, min_size=1, max_size=6))
def test_extent_monotone(a, b, rows):
    table = SymbolicTable(SCHEMA, rows)
    small = SymbolicObject(a, SCHEMA)
    big = SymbolicObject(generalize([a, b], SCHEMA), SCHEMA)
    assert extent_boolean(small, table) <= extent_boolean(big, table)


# --- match degree ---------------------------------------------------------------

def _overlap_oracle(s_weights: dict, w_weights: dict) -> float:
    total = sum(w_weights.values())
    if all(v <= s_weights.get(k, 0.0) + 1e-9 for k, v in w_weights.items()):
        return 1.0
    if total == 0:
        return 1.0
    return sum(min(v, s_weights.get(k, 0.0)) for k, v in w_weights.items()) / total


def test_match_degree_containment_is_one(example_table):
    obj = _obj(example_table, [4, 5])
    assert match_degree(obj, example_table.row(4)) == 1.0


def test_match_degree_modal_overlap():
    schema = (Variable("iv", Kind.INTERVAL, (0, 1)), Variable("m", Kind.MODAL, ("1", "2")))
    s = SymbolicObject((Interval(0, 1), Modal({"1": 0.5, "2": 0.0})), schema)
    w = (Interval(0.2, 0.3), Modal({"1": 1.0, "2": 0.0}))
    assert match_degree(s, w) == pytest.approx(0.5)


def test_match_degree_boolean_variable_zero():
    schema = (Variable("iv", Kind.INTERVAL, (0, 1)), Variable("m", Kind.MODAL, ("1", "2")))
    s = SymbolicObject((Interval(0, 0.5), Modal({"1": 1.0, "2": 1.0})), schema)
    assert match_degree(s, (Interval(0.4, 0.9), Modal({"1": 0.3}))) == 0.0


@given(descriptions, descriptions)
def test_match_degree_agrees_with_oracle(s, w):
    obj = SymbolicObject(s, SCHEMA)
    iv = 1.0 if s[0].lo <= w[0].lo + 1e-9 and w[0].hi <= s[0].hi + 1e-9 else 0.0
    cat = 1.0 if w[1].labels <= s[1].labels else 0.0
    mod = _overlap_oracle(s[2].as_dict(), w[2].as_dict())
    assert match_degree(obj, w) == pytest.approx(min(iv, cat, mod), abs=1e-9)
    assert (match_degree(obj, w) == 1.0) == contains(s, w)


def test_extent_modal_alpha_half_on_table(example_table):
    obj = _obj(example_table, [4, 5])
    scan = {i for i in example_table.ids if match_degree(obj, example_table.row(i)) >= 0.5}
    assert extent_modal(obj, example_table, 0.5) == scan == {4, 5}


def test_extent_modal_bounds(example_table):
    obj = _obj(example_table, [1, 3])
    assert extent_modal(obj, example_table, 0.0) == set(example_table.ids)
    assert extent_modal(obj, example_table, 1.0) == extent_boolean(obj, example_table)
    with pytest.raises(UsageError):
        extent_modal(obj, example_table, 1.5)


@given(descriptions, st.lists(descriptions, min_size=1, max_size=6),
       st.floats(0, 1), st.floats(0, 1))
def test_extent_modal_antitone(s, rows, a1, a2):
    table = SymbolicTable(SCHEMA, rows)
    obj = SymbolicObject(s, SCHEMA)
    lo, hi = sorted((a1, a2))
    assert extent_modal(obj, table, hi) <= extent_modal(obj, table, lo)
    assert extent_modal(obj, table, 1.0) == extent_boolean(obj, table)


# --- degree of generality ------------------------------------------------------

def test_generality_of_full_object_is_one():
    obj = SymbolicObject(tuple(v.full_cell() for v in SCHEMA), SCHEMA)
    assert degree_of_generality(obj) == 1.0


def test_generality_interval_ratio():
    schema = (Variable("y1", Kind.INTERVAL, (1, 6)),)
    assert degree_of_generality(SymbolicObject((Interval(1, 4),), schema)) == pytest.approx(0.6)


def test_generality_point_interval_is_zero():
    schema = (Variable("y1", Kind.INTERVAL, (1, 6)),)
    assert degree_of_generality(SymbolicObject((Interval(3, 3),), schema)) == 0.0


def test_generality_modal_row1_y3_five_categories():
    schema = (Variable("y3", Kind.MODAL, ("1", "2", "3", "4", "5")),)
    cell = Modal({"1": 0.4, "2": 0.1, "3": 0.2, "4": 0.07, "5": 0.02})
    assert degree_of_generality(SymbolicObject((cell,), schema)) == pytest.approx(0.158, abs=1e-12)


def test_generality_product_over_variables():
    obj = SymbolicObject(
        (Interval(2, 7), CategorySet({"a", "c"}), Modal({"x": 0.3, "z": 0.6})), SCHEMA
    )
    assert degree_of_generality(obj) == pytest.approx(0.5 * 0.5 * 0.3, abs=1e-12)


# --- completeness ---------------------------------------------------------------

def test_single_rows_complete(example_table):
    for i in example_table.ids:
        assert is_complete(SymbolicObject(example_table.row(i), example_table.schema), example_table)


def test_union_4_5_complete(example_table):
    assert is_complete(_obj(example_table, [4, 5]), example_table)


def test_widened_object_not_complete(example_table):
    d = list(_obj(example_table, [4, 5]).description)
    d[0] = Interval(1, 4.5)
    obj = SymbolicObject(tuple(d), example_table.schema)
    assert extent_boolean(obj, example_table) == {4, 5}
    assert not is_complete(obj, example_table)


def test_empty_extent_not_complete(example_table):
    d = list(example_table.row(4))
    d[0] = Interval(2, 3)
    assert not is_complete(SymbolicObject(tuple(d), example_table.schema), example_table)


@settings(max_examples=60)
@given(st.lists(descriptions, min_size=1, max_size=6), st.data())
def test_generalization_closure_is_complete(rows, data):
    table = SymbolicTable(SCHEMA, rows)
    ids = data.draw(st.sets(st.sampled_from(list(table.ids)), min_size=1))
    obj = SymbolicObject(generalize([table.row(i) for i in ids], SCHEMA), SCHEMA)
    assert is_complete(obj, table)


def test_format_object(example_table):
    text = format_object(_obj(example_table, [4, 5]))
    assert text.startswith("[y1=[1.000,4.000]]^[y2={1}]^[y3=(1(0.7000),")
    assert math.isclose(degree_of_generality(_obj(example_table, [4, 5])), 0.6 * (1 / 3) * (1.1 / 7) * 0.45 * 0.5)
