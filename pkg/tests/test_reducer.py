import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hullprep.errors import CoordinateRangeError, EmptyInputError, InputFormatError
from hullprep.geometry import BoundingBox, find_bounds
from hullprep.hulls import brute_force_hull, quickhull
from hullprep.reducer import (ColumnExtremes, build_polyline, dumps, loads, precondition,
                              reduce, second_scan, translate)

from conftest import GRID_EXAMPLE, point_lists, wide_coord

wide_offsets = st.tuples(wide_coord, wide_coord)


def column_oracle(points, p, q):
    """Plain loop over the points; (q + 1, -1) marks an empty column."""
    table = [(q + 1, -1)] * p
    for x, y in points:
        ly, hy = table[x - 1]
        table[x - 1] = (min(ly, y), max(hy, y))
    return [None if hy == -1 else ColumnExtremes(ly, hy) for ly, hy in table]


def translated(points):
    box = find_bounds(points)
    return translate(points, box).tolist(), box


def _orient(a, b, c):
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_segment(a, b, c):
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_touch(a, b, c, d):
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def assert_simple_chain(vertices):
    """Edges meet only where consecutive edges share their common endpoint."""
    assert len(set(vertices)) == len(vertices)
    edges = list(zip(vertices, vertices[1:]))
    for i, (a, b) in enumerate(edges):
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if j == i + 1:
                # Shared endpoint b == c; the next edge must not fold back onto this one.
                assert not (_orient(a, b, d) == 0 and _on_segment(a, b, d)), (a, b, d)
                assert not (_orient(b, d, a) == 0 and _on_segment(b, d, a)), (a, b, d)
            else:
                assert not segments_touch(a, b, c, d), (a, b, c, d)


# -- worked grid example ---------------------------------------------------

def test_grid_example_array():
    arr = reduce(GRID_EXAMPLE, 5, 5)
    assert arr.entries() == [(1, 4), (2, 4), (2, 5), (3, 3), (2, 3)]
    assert arr.entries() == column_oracle(GRID_EXAMPLE, 5, 5)
    assert arr.valid_count == 9


def test_grid_example_chain():
    chain = build_polyline(reduce(GRID_EXAMPLE, 5, 5))
    assert chain.vertices == ((1, 1), (1, 4), (2, 2), (2, 4), (3, 2), (3, 5), (4, 3), (5, 2), (5, 3))
    assert_simple_chain(chain.vertices)


def test_grid_example_second_scan():
    arr = second_scan(reduce(GRID_EXAMPLE, 5, 5))
    assert arr.axis == "y" and arr.slots == 5
    assert arr.entries() == [(1, 1), (2, 5), (4, 5), (1, 2), (3, 3)]
    assert arr.valid_count <= min(2 * 5, 2 * 5)


def test_grid_example_precondition_count():
    pre = precondition(GRID_EXAMPLE)
    assert len(pre.chain) == 9
    assert set(pre.timings) == {"bounds", "reduce", "polyline"}
    assert pre.total_time >= 0


def test_chain_across_gaps():
    arr = loads("1 1 4\n2 6 -1\n3 2 5\n4 6 -1\n5 2 3\n")
    assert arr.entries() == [(1, 4), None, (2, 5), None, (2, 3)]
    assert build_polyline(arr).vertices == ((1, 1), (1, 4), (3, 2), (3, 5), (5, 2), (5, 3))


def test_single_column_chain():
    arr = reduce([(3, 2), (3, 9), (3, 5)], 3, 9)
    assert build_polyline(arr).vertices == ((3, 2), (3, 9))


def test_distinct_rows_survive_second_scan():
    pts = [(1, 1), (2, 3), (4, 2), (5, 4)]
    arr = second_scan(reduce(pts, 5, 4))
    assert sorted(map(tuple, arr.points().tolist())) == sorted(pts)


def test_empty_array_second_scan():
    arr = reduce([], 4, 3)
    assert arr.valid_slots() == []
    assert second_scan(arr).valid_slots() == []
    with pytest.raises(EmptyInputError):
        build_polyline(arr)


def test_all_in_one_column():
    rng = np.random.default_rng(1)
    pts = np.column_stack((np.full(500, 7), rng.integers(-40, 40, size=500)))
    pre = precondition(pts)
    assert len(pre.chain) <= 2


# -- column update cases ---------------------------------------------------

def test_insert_into_empty_column():
    assert reduce([(2, 6)], 3, 9).entries() == [None, (6, 6), None]


@pytest.mark.parametrize("y, expected", [(3, (3, 6)), (8, (6, 8)), (6, (6, 6))])
def test_insert_into_one_point_column(y, expected):
    assert reduce([(1, 6), (1, y)], 1, 9).entry(1) == expected


@pytest.mark.parametrize("y, expected", [(1, (1, 7)), (9, (4, 9)), (5, (4, 7)), (4, (4, 7)), (7, (4, 7))])
def test_insert_into_two_point_column(y, expected):
    assert reduce([(1, 4), (1, 7), (1, y)], 1, 9).entry(1) == expected


@settings(max_examples=150)
@given(point_lists)
def test_each_update_step_preserves_the_hull(pts):
    # After every prefix, the held points have the hull of the prefix.
    shifted, box = translated(pts)
    for k in range(1, len(shifted) + 1, max(1, len(shifted) // 6)):
        prefix = shifted[:k]
        arr = reduce(prefix, box.p, box.q)
        assert quickhull(arr.points(translated=True)) == quickhull(prefix)


# -- properties ------------------------------------------------------------

@given(point_lists)
def test_matches_loop_oracle(pts):
    shifted, box = translated(pts)
    assert reduce(shifted, box.p, box.q).entries() == column_oracle(shifted, box.p, box.q)


@given(point_lists, st.randoms(use_true_random=False))
def test_order_insensitive_and_idempotent(pts, rand):
    shifted, box = translated(pts)
    arr = reduce(shifted, box.p, box.q)
    shuffled = list(shifted)
    rand.shuffle(shuffled)
    assert reduce(shuffled, box.p, box.q).entries() == arr.entries()
    again = reduce(arr.points(translated=True), box.p, box.q)
    assert again.entries() == arr.entries()


@given(point_lists)
def test_selects_only_input_points(pts):
    pre = precondition(pts)
    held = set(pre.chain.vertices)
    assert held <= set(pts)
    box = find_bounds(pts)
    assert len(held) == len(pre.chain) <= min(len(set(pts)), 2 * box.p)


@given(point_lists)
def test_second_scan_bound(pts):
    pre = precondition(pts, second_pass=True)
    box = find_bounds(pts)
    assert len(pre.chain) <= min(2 * box.p, 2 * box.q)
    assert set(pre.chain.vertices) <= set(pts)
    assert quickhull(pre.chain.coords) == quickhull(pts)


@given(point_lists, st.sampled_from(["x", "y", "auto"]), st.sampled_from(["array", "tree"]))
def test_hull_preserved(pts, axis, occupancy):
    pre = precondition(pts, axis=axis, occupancy=occupancy)
    assert brute_force_hull(pre.chain.coords) == brute_force_hull(pts)


@settings(max_examples=60)
@given(wide_offsets, point_lists)
def test_hull_preserved_far_from_origin(offset, small):
    pts = [(x + offset[0], y + offset[1]) for x, y in small]
    for axis in ("x", "y"):
        pre = precondition(pts, axis=axis)
        assert set(pre.chain.vertices) <= set(pts)
        assert quickhull(pre.chain.coords) == quickhull(pts)


def test_box_wider_than_slot_limit(monkeypatch):
    from hullprep import reducer
    monkeypatch.setattr(reducer, "MAX_SLOTS", 1000)
    with pytest.raises(CoordinateRangeError):
        precondition([(0, 0), (1000, 5)])
    assert len(precondition([(0, 0), (999, 5)]).chain) == 2


def test_auto_axis_picks_shorter_side():
    pts = [(0, 0), (1000, 3), (500, 1), (20, 2)]
    assert precondition(pts, axis="auto").array.axis == "y"
    assert precondition([(y, x) for x, y in pts], axis="auto").array.axis == "x"
    with pytest.raises(ValueError):
        precondition(pts, axis="z")


def test_chain_is_simple_on_random_sets():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = int(rng.integers(5, 400))
        pts = rng.integers(0, p, size=(int(rng.integers(1, 5000)), 2))
        for second in (False, True):
            chain = precondition(pts, second_pass=second).chain
            assert len(chain) <= 2000
            assert_simple_chain(chain.vertices)


# -- errors and serialisation ----------------------------------------------

def test_reduce_range_checks():
    with pytest.raises(CoordinateRangeError):
        reduce([(0, 1)], 5, 5)
    with pytest.raises(CoordinateRangeError):
        reduce([(6, 1)], 5, 5)
    with pytest.raises(CoordinateRangeError):
        reduce([(1, 6)], 5, 5)
    with pytest.raises(CoordinateRangeError):
        reduce([(1, 1)], 0)
    with pytest.raises(EmptyInputError):
        precondition([])


def test_translate_origin():
    box = BoundingBox(-3, 2, 10, 12)
    assert translate([(-3, 10), (2, 12)], box).tolist() == [[1, 1], [6, 3]]


def test_dumps_format_and_round_trip():
    arr = loads("1 1 4\n2 6 -1\n3 2 5\n4 6 -1\n5 2 3\n")
    text = dumps(arr)
    assert text == "1 1 4\n2 6 -1\n3 2 5\n4 6 -1\n5 2 3\n"
    assert dumps(loads(text)) == text
    full = reduce(GRID_EXAMPLE, 5, 5)
    assert loads(dumps(full), full.bbox).entries() == full.entries()


@pytest.mark.parametrize("text", ["", "1 2\n", "1 a 3\n", "2 1 1\n"])
def test_loads_rejects_bad_text(text):
    with pytest.raises(InputFormatError):
        loads(text)
