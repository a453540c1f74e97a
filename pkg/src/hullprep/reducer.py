"""Column min/max reduction of an integer point set.

Points are translated so the bounding box starts at (1, 1), then each point
updates the extremes of its column in a single pass::

    L[x] = (min(y, L[x].ly), max(y, L[x].hy))

Only the lowest and highest point of each column can be a hull vertex, so the
valid entries of ``L`` (at most ``2p`` points) have the same convex hull as
the input.  Scanning ``L`` by increasing column, low point before high point,
joins them into a simple polygonal chain.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import CoordinateRangeError, EmptyInputError, InputFormatError
from .geometry import BoundingBox, Point, as_point_array, find_bounds
from .occupancy import BlockedBitset, WAryOccupancyTree, make_occupancy

AXES = ("x", "y")
_INT64_HALF = 2**62
# Each slot costs about 17 bytes; wider boxes are refused rather than allocated.
MAX_SLOTS = 2**27


class ColumnExtremes(NamedTuple):
    ly: int
    hy: int


@dataclass(frozen=True, eq=False)
class ExtremalArray:
    """Per-slot extremes of the non-bucketed coordinate.

    ``low[k]`` and ``high[k]`` describe slot ``k + 1`` in translated
    coordinates; their contents are meaningless for empty slots, which are
    recorded only by ``occupancy``.  With ``axis == "x"`` slots are columns and
    the extremes are y values; with ``axis == "y"`` the roles swap.
    """

    low: np.ndarray
    high: np.ndarray
    occupancy: BlockedBitset | WAryOccupancyTree
    bbox: BoundingBox
    axis: str = "x"

    @property
    def slots(self) -> int:
        return len(self.low)

    def __len__(self):
        return self.slots

    def valid_slots(self) -> list[int]:
        return self.occupancy.iterate()

    def entry(self, i: int) -> ColumnExtremes | None:
        """Extremes of slot ``i`` (1-based), or ``None`` for an empty slot."""
        if not 1 <= i <= self.slots:
            raise IndexError(f"slot {i} outside [1, {self.slots}]")
        if i not in self.occupancy:
            return None
        return ColumnExtremes(int(self.low[i - 1]), int(self.high[i - 1]))

    def entries(self) -> list[ColumnExtremes | None]:
        return [self.entry(i) for i in range(1, self.slots + 1)]

    @property
    def valid_count(self) -> int:
        """Number of distinct points held, ``s``."""
        idx = np.asarray(self.valid_slots(), dtype=np.int64) - 1
        return len(idx) + int(np.count_nonzero(self.low[idx] != self.high[idx]))

    def points(self, translated: bool = False) -> np.ndarray:
        """The held points as an ``(s, 2)`` array in slot order, low before high."""
        slots = np.asarray(self.valid_slots(), dtype=np.int64)
        lo = self.low[slots - 1]
        hi = self.high[slots - 1]
        two = lo != hi
        counts = 1 + two.astype(np.int64)
        cols = np.repeat(slots, counts)
        vals = np.empty(len(cols), dtype=self.low.dtype)
        starts = np.cumsum(counts) - counts
        vals[starts] = lo
        vals[starts[two] + 1] = hi[two]
        if self.axis == "x":
            xs, ys = cols, vals
        else:
            xs, ys = vals, cols
        if not translated:
            dx, dy = self.bbox.x_min - 1, self.bbox.y_min - 1
            if max(abs(dx), abs(dy), self.bbox.p, self.bbox.q) >= _INT64_HALF:
                xs, ys = xs.astype(object), ys.astype(object)
            xs = xs + dx
            ys = ys + dy
        return np.column_stack((xs, ys))


@dataclass(frozen=True, eq=False)
class PolygonalChain:
    """Ordered, non-self-intersecting vertex sequence in original coordinates."""

    coords: np.ndarray

    def __len__(self):
        return len(self.coords)

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(Point(x, y) for x, y in self.coords.tolist())

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True, eq=False)
class Preconditioned:
    array: ExtremalArray
    chain: PolygonalChain
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def total_time(self) -> float:
        return sum(self.timings.values())


def translate(points, bbox: BoundingBox) -> np.ndarray:
    """Shift points so the bounding box's minimum corner lands on (1, 1)."""
    arr = as_point_array(points)
    if len(arr) == 0:
        return arr
    offset = np.array([bbox.x_min - 1, bbox.y_min - 1], dtype=arr.dtype)
    return arr - offset


def _fold_columns(cols0: np.ndarray, vals: np.ndarray, slots: int):
    """Single pass of per-slot min/max.  Returns ``(low, high, occupied_mask)``."""
    if slots > MAX_SLOTS:
        raise CoordinateRangeError(
            f"bounding box spans {slots} slots, more than the limit of {MAX_SLOTS}")
    if vals.dtype == object:
        low = np.zeros(slots, dtype=object)
        high = np.zeros(slots, dtype=object)
        mask = np.zeros(slots, dtype=bool)
        for c, v in zip(cols0.tolist(), vals.tolist()):
            if not mask[c]:
                mask[c] = True
                low[c] = high[c] = v
            else:
                if v < low[c]:
                    low[c] = v
                if v > high[c]:
                    high[c] = v
        return low, high, mask
    info = np.iinfo(np.int64)
    low = np.full(slots, info.max, dtype=np.int64)
    high = np.full(slots, info.min, dtype=np.int64)
    np.minimum.at(low, cols0, vals)
    np.maximum.at(high, cols0, vals)
    mask = low <= high
    low[~mask] = 0
    high[~mask] = 0
    return low, high, mask


def _as_int_index(cols: np.ndarray) -> np.ndarray:
    return cols.astype(np.int64) if cols.dtype == object else cols


def reduce(points, p: int, q: int | None = None, *, occupancy: str = "array",
           w: int = 64) -> ExtremalArray:
    """Bucket translated points by x into ``p`` slots, keeping each slot's y extremes.

    ``points`` must already lie in ``[1, p] x [1, q]`` (see :func:`translate`).
    When ``q`` is omitted the largest y value is used.
    """
    arr = as_point_array(points)
    if p < 1:
        raise CoordinateRangeError(f"p must be >= 1, got {p}")
    if len(arr):
        xs, ys = arr[:, 0], arr[:, 1]
        if xs.min() < 1 or xs.max() > p:
            raise CoordinateRangeError(f"x coordinates must lie in [1, {p}]")
        if ys.min() < 1 or (q is not None and ys.max() > q):
            raise CoordinateRangeError(f"y coordinates must lie in [1, {q if q else 'inf'}]")
        if q is None:
            q = int(ys.max())
        low, high, mask = _fold_columns(_as_int_index(xs) - 1, ys, p)
    else:
        q = q or 1
        low = np.zeros(p, dtype=np.int64)
        high = np.zeros(p, dtype=np.int64)
        mask = np.zeros(p, dtype=bool)
    return ExtremalArray(low, high, make_occupancy(mask, occupancy, w),
                         BoundingBox(1, p, 1, q), "x")


def second_scan(arr: ExtremalArray, *, occupancy: str = "array", w: int = 64) -> ExtremalArray:
    """Re-bucket the held points along the other axis."""
    pts = arr.points(translated=True)
    if arr.axis == "x":
        cols, vals, slots, axis = pts[:, 1], pts[:, 0], arr.bbox.q, "y"
    else:
        cols, vals, slots, axis = pts[:, 0], pts[:, 1], arr.bbox.p, "x"
    if len(pts):
        low, high, mask = _fold_columns(_as_int_index(cols) - 1, vals, slots)
    else:
        low = np.zeros(slots, dtype=np.int64)
        high = np.zeros(slots, dtype=np.int64)
        mask = np.zeros(slots, dtype=bool)
    return ExtremalArray(low, high, make_occupancy(mask, occupancy, w), arr.bbox, axis)


def build_polyline(arr: ExtremalArray) -> PolygonalChain:
    """Join the held points into a simple chain.

    Slots are visited in increasing order and empty ones skipped; within a
    slot the low point precedes the high point, and a slot holding a single
    point contributes it once.
    """
    coords = arr.points(translated=False)
    if len(coords) == 0:
        raise EmptyInputError("extremal array holds no valid points")
    return PolygonalChain(coords)


def precondition(points, *, axis: str = "x", second_pass: bool = False,
                 occupancy: str = "array", w: int = 64) -> Preconditioned:
    """Bounds, translation, reduction and chain building, with per-step timings.

    ``axis`` is ``"x"``, ``"y"`` or ``"auto"`` (bucket along the shorter side
    of the bounding box).  A pure x reduction only scans x for its bounds and
    recovers the y range from the reduced array.
    """
    if axis not in AXES + ("auto",):
        raise ValueError(f"axis must be 'x', 'y' or 'auto', got {axis!r}")
    clock = time.perf_counter
    arr = as_point_array(points)
    if len(arr) == 0:
        raise EmptyInputError("cannot precondition an empty point set")
    timings = {}

    t0 = clock()
    if axis == "x" and arr.dtype != object:
        xs = arr[:, 0]
        x_min, x_max = int(xs.min()), int(xs.max())
        t1 = clock()
        low, high, mask = _fold_columns(xs - x_min, arr[:, 1], x_max - x_min + 1)
        y_min, y_max = int(low[mask].min()), int(high[mask].max())
        shift = y_min - 1
        low[mask] -= shift
        high[mask] -= shift
        ext = ExtremalArray(low, high, make_occupancy(mask, occupancy, w),
                            BoundingBox(x_min, x_max, y_min, y_max), "x")
    else:
        bbox = find_bounds(arr)
        if axis == "auto":
            axis = "x" if bbox.p <= bbox.q else "y"
        t1 = clock()
        moved = translate(arr, bbox)
        if axis == "x":
            cols, vals, slots = moved[:, 0], moved[:, 1], bbox.p
        else:
            cols, vals, slots = moved[:, 1], moved[:, 0], bbox.q
        low, high, mask = _fold_columns(_as_int_index(cols) - 1, vals, slots)
        ext = ExtremalArray(low, high, make_occupancy(mask, occupancy, w), bbox, axis)
    t2 = clock()
    timings["bounds"] = t1 - t0
    timings["reduce"] = t2 - t1

    if second_pass:
        ext = second_scan(ext, occupancy=occupancy, w=w)
        t3 = clock()
        timings["second_scan"] = t3 - t2
        t2 = t3
    chain = build_polyline(ext)
    timings["polyline"] = clock() - t2
    return Preconditioned(ext, chain, timings)


def dumps(arr: ExtremalArray) -> str:
    """One line per slot: ``i ly hy``, or ``i <slots+1> -1`` when empty."""
    lines = []
    sentinel = arr.slots + 1
    for i, e in enumerate(arr.entries(), start=1):
        lines.append(f"{i} {sentinel} -1" if e is None else f"{i} {e.ly} {e.hy}")
    return "\n".join(lines) + "\n"


def loads(text: str, bbox: BoundingBox | None = None, *, axis: str = "x",
          occupancy: str = "array", w: int = 64) -> ExtremalArray:
    """Parse the output of :func:`dumps`.  A slot is empty when its high value is -1."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputFormatError("expected 'i ly hy'", lineno)
        try:
            i, ly, hy = (int(v) for v in parts)
        except ValueError:
            raise InputFormatError("non-integer field", lineno) from None
        if i != len(rows) + 1:
            raise InputFormatError(f"expected slot {len(rows) + 1}, got {i}", lineno)
        rows.append((ly, hy))
    if not rows:
        raise InputFormatError("no slots")
    mask = np.array([hy != -1 for _, hy in rows])
    low = np.array([ly if ok else 0 for (ly, _), ok in zip(rows, mask)], dtype=np.int64)
    high = np.array([hy if ok else 0 for (_, hy), ok in zip(rows, mask)], dtype=np.int64)
    if bbox is None:
        other = int(high.max()) if mask.any() else 1
        bbox = BoundingBox(1, len(rows), 1, other) if axis == "x" else BoundingBox(1, other, 1, len(rows))
    return ExtremalArray(low, high, make_occupancy(mask, occupancy, w), bbox, axis)
