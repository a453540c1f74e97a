"""Integer points, bounding boxes, hulls and the exact orientation predicate.

Every coordinate is an integer.  Scalar predicates run on Python ints, which
never overflow.  The vectorised helpers used by the hull algorithms run on
``int64`` arrays only when the coordinate span guarantees that cross products
fit in 63 bits; wider inputs fall back to ``object`` arrays of Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import EmptyInputError

# Cross products of differences bounded by 2**30 stay below 2**62.
_INT64_SAFE_SPAN = 2**30


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class BoundingBox:
    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(f"inverted bounding box {self}")

    @property
    def p(self) -> int:
        """Width in grid columns."""
        return self.x_max - self.x_min + 1

    @property
    def q(self) -> int:
        """Height in grid rows."""
        return self.y_max - self.y_min + 1

    @property
    def size(self) -> int:
        return self.p * self.q


@dataclass(frozen=True)
class Hull:
    """Strictly convex vertex ring in canonical form.

    Vertices run counter-clockwise starting at the lexicographically smallest
    one, so two hulls of the same point set compare equal with ``==``.
    Degenerate hulls hold one or two vertices.
    """

    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]


def cross(o, a, b) -> int:
    """Twice the signed area of triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(a, b, c) -> int:
    """Sign of ``(b - a) x (c - a)``: 1 for a left turn, -1 right, 0 collinear."""
    d = cross(a, b, c)
    return (d > 0) - (d < 0)


def as_point_array(points) -> np.ndarray:
    """Return ``points`` as an ``(n, 2)`` integer array.

    Lists of tuples, :class:`Point` sequences and integer arrays are accepted.
    Coordinates that do not fit in ``int64`` produce an ``object`` array of
    Python ints.
    """
    if isinstance(points, np.ndarray):
        arr = points
    else:
        if not isinstance(points, (list, tuple)):
            points = list(points)
        try:
            arr = np.asarray(points)
        except ValueError:
            raise ValueError("points must form an (n, 2) array") from None
        if arr.dtype.kind == "f":
            # Python ints just past the int64 range come back as floats.
            flat = [v for pt in points for v in pt]
            if all(isinstance(v, (int, np.integer)) for v in flat):
                arr = np.empty(arr.shape, dtype=object)
                arr.flat[:] = [int(v) for v in flat]
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {arr.shape}")
    if arr.dtype == object:
        if not all(isinstance(v, (int, np.integer)) for v in arr.flat):
            raise TypeError("point coordinates must be integers")
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"point coordinates must be integers, got {arr.dtype}")
    if arr.dtype == np.uint64 and arr.size and int(arr.max()) > np.iinfo(np.int64).max:
        return arr.astype(object)
    return arr.astype(np.int64, copy=False)


def exact_relative(arr: np.ndarray) -> tuple[np.ndarray, Point]:
    """Shift ``arr`` so its minimum corner is the origin.

    Returns the shifted array and the origin.  The array is ``int64`` when
    cross products of its rows cannot overflow, otherwise ``object``.
    """
    lo_x, lo_y = arr[:, 0].min(), arr[:, 1].min()
    span = max(int(arr[:, 0].max()) - int(lo_x), int(arr[:, 1].max()) - int(lo_y))
    origin = Point(int(lo_x), int(lo_y))
    if arr.dtype != object and span < _INT64_SAFE_SPAN:
        return arr - np.array(origin, dtype=np.int64), origin
    rel = arr.astype(object) - np.array(origin, dtype=object)
    return rel, origin


def cross_many(o, a, pts: np.ndarray) -> np.ndarray:
    """Vectorised ``cross(o, a, r)`` for every row ``r`` of ``pts``."""
    ax, ay = a[0] - o[0], a[1] - o[1]
    return ax * (pts[:, 1] - o[1]) - ay * (pts[:, 0] - o[0])


def find_bounds(points) -> BoundingBox:
    """Tight bounding box of a non-empty point collection, in one pass."""
    arr = as_point_array(points)
    if len(arr) == 0:
        raise EmptyInputError("cannot bound an empty point set")
    xs, ys = arr[:, 0], arr[:, 1]
    return BoundingBox(int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max()))


def _dedupe_ring(vertices: list[Point]) -> list[Point]:
    out = []
    for v in vertices:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _signed_area2(ring: Sequence[Point]) -> int:
    total = 0
    for (x0, y0), (x1, y1) in zip(ring, ring[1:] + ring[:1]):
        total += x0 * y1 - x1 * y0
    return total


def canonicalize_hull(vertices: Iterable) -> Hull:
    """Put a convex polygon's vertex list into canonical :class:`Hull` form.

    Accepts either rotational order and tolerates repeated or collinear
    vertices.  A polygon of zero area collapses to its two lexicographic
    extremes.
    """
    ring = _dedupe_ring([Point(int(v[0]), int(v[1])) for v in vertices])
    if not ring:
        raise EmptyInputError("a hull needs at least one vertex")
    if len(ring) <= 2:
        return Hull(tuple(sorted(set(ring))))
    area = _signed_area2(ring)
    if area == 0:
        return Hull((min(ring), max(ring)))
    if area < 0:
        ring.reverse()
    start = ring.index(min(ring))
    ring = ring[start:] + ring[:start]
    stack: list[Point] = []
    for v in ring + [ring[0]]:
        while len(stack) >= 2 and orientation(stack[-2], stack[-1], v) == 0:
            stack.pop()
        stack.append(v)
    stack.pop()
    return Hull(tuple(stack))
