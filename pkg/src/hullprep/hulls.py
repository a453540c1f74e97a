"""Convex hull algorithms over integer points.

All of them return a canonical :class:`~hullprep.geometry.Hull`, so results
from different algorithms compare equal with ``==``.  Set-based algorithms
(Graham scan, QuickHull, Jarvis march) vectorise their O(n) passes with numpy;
Melkman's algorithm walks a simple chain with a deque.
"""
from __future__ import annotations

from collections import deque
from functools import cmp_to_key

import numpy as np

from .errors import EmptyInputError, OracleBoundError
from .geometry import (Hull, Point, as_point_array, canonicalize_hull, cross,
                       cross_many, exact_relative)

BRUTE_FORCE_BOUND = 500


def _prepare(points):
    arr = as_point_array(points)
    if len(arr) == 0:
        raise EmptyInputError("cannot build the hull of an empty point set")
    return exact_relative(arr)


def _finish(vertices, origin: Point) -> Hull:
    ox, oy = origin
    return canonicalize_hull([(int(x) + ox, int(y) + oy) for x, y in vertices])


def _lexmin(rel):
    xs = rel[:, 0]
    cand = np.flatnonzero(xs == xs.min())
    return rel[cand[np.argmin(rel[cand, 1])]]


def _lexmax(rel):
    xs = rel[:, 0]
    cand = np.flatnonzero(xs == xs.max())
    return rel[cand[np.argmax(rel[cand, 1])]]


def _polar_order(rel: np.ndarray, pivot) -> list[list[int]]:
    """Points other than ``pivot`` sorted by polar angle about it, nearer first.

    ``pivot`` is the lowest point (leftmost among ties), so every direction
    lies in ``[0, pi)``.  A float key orders the points; the order is then
    checked exactly and redone with an exact comparator if the check fails.
    """
    d = rel - pivot
    d = d[(d[:, 0] != 0) | (d[:, 1] != 0)]
    if len(d) == 0:
        return []
    if d.dtype != object:
        dx, dy = d[:, 0], d[:, 1]
        g = np.gcd(dx, dy)
        # Same direction -> same primitive vector -> bit-identical angle.
        angle = np.arctan2(dy // g, dx // g)
        order = np.lexsort((g, angle))
        sd = d[order]
        a, b = sd[:-1], sd[1:]
        turn = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        steps_back = (turn == 0) & (g[order][1:] < g[order][:-1])
        if not (turn < 0).any() and not steps_back.any():
            return sd.tolist()

    def compare(u, v):
        t = u[0] * v[1] - u[1] * v[0]
        if t:
            return -1 if t > 0 else 1
        du, dv = abs(u[0]) + abs(u[1]), abs(v[0]) + abs(v[1])
        return (du > dv) - (du < dv)

    return sorted(d.tolist(), key=cmp_to_key(compare))


def graham_scan(points) -> Hull:
    """Graham scan: sort by polar angle about the lowest point, then one stack pass."""
    rel, origin = _prepare(points)
    ys = rel[:, 1]
    cand = np.flatnonzero(ys == ys.min())
    pivot = rel[cand[np.argmin(rel[cand, 0])]]
    px, py = int(pivot[0]), int(pivot[1])
    stack = [(0, 0)]
    for x, y in _polar_order(rel, pivot):
        while len(stack) >= 2:
            (ax, ay), (bx, by) = stack[-2], stack[-1]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) > 0:
                break
            stack.pop()
        stack.append((x, y))
    return _finish([(x + px, y + py) for x, y in stack], origin)


def quickhull(points) -> Hull:
    """QuickHull: split on the point furthest from each chord until no point is outside."""
    rel, origin = _prepare(points)
    a, b = _lexmin(rel), _lexmax(rel)
    if (a == b).all():
        return _finish([a], origin)
    side = cross_many(a, b, rel)
    ring = [a]
    ring += _quickhull_chain(a, b, rel[side < 0])
    ring += _quickhull_chain(b, a, rel[side > 0])
    ring.pop()
    return _finish(ring, origin)


def _quickhull_chain(a, b, pts) -> list:
    """Hull vertices strictly right of ``a -> b``, in order, ending with ``b``."""
    out = []
    stack = [(a, b, pts)]
    while stack:
        a, b, pts = stack.pop()
        if len(pts) == 0:
            out.append(b)
            continue
        far = pts[np.argmin(cross_many(a, b, pts))]
        stack.append((far, b, pts[cross_many(far, b, pts) < 0]))
        stack.append((a, far, pts[cross_many(a, far, pts) < 0]))
    return out


def _wrap_step(rel, cur):
    """Next counter-clockwise hull vertex after ``cur``: nothing lies to its right.

    Among points on that supporting ray the furthest one is taken.
    """
    moved = (rel[:, 0] != cur[0]) | (rel[:, 1] != cur[1])
    cand = rel[np.argmax(moved)]
    while True:
        side = cross_many(cur, cand, rel)
        k = np.argmin(side)
        if side[k] >= 0:
            break
        cand = rel[k]
    dx, dy = cand[0] - cur[0], cand[1] - cur[1]
    reach = (rel[:, 0] - cur[0]) * dx + (rel[:, 1] - cur[1]) * dy
    reach[side != 0] = -1
    return rel[np.argmax(reach)]


def jarvis_march(points) -> Hull:
    """Gift wrapping: one O(n) pass per hull vertex."""
    rel, origin = _prepare(points)
    start = _lexmin(rel)
    if (rel == start).all():
        return _finish([start], origin)
    ring = [start]
    cur = start
    while True:
        cur = _wrap_step(rel, cur)
        if (cur == start).all():
            break
        ring.append(cur)
        if len(ring) > len(rel):
            raise RuntimeError("gift wrapping failed to close")
    return _finish(ring, origin)


def melkman(chain) -> Hull:
    """Melkman's online hull of a simple polygonal chain, in O(len(chain)).

    ``chain`` may be a :class:`~hullprep.reducer.PolygonalChain` or any vertex
    sequence.  The result is unspecified if the chain self-intersects.
    """
    coords = getattr(chain, "coords", None)
    if coords is None:
        coords = as_point_array(chain)
    pts = []
    for v in coords.tolist():
        v = (v[0], v[1])
        if not pts or pts[-1] != v:
            pts.append(v)
    if not pts:
        raise EmptyInputError("cannot build the hull of an empty chain")
    p0, p1 = pts[0], None
    k = 1
    while k < len(pts):
        if p1 is None:
            p1 = pts[k]
        elif cross(p0, p1, pts[k]) != 0:
            break
        k += 1
    if k == len(pts):
        return canonicalize_hull([min(pts), max(pts)])
    run = pts[:k]
    a, b, c = min(run), max(run), pts[k]
    hull = deque((c, a, b, c) if cross(a, b, c) > 0 else (c, b, a, c))
    for v in pts[k + 1:]:
        if cross(hull[-2], hull[-1], v) > 0 and cross(v, hull[0], hull[1]) > 0:
            continue
        while len(hull) >= 2 and cross(hull[-2], hull[-1], v) <= 0:
            hull.pop()
        hull.append(v)
        while len(hull) >= 2 and cross(v, hull[0], hull[1]) <= 0:
            hull.popleft()
        hull.appendleft(v)
    hull.pop()
    return canonicalize_hull(hull)


def _edge_test(dx, dy, rows, cols):
    """For each row ``j``: is every column point left of ``a -> b_j`` or on ``[a, b_j]``?

    ``dx, dy`` are offsets from ``a``; the result is a mask over ``rows``.
    """
    bx, by = dx[rows, None], dy[rows, None]
    cx, cy = dx[None, cols], dy[None, cols]
    turn = bx * cy - by * cx
    along = bx * cx + by * cy
    inside = (along >= 0) & (along <= bx * bx + by * by)
    return ((turn > 0) | ((turn == 0) & inside)).all(axis=1)


def brute_force_hull(points, bound: int = BRUTE_FORCE_BOUND) -> Hull:
    """Hull by testing every directed pair as a candidate edge, O(n^3).

    ``(a, b)`` is an edge when every other point is strictly left of ``a -> b``
    or on the closed segment ``[a, b]``.  Intended as a test oracle.
    """
    arr = as_point_array(points)
    if len(arr) > bound:
        raise OracleBoundError(f"{len(arr)} points exceeds the oracle bound of {bound}")
    if len(arr) == 0:
        raise EmptyInputError("cannot build the hull of an empty point set")
    uniq = sorted(set(map(tuple, arr.tolist())))
    if len(uniq) <= 2:
        return canonicalize_hull(uniq)
    rel, origin = exact_relative(as_point_array(uniq))
    xs, ys = rel[:, 0], rel[:, 1]
    m = len(rel)
    if not cross_many(rel[0], rel[-1], rel).any():
        # No edge has a point strictly left of it: the hull is a segment.
        return _finish([rel[0], rel[-1]], origin)
    # Candidate rows are screened against a few points, then a sample, before
    # the full test; a row rejected early would also fail the full test.
    extremes = np.unique([np.argmin(xs), np.argmax(xs), np.argmin(ys), np.argmax(ys),
                          np.argmin(xs + ys), np.argmax(xs + ys),
                          np.argmin(xs - ys), np.argmax(xs - ys), 0, m - 1])
    sample = np.linspace(0, m - 1, min(m, 48)).astype(np.int64)
    everything = np.arange(m)
    nxt = {}
    for i in range(m):
        dx, dy = xs - xs[i], ys - ys[i]
        rows = np.flatnonzero((dx != 0) | (dy != 0))
        for cols in (extremes, sample, everything):
            ok = _edge_test(dx, dy, rows, cols)
            rows = rows[ok]
            if len(rows) == 0:
                break
        if len(rows):
            nxt[i] = rows[0]
    start = 0  # uniq is sorted, so index 0 is the lexicographic minimum
    ring = [start]
    while nxt[ring[-1]] != start:
        ring.append(nxt[ring[-1]])
        if len(ring) > len(rel):
            raise RuntimeError("edge walk failed to close")
    return _finish(rel[ring], origin)
