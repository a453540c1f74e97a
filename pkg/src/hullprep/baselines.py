"""Discard-based preconditioners used for comparison.

``at_reduce`` drops every point strictly inside the polygon spanned by the
axis-extreme points.  ``tztm_reduce`` starts from the same
polygon and grows it round by round: each edge is split at the survivor
furthest outside it, and survivors strictly inside the grown polygon are
dropped.

Only points strictly inside are discarded, so boundary points and every hull
vertex always survive.  All tests are exact integer cross products.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError
from .geometry import as_point_array, cross_many, exact_relative


@dataclass(frozen=True, eq=False)
class PseudoHull:
    """Working polygon (counter-clockwise, convex position) and the surviving points."""

    vertices: np.ndarray
    survivors: np.ndarray
    iterations: int


def _extreme_polygon(rel: np.ndarray) -> list:
    """x-min, y-min, x-max, y-max points in counter-clockwise order.

    Ties go to the corner reached first when walking counter-clockwise
    (top of the left side, left of the bottom, ...), which keeps the
    polygon as large as possible and independent of input order.
    """
    xs, ys = rel[:, 0], rel[:, 1]
    poly = []
    for key, tie, pick in ((xs, ys, np.argmax), (ys, xs, np.argmin),
                           (-xs, ys, np.argmin), (-ys, xs, np.argmax)):
        cand = np.flatnonzero(key == key.min())
        k = cand[pick(tie[cand])]
        v = (rel[k, 0], rel[k, 1])
        if v not in poly:
            poly.append(v)
    return poly


def _strictly_inside(poly, pts: np.ndarray) -> np.ndarray:
    """Mask of ``pts`` strictly inside the convex counter-clockwise polygon ``poly``."""
    inside = np.ones(len(pts), dtype=bool)
    for a, b in zip(poly, poly[1:] + poly[:1]):
        inside &= cross_many(a, b, pts) > 0
    return inside


def at_reduce(points) -> np.ndarray:
    """Survivors of the extreme-point quadrilateral test, in input order."""
    arr = as_point_array(points)
    if len(arr) == 0:
        raise EmptyInputError("cannot reduce an empty point set")
    rel, _ = exact_relative(arr)
    poly = _extreme_polygon(rel)
    if len(poly) < 3:
        return arr
    return arr[~_strictly_inside(poly, rel)]


def _furthest_outside(a, b, pts):
    """Survivor furthest to the right of ``a -> b``, or ``None`` if none is outside.

    Ties on distance go to the lexicographically smallest point.
    """
    side = cross_many(a, b, pts)
    best = side.min() if len(pts) else 0
    if best >= 0:
        return None
    ties = pts[side == best]
    k = np.lexsort((ties[:, 1], ties[:, 0]))[0] if ties.dtype != object else \
        min(range(len(ties)), key=lambda i: (ties[i, 0], ties[i, 1]))
    return (ties[k, 0], ties[k, 1])


def tztm_iterations(points, iterations: int) -> PseudoHull:
    """Run ``iterations`` rounds; round 1 is the extreme-point polygon itself."""
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    arr = as_point_array(points)
    if len(arr) == 0:
        raise EmptyInputError("cannot reduce an empty point set")
    rel, origin = exact_relative(arr)
    poly = _extreme_polygon(rel)
    keep = np.ones(len(rel), dtype=bool)
    if len(poly) >= 3:
        keep = ~_strictly_inside(poly, rel)
        for _ in range(iterations - 1):
            surv = rel[keep]
            grown = []
            for a, b in zip(poly, poly[1:] + poly[:1]):
                grown.append(a)
                far = _furthest_outside(a, b, surv)
                if far is not None:
                    grown.append(far)
            if len(grown) == len(poly):
                break
            poly = grown
            # Every survivor is re-tested against the grown polygon.
            idx = np.flatnonzero(keep)
            keep[idx[_strictly_inside(poly, rel[idx])]] = False
    offset = np.array(origin, dtype=rel.dtype)
    verts = np.array(poly, dtype=rel.dtype).reshape(-1, 2) + offset
    return PseudoHull(verts, arr[keep], iterations)


def tztm_reduce(points, iterations: int = 4) -> np.ndarray:
    """Survivors after ``iterations`` rounds of pseudo-hull growth, in input order."""
    return tztm_iterations(points, iterations).survivors
