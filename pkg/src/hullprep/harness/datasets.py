"""Point sources for the benchmark: text files and seeded synthetic generators."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from ..errors import InputFormatError

GENERATORS = ("uniform-box", "uniform-density", "disc", "annulus", "circle")
PROJECTIONS = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}
_WORD_LIMIT = 2**63
_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class DatasetSpec:
    """Where points come from and how they are brought onto the integer grid.

    ``source`` is a file path or one of :data:`GENERATORS`.  ``scale``
    multiplies every coordinate before rounding half away from zero.
    """

    source: str
    n: int | None = None
    p: int | None = None
    density: float | None = None
    projection: str = "xy"
    scale: str | float | int = 1
    seed: int = 0

    def __post_init__(self):
        if Decimal(str(self.scale)) <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.projection not in PROJECTIONS:
            raise ValueError(f"projection must be one of {sorted(PROJECTIONS)}")

    @property
    def is_generated(self) -> bool:
        return self.source in GENERATORS

    @property
    def id(self) -> str:
        if not self.is_generated:
            return Path(self.source).stem
        parts = [self.source, f"n{self.n}"]
        if self.p is not None:
            parts.append(f"p{self.p}")
        if self.density is not None:
            parts.append(f"d{self.density:g}")
        parts.append(f"s{self.seed}")
        return "-".join(parts)


def load_points(spec: DatasetSpec) -> np.ndarray:
    """Points of ``spec`` as an ``(n, 2)`` integer array; duplicates are kept."""
    if spec.is_generated:
        return generate(spec.source, n=spec.n, p=spec.p, density=spec.density, seed=spec.seed)
    return read_points(spec.source, projection=spec.projection, scale=spec.scale)


def _quantize(text: str, scale: Decimal, lineno: int) -> int:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise InputFormatError(f"not a number: {text!r}", lineno) from None
    if not value.is_finite():
        raise InputFormatError(f"non-finite coordinate {text!r}", lineno)
    q = int((value * scale).to_integral_value(rounding=ROUND_HALF_UP))
    if not -_WORD_LIMIT <= q < _WORD_LIMIT:
        raise InputFormatError(f"coordinate {text!r} overflows 64 bits after scaling", lineno)
    return q


def parse_points(lines, projection: str = "xy", scale="1") -> np.ndarray:
    """Parse ``x y`` or ``x y z`` lines (whitespace or comma separated).

    Lines starting with ``#`` and blank lines are skipped.  Three-field lines
    are projected onto ``projection``.
    """
    scale = Decimal(str(scale))
    unit = scale == 1
    axes = PROJECTIONS[projection]
    dims = None
    out = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        if len(fields) not in (2, 3):
            raise InputFormatError(f"expected 2 or 3 fields, got {len(fields)}", lineno)
        if dims is None:
            dims = len(fields)
        elif len(fields) != dims:
            raise InputFormatError(f"expected {dims} fields like earlier lines, got {len(fields)}", lineno)
        picked = fields if dims == 2 else [fields[axes[0]], fields[axes[1]]]
        pt = []
        for f in picked:
            if unit:
                try:
                    v = int(f)
                except ValueError:
                    v = _quantize(f, scale, lineno)
                else:
                    if not -_WORD_LIMIT <= v < _WORD_LIMIT:
                        raise InputFormatError(f"coordinate {f!r} overflows 64 bits", lineno)
            else:
                v = _quantize(f, scale, lineno)
            pt.append(v)
        out.append(pt)
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def read_points(path, projection: str = "xy", scale="1") -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_points(fh, projection=projection, scale=scale)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _side(n: int, density: float) -> int:
    return max(1, math.ceil(math.sqrt(n / density)))


def _primitive_directions(m: int, rng: np.random.Generator) -> np.ndarray:
    """``m`` distinct primitive vectors pointing into the half-open upper half-plane."""
    radius = max(2, math.ceil(math.sqrt(m)) + 1)
    while True:
        a = np.arange(-radius, radius + 1)
        gx, gy = np.meshgrid(a, np.arange(0, radius + 1))
        gx, gy = gx.ravel(), gy.ravel()
        ok = ((gy > 0) | (gx > 0)) & (np.gcd(gx, gy) == 1)
        cand = np.column_stack((gx[ok], gy[ok]))
        if len(cand) >= m:
            return cand[rng.choice(len(cand), m, replace=False)]
        radius *= 2


def generate(name: str, n: int | None = None, p: int | None = None,
             density: float | None = None, seed: int = 0) -> np.ndarray:
    """Seeded synthetic point set.

    * ``uniform-box``: ``n`` draws with replacement from a ``p`` x ``p`` grid.
    * ``uniform-density``: ``n`` distinct cells of a box sized for ``density``
      (square unless ``p`` fixes the width).
    * ``disc`` / ``annulus``: draws with replacement from a disc of diameter
      ``p`` or its outer ring (inner radius 80%).
    * ``circle``: a strictly convex polygon whose ``n`` vertices (rounded down
      to an even count, at least 4) are all hull vertices.
    """
    if n is None or n < 1:
        raise ValueError("generators need n >= 1")
    rng = np.random.default_rng(seed)
    if name == "uniform-box":
        p = p or _side(n, 1.0)
        return rng.integers(0, p, size=(n, 2), dtype=np.int64)
    if name == "uniform-density":
        density = density or 1.0
        if not 0 < density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if p is None:
            p = q = _side(n, density)
        else:
            q = max(1, math.ceil(n / (density * p)))
        if n > p * q:
            raise ValueError(f"{n} distinct points do not fit in a {p} x {q} box")
        cells = rng.choice(p * q, size=n, replace=False)
        return np.column_stack((cells % p, cells // p)).astype(np.int64)
    if name in ("disc", "annulus"):
        p = p or _side(n, math.pi / 4)
        r = p / 2
        inner = 0.8 * r if name == "annulus" else 0.0
        out = np.empty((0, 2), dtype=np.int64)
        while len(out) < n:
            cand = rng.integers(0, p, size=(2 * n, 2), dtype=np.int64)
            d2 = ((cand + 0.5 - r) ** 2).sum(axis=1)
            out = np.concatenate((out, cand[(d2 <= r * r) & (d2 >= inner * inner)]))
        return out[:n]
    if name == "circle":
        m = max(2, n // 2)
        dirs = _primitive_directions(m, rng)
        dirs = dirs[np.argsort(np.arctan2(dirs[:, 1], dirs[:, 0]), kind="stable")]
        edges = np.concatenate((dirs, -dirs))
        verts = np.cumsum(edges, axis=0)
        verts -= verts.min(axis=0)
        return verts[rng.permutation(len(verts))]
    raise ValueError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
