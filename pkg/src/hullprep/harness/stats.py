"""Trend fits and summary tables over benchmark records."""
from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientDataError
from ..occupancy import BlockedBitset, WAryOccupancyTree, practical_linearity_check


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float

    def __call__(self, x):
        return self.slope * x + self.intercept


def fit_linear(x, y) -> LinearFit:
    """Ordinary least squares ``y = slope * x + intercept`` with its R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise ValueError("x and y differ in length")
    if len(np.unique(x)) < 2:
        raise InsufficientDataError("a linear fit needs at least two distinct x values")
    xm, ym = x.mean(), y.mean()
    sxx = ((x - xm) ** 2).sum()
    slope = ((x - xm) * (y - ym)).sum() / sxx
    intercept = ym - slope * xm
    ss_tot = ((y - ym) ** 2).sum()
    ss_res = ((y - (slope * x + intercept)) ** 2).sum()
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return LinearFit(float(slope), float(intercept), float(r2))


def reduction_fits(records) -> dict[str, LinearFit]:
    """Fit ``t_r`` against ``n`` for each method that varies in ``n``."""
    by_method = defaultdict(dict)
    for r in records:
        if r.method == "none":
            continue
        # One point per (method, n): average over hull algorithms and datasets.
        by_method[r.method].setdefault(r.n, []).append(r.t_r)
    fits = {}
    for method, per_n in by_method.items():
        if len(per_n) < 2:
            continue
        ns = sorted(per_n)
        fits[method] = fit_linear(ns, [np.mean(per_n[n]) for n in ns])
    if not fits:
        raise InsufficientDataError("need records at two or more sizes n for some method")
    return fits


def stats_report(records, w: int = 64) -> str:
    """Text summary: t_r trend per method, mean speedups, linearity flags."""
    records = list(records)
    fits = reduction_fits(records)
    lines = ["reduction time vs n (least squares)",
             f"{'method':<16} {'slope s/pt':>12} {'intercept s':>12} {'R^2':>7}"]
    for method, fit in sorted(fits.items()):
        lines.append(f"{method:<16} {fit.slope:>12.4e} {fit.intercept:>12.4e} {fit.r2:>7.4f}")
    if "proposed" in fits:
        base = fits["proposed"].slope
        for method, fit in sorted(fits.items()):
            if method != "proposed" and base > 0:
                lines.append(f"slope ratio {method}/proposed: {fit.slope / base:.2f}")

    table = defaultdict(list)
    for r in records:
        table[(r.method, r.hull_algo)].append(r.speedup)
    lines += ["", "mean speedup t_n/(t_r+t_s)",
              f"{'method':<16} {'algorithm':<10} {'speedup':>8} {'runs':>5}"]
    for (method, algo), vals in sorted(table.items()):
        lines.append(f"{method:<16} {algo:<10} {np.mean(vals):>8.2f} {len(vals):>5}")

    flagged = [r for r in records if not practical_linearity_check(r.n, r.p, w)]
    lines += ["", f"records with p >= n(w+1), w={w}: {len(flagged)}"]
    for r in flagged:
        lines.append(f"  {r.dataset} n={r.n} p={r.p} {r.method}/{r.hull_algo}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ExtractRecord:
    p: int
    density: float
    s: int
    mechanism: str
    t_insert: float
    t_scan: float

    @property
    def t_total(self) -> float:
        return self.t_insert + self.t_scan


def extract_bench(p: int = 2**20, densities=(0.05, 0.25, 0.45, 0.65, 0.85), *, w: int = 64,
                  seed: int = 0, repetitions: int = 1) -> list[ExtractRecord]:
    """Time ``s`` single inserts plus a full ordered scan, array vs tree.

    Both scans are checked against each other and a plain boolean scan.
    """
    rng = np.random.default_rng(seed)
    clock = time.perf_counter
    out = []
    for density in densities:
        s = int(round(density * p))
        idx = (rng.choice(p, size=s, replace=False) + 1).tolist()
        mask = np.zeros(p, dtype=bool)
        mask[np.asarray(idx, dtype=np.int64) - 1] = True
        expected = (np.flatnonzero(mask) + 1).tolist()
        for name, cls in (("array", BlockedBitset), ("tree", WAryOccupancyTree)):
            t_ins = t_scan = 0.0
            for _ in range(repetitions):
                t0 = clock()
                index = cls(p, w)
                insert = index.insert
                for i in idx:
                    insert(i)
                t1 = clock()
                got = index.iterate()
                t2 = clock()
                t_ins += t1 - t0
                t_scan += t2 - t1
            if got != expected:
                raise AssertionError(f"{name} scan disagrees with the plain scan at density {density}")
            out.append(ExtractRecord(p, density, s, name, t_ins / repetitions, t_scan / repetitions))
    return out


def emit_extract_csv(records, stream=None) -> str:
    lines = ["p,density,s,mechanism,t_insert,t_scan,t_total"]
    for r in records:
        lines.append(f"{r.p},{r.density:g},{r.s},{r.mechanism},{r.t_insert:.9f},"
                     f"{r.t_scan:.9f},{r.t_total:.9f}")
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text
