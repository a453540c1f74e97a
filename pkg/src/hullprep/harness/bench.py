"""Timed reduce-then-hull pipelines and their CSV records."""
from __future__ import annotations

import csv
import gc
import io
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, fields

import numpy as np

from ..baselines import at_reduce, tztm_reduce
from ..errors import HullMismatchError, IncompatiblePipelineError
from ..geometry import find_bounds
from ..hulls import graham_scan, jarvis_march, melkman, quickhull
from ..reducer import precondition

log = logging.getLogger(__name__)

METHODS = ("none", "proposed", "at", "tztm")
HULL_ALGOS = {
    "quickhull": quickhull,
    "graham": graham_scan,
    "jarvis": jarvis_march,
    "melkman": melkman,
}
CSV_FIELDS = ("dataset", "n", "p", "q", "density", "method", "hull_algo", "s",
              "t_n", "t_r", "t_s", "speedup", "reduction_pct", "repetitions")


@dataclass(frozen=True)
class BenchRecord:
    """Averaged timings of one preconditioner + hull algorithm on one dataset.

    ``t_n`` is the hull on all ``n`` points, ``t_r`` the reduction to ``s``
    points and ``t_s`` the hull on those.  For Melkman, whose input must be a
    chain, ``t_n`` is QuickHull on the raw points.
    """

    dataset: str
    n: int
    p: int
    q: int
    method: str
    hull_algo: str
    s: int
    t_n: float
    t_r: float
    t_s: float
    repetitions: int = 1

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    @property
    def density(self) -> float:
        return self.n / (self.p * self.q)

    @property
    def speedup(self) -> float:
        return self.t_n / (self.t_r + self.t_s)

    @property
    def reduction_pct(self) -> float:
        return 1.0 - self.s / self.n


def method_id(method: str, tztm_iters: int = 4, second_pass: bool = False,
              occupancy: str = "array") -> str:
    if method == "tztm":
        return f"tztm-{tztm_iters}"
    if method == "proposed":
        return "proposed" + ("-xy" if second_pass else "") + ("-tree" if occupancy == "tree" else "")
    return method


def _method_rank(mid: str):
    base, _, rest = mid.partition("-")
    return (METHODS.index(base) if base in METHODS else len(METHODS), rest)


def _algo_rank(algo: str):
    names = list(HULL_ALGOS)
    return (names.index(algo) if algo in names else len(names), algo)


def sort_records(records):
    """Deterministic (dataset, method, algorithm) order."""
    return sorted(records, key=lambda r: (r.dataset, _method_rank(r.method), _algo_rank(r.hull_algo), r.n))


@contextmanager
def _no_gc():
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def check_pipeline(method: str, hull_algo: str) -> None:
    if method not in METHODS:
        raise IncompatiblePipelineError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if hull_algo not in HULL_ALGOS:
        raise IncompatiblePipelineError(f"unknown hull algorithm {hull_algo!r}")
    if hull_algo == "melkman" and method != "proposed":
        raise IncompatiblePipelineError(
            "melkman needs a simple chain, which only the proposed preconditioner produces")


def make_reducer(method: str, *, tztm_iters: int = 4, second_pass: bool = False,
                 occupancy: str = "array", axis: str = "x"):
    """Callable mapping raw points to the input of the final hull call."""
    if method == "proposed":
        def reduce_proposed(points):
            return precondition(points, axis=axis, second_pass=second_pass,
                                occupancy=occupancy).chain
        return reduce_proposed
    if method == "at":
        return at_reduce
    if method == "tztm":
        return lambda points: tztm_reduce(points, tztm_iters)
    raise IncompatiblePipelineError(f"method {method!r} has no reducer")


def run_pipeline(points, method: str, hull_algo: str, repetitions: int = 100, *,
                 dataset: str = "data", tztm_iters: int = 4, second_pass: bool = False,
                 occupancy: str = "array", axis: str = "x") -> BenchRecord:
    """Time raw hull vs reduce + hull, averaged over ``repetitions`` runs.

    The reduced pipeline's hull is compared with the raw hull before anything
    is recorded; a difference raises :class:`HullMismatchError`.
    """
    check_pipeline(method, hull_algo)
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    points = np.asarray(points)
    bbox = find_bounds(points)
    mid = method_id(method, tztm_iters, second_pass, occupancy)
    raw_hull = quickhull if hull_algo == "melkman" else HULL_ALGOS[hull_algo]
    final_hull = HULL_ALGOS[hull_algo]
    clock = time.perf_counter

    t_n = t_r = t_s = 0.0
    if method == "none":
        for _ in range(repetitions):
            with _no_gc():
                t0 = clock()
                raw_hull(points)
                t_n += clock() - t0
        t_n /= repetitions
        return BenchRecord(dataset, len(points), bbox.p, bbox.q, mid, hull_algo,
                           len(points), round(t_n, 9), 0.0, round(t_n, 9), repetitions)

    reducer = make_reducer(method, tztm_iters=tztm_iters, second_pass=second_pass,
                           occupancy=occupancy, axis=axis)
    s = None
    for rep in range(repetitions):
        with _no_gc():
            t0 = clock()
            expected = raw_hull(points)
            t1 = clock()
            reduced = reducer(points)
            t2 = clock()
            got = final_hull(reduced)
            t3 = clock()
        t_n += t1 - t0
        t_r += t2 - t1
        t_s += t3 - t2
        if rep == 0:
            if got != expected:
                raise HullMismatchError(
                    f"{mid}/{hull_algo} on {dataset}: reduced hull has {len(got)} vertices, "
                    f"raw hull has {len(expected)}")
            s = len(reduced)
    record = BenchRecord(dataset, len(points), bbox.p, bbox.q, mid, hull_algo, s,
                         round(t_n / repetitions, 9), round(t_r / repetitions, 9),
                         round(t_s / repetitions, 9), repetitions)
    log.info("%s %s/%s: n=%d s=%d speedup=%.2f", dataset, mid, hull_algo,
             record.n, record.s, record.speedup)
    return record


def run_matrix(datasets, methods=METHODS, algos=tuple(HULL_ALGOS), *, tztm_iters=(2, 3, 4),
               repetitions: int = 100, second_pass: bool = False, occupancy: str = "array"):
    """Every compatible (dataset, method, algorithm) cell; ``datasets`` maps id -> points."""
    records = []
    for name, points in datasets.items():
        for method in methods:
            iters = tztm_iters if method == "tztm" else (None,)
            for k in iters:
                for algo in algos:
                    try:
                        check_pipeline(method, algo)
                    except IncompatiblePipelineError as exc:
                        log.debug("skipping %s/%s: %s", method, algo, exc)
                        continue
                    records.append(run_pipeline(
                        points, method, algo, repetitions, dataset=name,
                        tztm_iters=k or 4, second_pass=second_pass, occupancy=occupancy))
    return sort_records(records)


def _seconds(t: float) -> str:
    return f"{t:.9f}"


def emit_csv(records, stream=None) -> str:
    """Write a header and one row per record; returns the text written."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in sort_records(records):
        writer.writerow([r.dataset, r.n, r.p, r.q, f"{r.density:.9f}", r.method, r.hull_algo,
                         r.s, _seconds(r.t_n), _seconds(r.t_r), _seconds(r.t_s),
                         f"{r.speedup:.6f}", f"{r.reduction_pct:.9f}", r.repetitions])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def parse_csv(text: str) -> list[BenchRecord]:
    """Inverse of :func:`emit_csv`.  Derived columns are recomputed, not read."""
    rows = csv.DictReader(io.StringIO(text))
    if rows.fieldnames is None or tuple(rows.fieldnames) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {rows.fieldnames}")
    ints = {"n", "p", "q", "s", "repetitions"}
    floats = {"t_n", "t_r", "t_s"}
    out = []
    for row in rows:
        kwargs = {}
        for f in fields(BenchRecord):
            v = row[f.name]
            kwargs[f.name] = int(v) if f.name in ints else float(v) if f.name in floats else v
        out.append(BenchRecord(**kwargs))
    return out
