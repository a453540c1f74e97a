import numpy as np
import pytest
from hypothesis import strategies as st

# Column-heavy example used across the reducer tests.
GRID_EXAMPLE = [(1, 1), (1, 2), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3),
                (3, 5), (4, 3), (5, 2), (5, 3)]

_ACCEPTANCE = {}


def record_acceptance(key, ok, detail):
    _ACCEPTANCE[key] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(key):
        digits = key.rstrip("abcdefghijklmnopqrstuvwxyz")
        return int(digits), key[len(digits):]

    for key in sorted(_ACCEPTANCE, key=order):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


def mixed_point_set(rng, n):
    """Random integer points drawn from one of several awkward shapes."""
    kind = rng.integers(0, 7)
    if kind == 0:  # dense small grid, many duplicates
        side = int(rng.integers(1, 8))
        pts = rng.integers(0, side, size=(n, 2))
    elif kind == 1:  # sparse wide box
        pts = rng.integers(-10**6, 10**6, size=(n, 2))
    elif kind == 2:  # all on one line
        d = rng.integers(-5, 6, size=2)
        t = rng.integers(-50, 50, size=n)
        pts = np.outer(t, d) + rng.integers(-100, 100, size=2)
    elif kind == 3:  # a single column or row
        pts = rng.integers(0, 30, size=(n, 2))
        pts[:, int(rng.integers(0, 2))] = int(rng.integers(-9, 9))
    elif kind == 4:  # few distinct points repeated
        base = rng.integers(-20, 20, size=(int(rng.integers(1, 5)), 2))
        pts = base[rng.integers(0, len(base), size=n)]
    elif kind == 5:  # thin strip
        pts = np.column_stack((rng.integers(0, 1000, size=n), rng.integers(0, 3, size=n)))
    else:  # medium box
        side = int(rng.integers(2, 200))
        pts = rng.integers(0, side, size=(n, 2))
    return np.asarray(pts, dtype=np.int64)


def log_uniform_n(rng, lo, hi):
    return int(np.exp(rng.uniform(np.log(lo), np.log(hi + 1)))) if hi > lo else lo


coord = st.integers(min_value=-60, max_value=60)
point_lists = st.lists(st.tuples(coord, coord), min_size=1, max_size=60)
wide_coord = st.integers(min_value=-(2**70), max_value=2**70)
wide_point_lists = st.lists(st.tuples(wide_coord, wide_coord), min_size=1, max_size=25)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
