"""Occupancy indexes over the slots of an extremal array.

A slot index ``i`` runs from 1 to ``p``.  Slots are grouped into words of
``w`` bits: slot ``i`` lives in block ``(i - 1) >> log2(w)`` at bit
``(i - 1) & (w - 1)``.  Set bits are enumerated with a count-trailing-zeros
loop, so a word costs one step per set bit and an empty word costs one test.

Two structures are provided:

* :class:`BlockedBitset` -- a flat array of words.
* :class:`WAryOccupancyTree` -- the same leaf words plus summary levels in
  which bit ``j`` of a word is set iff its ``j``-th child word is non-zero.
  Iteration descends only into non-empty subtrees.
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import CoordinateRangeError

WORD_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32, 64: np.uint64}


def ctz(x: int) -> int:
    """Count trailing zeros of a non-zero word."""
    if x == 0:
        raise ValueError("ctz(0) is undefined")
    return (x & -x).bit_length() - 1


def clz(x: int, width: int) -> int:
    """Count leading zeros of ``x`` viewed as a ``width``-bit word."""
    if x < 0 or x >= 1 << width:
        raise ValueError(f"{x} does not fit in {width} bits")
    return width - x.bit_length()


def msb_position(x: int, width: int) -> int:
    """Position of the highest set bit, counted from bit 0 on the right."""
    if x == 0:
        raise ValueError("msb_position(0) is undefined")
    return width - 1 - clz(x, width)


def iter_word_steps(x: int, update: str = "xor") -> Iterator[tuple[int, int, int]]:
    """Yield ``(word, pos, next_word)`` for each step of the ctz loop.

    ``update`` picks how the found bit is cleared: ``"xor"`` computes
    ``x ^ (1 << pos)``, ``"andnot"`` computes ``x & ~(1 << pos)``.
    """
    if update not in ("xor", "andnot"):
        raise ValueError(f"unknown update step {update!r}")
    while x != 0:
        pos = ctz(x)
        if update == "xor":
            nxt = x ^ (1 << pos)
        else:
            nxt = x & ~(1 << pos)
        yield x, pos, nxt
        x = nxt


def extract_word_positions(x: int, update: str = "xor") -> list[int]:
    """Positions of the set bits of ``x`` in increasing order."""
    return [pos for _, pos, _ in iter_word_steps(x, update)]


def _check_width(w: int) -> int:
    if w not in WORD_DTYPES:
        raise ValueError(f"word width must be one of {sorted(WORD_DTYPES)}, got {w}")
    return w.bit_length() - 1


def bit_index_map(i: int, w: int) -> tuple[int, int]:
    """Map a 1-based slot index to ``(block, position)`` for ``w``-bit words."""
    shift = _check_width(w)
    if i < 1:
        raise CoordinateRangeError(f"slot index must be >= 1, got {i}")
    return (i - 1) >> shift, (i - 1) & (w - 1)


def slot_from_bit(block: int, pos: int, w: int) -> int:
    """Inverse of :func:`bit_index_map`."""
    return block * w + pos + 1


def practical_linearity_check(n: int, p: int, w: int) -> bool:
    """True when skipping empty words cannot outweigh the ``n`` real points.

    The extraction stays linear in ``n`` while ``p < n * (w + 1)``.
    """
    if n < 1 or p < 1:
        raise ValueError("n and p must be positive")
    return p < n * (w + 1)


def _pack_mask(mask: np.ndarray, w: int) -> np.ndarray:
    """Pack a boolean mask into little-endian ``w``-bit words."""
    nwords = -(-len(mask) // w)
    packed = np.packbits(mask, bitorder="little")
    buf = np.zeros(nwords * (w // 8), dtype=np.uint8)
    buf[: len(packed)] = packed
    return buf.view(np.dtype(WORD_DTYPES[w]).newbyteorder("<")).astype(WORD_DTYPES[w])


def _words_to_slots(blocks: np.ndarray, w: int, block_ids: Iterable[int], out: list[int]):
    for b in block_ids:
        x = int(blocks[b])
        base = b * w + 1
        while x:
            low = x & -x
            out.append(base + low.bit_length() - 1)
            x ^= low


class BlockedBitset:
    """Flat bit array of ``p`` slots stored as ``ceil(p / w)`` words."""

    def __init__(self, p: int, w: int = 64):
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        self._shift = _check_width(w)
        self.p = p
        self.w = w
        self.blocks = np.zeros(-(-p // w), dtype=WORD_DTYPES[w])

    @classmethod
    def from_mask(cls, mask: np.ndarray, w: int = 64) -> "BlockedBitset":
        """Build from a boolean array whose entry ``k`` is slot ``k + 1``."""
        bs = cls(len(mask), w)
        bs.blocks = _pack_mask(np.asarray(mask, dtype=bool), w)
        return bs

    @classmethod
    def from_indices(cls, indices, p: int, w: int = 64) -> "BlockedBitset":
        bs = cls(p, w)
        bs.insert_many(indices)
        return bs

    def _check(self, i):
        if not 1 <= i <= self.p:
            raise CoordinateRangeError(f"slot {i} outside [1, {self.p}]")

    def insert(self, i: int) -> None:
        self._check(i)
        b, pb = (i - 1) >> self._shift, (i - 1) & (self.w - 1)
        self.blocks[b] |= self.blocks.dtype.type(1 << pb)

    def insert_many(self, indices) -> None:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0:
            return
        if idx.min() < 1 or idx.max() > self.p:
            raise CoordinateRangeError(f"slot indices outside [1, {self.p}]")
        mask = np.zeros(self.p, dtype=bool)
        mask[idx - 1] = True
        self.blocks |= _pack_mask(mask, self.w)

    def __contains__(self, i) -> bool:
        if not 1 <= i <= self.p:
            return False
        b, pb = (i - 1) >> self._shift, (i - 1) & (self.w - 1)
        return bool((int(self.blocks[b]) >> pb) & 1)

    def __len__(self):
        return int(sum(int(x).bit_count() for x in self.blocks[self.blocks != 0]))

    def iterate(self) -> list[int]:
        """Set slots in increasing order; empty words are skipped by one test each."""
        out: list[int] = []
        _words_to_slots(self.blocks, self.w, np.flatnonzero(self.blocks).tolist(), out)
        return out

    def __iter__(self):
        return iter(self.iterate())

    @property
    def word_count(self) -> int:
        return len(self.blocks)


def tree_level_sizes(p: int, w: int) -> list[int]:
    """Word counts per level, leaves first, up to a single root word."""
    _check_width(w)
    sizes = [-(-p // w)]
    while sizes[-1] > 1:
        sizes.append(-(-sizes[-1] // w))
    return sizes


def closed_form_height(p: int, w: int) -> int:
    """Levels above the leaves from ``h = log_w((w - 1) * p + w) - 2``, rounded up.

    Evaluated in integers: the smallest ``h`` with ``w**(h + 2) >= (w - 1) * p + w``.
    Agrees with the built tree whenever ``p`` is a power of ``w``.
    """
    target = (w - 1) * p + w
    k, power = 0, 1
    while power < target:
        power *= w
        k += 1
    return max(k - 2, 0)


def closed_form_word_count(h: int, w: int) -> int:
    """Words in a full ``w``-ary tree with ``h`` levels above its leaves."""
    return (w ** (h + 1) - 1) // (w - 1)


class WAryOccupancyTree:
    """``w``-ary summary tree over a blocked bit array.

    ``levels[0]`` holds the leaf words; ``levels[-1]`` is the single root word.
    """

    def __init__(self, p: int, w: int = 64):
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        self._shift = _check_width(w)
        self.p = p
        self.w = w
        self.levels = [np.zeros(n, dtype=WORD_DTYPES[w]) for n in tree_level_sizes(p, w)]

    @classmethod
    def from_mask(cls, mask: np.ndarray, w: int = 64) -> "WAryOccupancyTree":
        tree = cls(len(mask), w)
        level = _pack_mask(np.asarray(mask, dtype=bool), w)
        for k in range(len(tree.levels)):
            tree.levels[k] = level
            level = _pack_mask(level != 0, w)
        return tree

    @classmethod
    def from_indices(cls, indices, p: int, w: int = 64) -> "WAryOccupancyTree":
        tree = cls(p, w)
        tree.insert_many(indices)
        return tree

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def word_count(self) -> int:
        return sum(len(level) for level in self.levels)

    def insert(self, i: int) -> None:
        """Set slot ``i`` and its summary bit on every level: ``h + 1`` steps."""
        if not 1 <= i <= self.p:
            raise CoordinateRangeError(f"slot {i} outside [1, {self.p}]")
        idx = i - 1
        for level in self.levels:
            word, pos = idx >> self._shift, idx & (self.w - 1)
            level[word] |= level.dtype.type(1 << pos)
            idx = word

    def insert_many(self, indices) -> None:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0:
            return
        if idx.min() < 1 or idx.max() > self.p:
            raise CoordinateRangeError(f"slot indices outside [1, {self.p}]")
        mask = np.zeros(self.p, dtype=bool)
        mask[idx - 1] = True
        for level in self.levels:
            level |= _pack_mask(mask, self.w)
            mask = level != 0

    def __contains__(self, i) -> bool:
        if not 1 <= i <= self.p:
            return False
        idx = i - 1
        return bool((int(self.levels[0][idx >> self._shift]) >> (idx & (self.w - 1))) & 1)

    def __len__(self):
        return len(self.iterate())

    def iterate(self) -> list[int]:
        """Set slots in increasing order, skipping empty subtrees."""
        out: list[int] = []
        w = self.w
        levels = self.levels

        def descend(k: int, word_index: int):
            x = int(levels[k][word_index])
            base = word_index * w
            if k == 0:
                base += 1
                while x:
                    low = x & -x
                    out.append(base + low.bit_length() - 1)
                    x ^= low
                return
            while x:
                low = x & -x
                descend(k - 1, base + low.bit_length() - 1)
                x ^= low

        descend(len(levels) - 1, 0)
        return out

    def __iter__(self):
        return iter(self.iterate())


def make_occupancy(mask: np.ndarray, kind: str = "array", w: int = 64):
    """Build an occupancy index of the requested ``kind`` ("array" or "tree")."""
    if kind == "array":
        return BlockedBitset.from_mask(mask, w)
    if kind == "tree":
        return WAryOccupancyTree.from_mask(mask, w)
    raise ValueError(f"unknown occupancy kind {kind!r}")
