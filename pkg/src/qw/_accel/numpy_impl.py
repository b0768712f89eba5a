"""Pure-numpy implementations of the hot mask kernels.

All masks are int64 bitmasks over at most 63 cells; callers guard the width.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 14


def _as_masks(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.int64)


def apply_index_perm(masks, remap) -> np.ndarray:
    """Permute the bit positions of each mask: bit j moves to remap[j]."""
    masks = _as_masks(masks)
    remap = np.asarray(remap, dtype=np.int64)
    out = np.zeros_like(masks)
    for j in range(remap.shape[0]):
        out |= ((masks >> j) & 1) << remap[j]
    return out


def isin_sorted(values, sorted_ref) -> np.ndarray:
    values = _as_masks(values)
    sorted_ref = _as_masks(sorted_ref)
    if sorted_ref.size == 0:
        return np.zeros(values.shape, dtype=bool)
    pos = np.searchsorted(sorted_ref, values)
    pos[pos == sorted_ref.size] = sorted_ref.size - 1
    return sorted_ref[pos] == values


def all_members_sorted(values, sorted_ref) -> bool:
    return bool(isin_sorted(values, sorted_ref).all())


def covered_any(masks, covers) -> np.ndarray:
    """For each mask, whether some cover contains it (mask & ~cover == 0)."""
    masks = _as_masks(masks)
    covers = _as_masks(covers)
    out = np.zeros(masks.shape, dtype=bool)
    if covers.size == 0:
        return out
    for lo in range(0, masks.shape[0], _CHUNK):
        chunk = masks[lo : lo + _CHUNK]
        out[lo : lo + _CHUNK] = ((chunk[:, None] & ~covers[None, :]) == 0).any(axis=1)
    return out


def all_covered(xs, ys) -> bool:
    return bool(covered_any(xs, ys).all())


def uncovered_witness(xs, ys) -> int:
    """Index of the first x not contained in any y, or -1."""
    bad = np.flatnonzero(~covered_any(xs, ys))
    return int(bad[0]) if bad.size else -1


def cover_table(num_bits: int, covers) -> np.ndarray:
    """Membership table over all 2**num_bits masks: covered by some cover."""
    return covered_any(np.arange(1 << num_bits, dtype=np.int64), covers)


def table_preserved(table, remap) -> bool:
    """Whether table[perm(m)] == table[m] for the bit permutation remap."""
    table = np.asarray(table, dtype=bool)
    permuted = apply_index_perm(np.arange(table.shape[0], dtype=np.int64), remap)
    return bool((table[permuted] == table).all())


def flip_invariant(table, bit: int) -> bool:
    """Whether table[m] == table[m ^ (1 << bit)] for all m."""
    table = np.asarray(table, dtype=bool)
    view = table.reshape(-1, 2, 1 << bit)
    return bool((view[:, 0, :] == view[:, 1, :]).all())
