"""Numba-jitted implementations of the hot mask kernels.

Mirrors numpy_impl function for function; loops early-exit where the numpy
twin cannot.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def _as_masks(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.int64)


@njit(cache=True)
def _apply_index_perm(masks, remap):
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        acc = 0
        j = 0
        while m:
            if m & 1:
                acc |= 1 << remap[j]
            m >>= 1
            j += 1
        out[i] = acc
    return out


def apply_index_perm(masks, remap):
    return _apply_index_perm(_as_masks(masks), _as_masks(remap))


@njit(cache=True)
def _bsearch(sorted_ref, value):
    lo, hi = 0, sorted_ref.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_ref[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo < sorted_ref.shape[0] and sorted_ref[lo] == value


@njit(cache=True)
def _isin_sorted(values, sorted_ref):
    out = np.zeros(values.shape[0], dtype=np.bool_)
    for i in range(values.shape[0]):
        out[i] = _bsearch(sorted_ref, values[i])
    return out


def isin_sorted(values, sorted_ref):
    return _isin_sorted(_as_masks(values), _as_masks(sorted_ref))


@njit(cache=True)
def _all_members_sorted(values, sorted_ref):
    for i in range(values.shape[0]):
        if not _bsearch(sorted_ref, values[i]):
            return False
    return True


def all_members_sorted(values, sorted_ref) -> bool:
    return bool(_all_members_sorted(_as_masks(values), _as_masks(sorted_ref)))


@njit(cache=True)
def _covered_any(masks, covers):
    out = np.zeros(masks.shape[0], dtype=np.bool_)
    for i in range(masks.shape[0]):
        m = masks[i]
        for j in range(covers.shape[0]):
            if m & ~covers[j] == 0:
                out[i] = True
                break
    return out


def covered_any(masks, covers):
    return _covered_any(_as_masks(masks), _as_masks(covers))


@njit(cache=True)
def _uncovered_witness(xs, ys):
    for i in range(xs.shape[0]):
        hit = False
        for j in range(ys.shape[0]):
            if xs[i] & ~ys[j] == 0:
                hit = True
                break
        if not hit:
            return i
    return -1


def all_covered(xs, ys) -> bool:
    return _uncovered_witness(_as_masks(xs), _as_masks(ys)) == -1


def uncovered_witness(xs, ys) -> int:
    return int(_uncovered_witness(_as_masks(xs), _as_masks(ys)))


@njit(cache=True)
def _cover_table(num_bits, covers):
    size = 1 << num_bits
    out = np.zeros(size, dtype=np.bool_)
    for m in range(size):
        for j in range(covers.shape[0]):
            if m & ~covers[j] == 0:
                out[m] = True
                break
    return out


def cover_table(num_bits: int, covers):
    return _cover_table(num_bits, _as_masks(covers))


@njit(cache=True)
def _table_preserved(table, remap):
    for m in range(table.shape[0]):
        acc = 0
        mm = m
        j = 0
        while mm:
            if mm & 1:
                acc |= 1 << remap[j]
            mm >>= 1
            j += 1
        if table[acc] != table[m]:
            return False
    return True


def table_preserved(table, remap) -> bool:
    return bool(_table_preserved(np.ascontiguousarray(table, dtype=np.bool_), _as_masks(remap)))


@njit(cache=True)
def _flip_invariant(table, bit):
    step = 1 << bit
    for m in range(table.shape[0]):
        if m & step and table[m] != table[m ^ step]:
            return False
    return True


def flip_invariant(table, bit: int) -> bool:
    return bool(_flip_invariant(np.ascontiguousarray(table, dtype=np.bool_), bit))
