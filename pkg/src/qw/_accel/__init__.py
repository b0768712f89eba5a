"""Hot mask kernels with two interchangeable backends.

The numba backend jit-compiles the inner loops; the numpy backend is a
vectorized fallback with identical semantics.  Selection order: an explicit
use_backend() override, else QW_BACKEND, else numba when importable.
"""

from __future__ import annotations

import importlib
from contextlib import contextmanager

from .. import config

_MODULES = {"numpy": "qw._accel.numpy_impl", "numba": "qw._accel.numba_impl"}
_loaded: dict = {}
_override: list[str] = []


def get_impl(name: str | None = None):
    if name is None:
        name = _override[-1] if _override else config.backend_name()
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}")
    if name not in _loaded:
        _loaded[name] = importlib.import_module(_MODULES[name])
    return _loaded[name]


def active_backend() -> str:
    return _override[-1] if _override else config.backend_name()


@contextmanager
def use_backend(name: str):
    """Force a backend within the context (tests and benchmarks)."""
    get_impl(name)
    _override.append(name)
    try:
        yield
    finally:
        _override.pop()


def apply_index_perm(masks, remap):
    return get_impl().apply_index_perm(masks, remap)


def isin_sorted(values, sorted_ref):
    return get_impl().isin_sorted(values, sorted_ref)


def all_members_sorted(values, sorted_ref) -> bool:
    return get_impl().all_members_sorted(values, sorted_ref)


def covered_any(masks, covers):
    return get_impl().covered_any(masks, covers)


def all_covered(xs, ys) -> bool:
    return get_impl().all_covered(xs, ys)


def uncovered_witness(xs, ys) -> int:
    return get_impl().uncovered_witness(xs, ys)


def cover_table(num_bits: int, covers):
    return get_impl().cover_table(num_bits, covers)


def table_preserved(table, remap) -> bool:
    return get_impl().table_preserved(table, remap)


def flip_invariant(table, bit: int) -> bool:
    return get_impl().flip_invariant(table, bit)


def warmup() -> None:
    """Trigger jit compilation of every kernel on tiny inputs."""
    impl = get_impl()
    impl.apply_index_perm([1], [0])
    impl.isin_sorted([0], [0])
    impl.all_members_sorted([0], [0])
    impl.covered_any([1], [1])
    impl.all_covered([1], [1])
    impl.uncovered_witness([1], [1])
    impl.cover_table(1, [1])
    impl.table_preserved([False, True], [0])
    impl.flip_invariant([False, False], 0)
