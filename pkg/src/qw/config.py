"""Runtime limits and backend selection, overridable via environment variables."""

import os

DEFAULT_MAX_ENUM = 1 << 20  # cap on 2**(n**k) relation scans
DEFAULT_MAX_UNIVERSE = 8


def max_universe() -> int:
    raw = os.environ.get("QW_MAX_UNIVERSE")
    if raw is None:
        return DEFAULT_MAX_UNIVERSE
    value = int(raw)
    if value < 1:
        raise ValueError("QW_MAX_UNIVERSE must be positive")
    return value


def backend_name() -> str:
    """Selected kernel backend: 'numba' when available, else 'numpy'.

    Override with QW_BACKEND=numpy|numba.
    """
    raw = os.environ.get("QW_BACKEND", "").strip().lower()
    if raw in ("numpy", "numba"):
        return raw
    if raw:
        raise ValueError(f"unknown QW_BACKEND {raw!r} (expected 'numpy' or 'numba')")
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"
