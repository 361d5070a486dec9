"""Window-scanning kernel with backend selection.

The compiled extension ``grasscycle._windows`` is used when importable; the
pure-Python ``_windows_py`` is the fallback.  Set ``GRASSCYCLE_PURE_PYTHON=1``
to force the fallback.  Both return identical results (see tests).
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _windows_py

try:
    if os.environ.get("GRASSCYCLE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from . import _windows as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

MAXK, MAXN = 16, 40


def fits_compiled(q: int, n: int, k: int) -> bool:
    """Compiled keys are signed 64-bit: (q^n)^k must stay below 2^63."""
    return k <= MAXK and n <= MAXN and (q**n) ** k < (1 << 63)


def _impl(q: int, n: int, k: int, backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled backend not available")
        if fits_compiled(q, n, k):
            return _compiled
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _windows_py


def as_int64(values: Sequence[int]) -> array:
    return values if isinstance(values, array) and values.typecode == "q" else array("q", values)


def first_window_failure(codes: Sequence[int], reps: Sequence[int], group_order: int,
                         length: int, q: int, n: int, k: int,
                         backend: str | None = None) -> int:
    """Build betas from ``reps`` and return the first bad window index, or -1."""
    impl = _impl(q, n, k, backend)
    if impl is _windows_py:
        return impl.first_window_failure(codes, reps, group_order, length, q, n, k)
    return impl.first_window_failure(as_int64(codes), as_int64(reps), group_order, length, q, n, k)


def window_keys(codes: Sequence[int], betas: Sequence[int], q: int, n: int, k: int,
                backend: str | None = None) -> list[int]:
    impl = _impl(q, n, k, backend)
    if impl is _windows_py:
        return impl.window_keys(codes, betas, q, n, k)
    return impl.window_keys(as_int64(codes), as_int64(betas), q, n, k)
