"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``BUTSONBENT_PURE`` is set to a non-empty value, the
numpy fallback is used.  ``get_backend(name)`` returns a specific backend for
tests and benchmarks.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from types import ModuleType

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and not os.environ.get("BUTSONBENT_PURE"):
    BACKEND = "compiled"
else:
    BACKEND = "python"


def get_backend(name: str | None = None) -> ModuleType:
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def _ranges(q: int, threads: int) -> list[tuple[int, int]]:
    parts = max(1, min(threads, q))
    cuts = [round(i * q / parts) for i in range(parts + 1)]
    return [(a, b) for a, b in zip(cuts, cuts[1:]) if a < b]


def covering_sweep(words, q, w, fix_first, *, threads=1, backend=None):
    mod = get_backend(backend)
    words = np.ascontiguousarray(words, dtype=np.int32)
    w = np.ascontiguousarray(w, dtype=np.float64)
    ranges = _ranges(q, threads)
    if len(ranges) == 1:
        return mod.covering_sweep(words, q, w, fix_first)
    with ThreadPoolExecutor(len(ranges)) as ex:
        parts = ex.map(lambda r: mod.covering_sweep(words, q, w, fix_first, r[0], r[1]), ranges)
        return max(parts)


def bent_sweep(L, q, k, red, *, threads=1, backend=None):
    mod = get_backend(backend)
    L = np.ascontiguousarray(L, dtype=np.int32)
    red = np.ascontiguousarray(red, dtype=np.int64)
    ranges = _ranges(q, threads)
    if len(ranges) == 1:
        return mod.bent_sweep(L, q, k, red)
    with ThreadPoolExecutor(len(ranges)) as ex:
        parts = list(ex.map(lambda r: mod.bent_sweep(L, q, k, red, r[0], r[1]), ranges))
    # ranges are ordered on x_0, so concatenation keeps lexicographic order
    return np.vstack(parts)
