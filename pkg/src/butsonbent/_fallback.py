"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same results: the covering sweep accumulates distances in
coordinate order exactly like the compiled loop, so even non-integral weight
tables give bit-identical answers.
"""

import numpy as np

CHUNK = 1 << 15


def _digits(idx: np.ndarray, q: int, width: int) -> np.ndarray:
    # most significant digit first
    out = np.empty((idx.size, width), dtype=np.int64)
    rest = idx.copy()
    for j in range(width - 1, -1, -1):
        out[:, j] = rest % q
        rest //= q
    return out


def covering_sweep(words, q, w, fix_first, lo=0, hi=-1):
    words = np.asarray(words, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    m, n = words.shape
    if m == 0:
        raise ValueError("empty code")
    if hi < 0 or hi > q:
        hi = q
    if n == 0:
        return 0.0
    start = 1 if fix_first else 0
    if start >= n:
        return float(w[(-words[:, 0]) % q].min())
    if lo >= hi:
        return -1.0
    # T[i, v, c] = w[(v - c_i) mod q]
    T = w[(np.arange(q)[None, :, None] - words.T[:, None, :]) % q]
    width = n - start
    tail = q ** (width - 1)
    best = -1.0
    total = (hi - lo) * tail
    for a in range(0, total, CHUNK):
        idx = np.arange(a, min(a + CHUNK, total), dtype=np.int64)
        X = _digits(idx % tail, q, width - 1) if width > 1 else np.zeros((idx.size, 0), np.int64)
        first = lo + idx // tail
        dist = np.zeros((idx.size, m))
        if fix_first:
            dist = dist + T[0, 0][None, :]
        dist = dist + T[start][first]
        for j in range(width - 1):
            dist = dist + T[start + 1 + j][X[:, j]]
        best = max(best, float(dist.min(axis=1).max()))
    return best


def bent_sweep(L, q, k, red, lo=0, hi=-1):
    L = np.asarray(L, dtype=np.int64)
    red = np.asarray(red, dtype=np.int64)
    n = L.shape[0]
    if hi < 0 or hi > q:
        hi = q
    if n == 0 or lo >= hi:
        return np.zeros((0, n), dtype=np.int32)
    tail = q ** (n - 1)
    total = (hi - lo) * tail
    found = []
    rq = np.arange(q)
    for a in range(0, total, CHUNK):
        idx = np.arange(a, min(a + CHUNK, total), dtype=np.int64)
        X = np.empty((idx.size, n), dtype=np.int64)
        X[:, 0] = lo + idx // tail
        if n > 1:
            X[:, 1:] = _digits(idx % tail, q, n - 1)
        E = (L[None, :, :] + X[:, None, :]) % q
        counts = np.stack([(E == r).sum(axis=2) for r in range(q)], axis=2)
        shift = (rq[None, None, :] + k * X[:, :, None]) % q
        shifted = np.take_along_axis(counts, shift, axis=2)
        canon = shifted @ red
        ok = (canon == canon[:, :1, :]).all(axis=(1, 2))
        if ok.any():
            found.append(X[ok])
    if not found:
        return np.zeros((0, n), dtype=np.int32)
    return np.vstack(found).astype(np.int32)
