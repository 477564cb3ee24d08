# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the covering-radius sweep and the exhaustive
bent-sequence enumeration.  ``_fallback.py`` mirrors every function here."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef double _sweep(const double *T, double *S, int *x, Py_ssize_t n,
                   Py_ssize_t m, int q, Py_ssize_t start,
                   int lo, int hi) noexcept nogil:
    # coordinate `start` ranges over [lo, hi), later ones over Z_q; the last
    # coordinate is the leaf loop.  S[d*m + c] holds the partial sum of
    # coordinates < d, accumulated in index order.
    cdef Py_ssize_t d, c, leaf = n - 1
    cdef int v, vlo, vhi
    cdef double best = -1.0, val, s
    cdef bint dominated
    for d in range(start, n):
        x[d] = 0
    x[start] = lo
    d = start
    while True:
        while d < leaf:
            for c in range(m):
                S[(d + 1) * m + c] = S[d * m + c] + T[(d * q + x[d]) * m + c]
            d += 1
        if leaf == start:
            vlo = lo
            vhi = hi
        else:
            vlo = 0
            vhi = q
        for v in range(vlo, vhi):
            val = 1e300
            dominated = False
            for c in range(m):
                s = S[leaf * m + c] + T[(leaf * q + v) * m + c]
                if s <= best:
                    # x cannot raise the running maximum
                    dominated = True
                    break
                if s < val:
                    val = s
            if not dominated and val > best:
                best = val
        if leaf == start:
            return best
        d = leaf - 1
        while True:
            x[d] += 1
            if d == start:
                if x[d] < hi:
                    break
                return best
            if x[d] < q:
                break
            x[d] = 0
            d -= 1


def covering_sweep(const int[:, ::1] words, int q, const double[::1] w,
                   bint fix_first, int lo=0, int hi=-1):
    """max over x in Z_q^n of min over words of sum_i w[(x_i - c_i) mod q].

    With ``fix_first`` only x_0 = 0 is swept.  ``[lo, hi)`` restricts the
    first swept coordinate so callers can split the work into chunks.
    Returns -1.0 for an empty chunk.
    """
    cdef Py_ssize_t m = words.shape[0]
    cdef Py_ssize_t n = words.shape[1]
    cdef Py_ssize_t start = 1 if fix_first else 0
    cdef Py_ssize_t i, c, v
    cdef double best
    if m == 0:
        raise ValueError("empty code")
    if hi < 0 or hi > q:
        hi = q
    if n == 0:
        return 0.0
    if start >= n:
        best = 1e300
        for c in range(m):
            if w[(q - words[c, 0]) % q] < best:
                best = w[(q - words[c, 0]) % q]
        return best
    if lo >= hi:
        return -1.0
    cdef double *T = <double *> malloc(n * q * m * sizeof(double))
    cdef double *S = <double *> malloc((n + 1) * m * sizeof(double))
    cdef int *x = <int *> malloc(n * sizeof(int))
    if T == NULL or S == NULL or x == NULL:
        free(T); free(S); free(x)
        raise MemoryError()
    try:
        for i in range(n):
            for v in range(q):
                for c in range(m):
                    T[(i * q + v) * m + c] = w[(v - words[c, i] + q) % q]
        for c in range(m):
            S[c] = 0.0
            if fix_first:
                S[m + c] = S[c] + T[c]
        with nogil:
            best = _sweep(T, S, x, n, m, q, start, lo, hi)
    finally:
        free(T); free(S); free(x)
    return best


def bent_sweep(const int[:, ::1] L, int q, int k, const long long[:, ::1] red,
               int lo=0, int hi=-1):
    """All x in Z_q^n with sum_j zeta^(L[i,j] + x_j) = lam * zeta^(k x_i) for a
    common lam in Z[zeta_q].

    Rows are compared through their canonical forms (group-ring counts shifted
    by -k x_i, times the reduction matrix ``red``), so the test is exact.
    Returns an (s, n) int32 array in lexicographic order, x_0 most
    significant; ``[lo, hi)`` restricts x_0.
    """
    cdef Py_ssize_t n = L.shape[0]
    cdef Py_ssize_t deg = red.shape[1]
    cdef Py_ssize_t i, j, r, s, d
    cdef long long acc
    cdef bint ok
    if hi < 0 or hi > q:
        hi = q
    out = []
    if n == 0 or lo >= hi:
        return np.zeros((0, n), dtype=np.int32)
    cdef long long *cnt = <long long *> malloc(n * q * sizeof(long long))
    cdef long long *ref = <long long *> malloc(deg * sizeof(long long))
    cdef int *x = <int *> malloc(n * sizeof(int))
    if cnt == NULL or ref == NULL or x == NULL:
        free(cnt); free(ref); free(x)
        raise MemoryError()
    try:
        for i in range(n):
            x[i] = 0
            for r in range(q):
                cnt[i * q + r] = 0
        x[0] = lo
        for i in range(n):
            for j in range(n):
                cnt[i * q + (L[i, j] + x[j]) % q] += 1
        while True:
            for s in range(deg):
                acc = 0
                for r in range(q):
                    acc += cnt[(r + k * x[0]) % q] * red[r, s]
                ref[s] = acc
            ok = True
            for i in range(1, n):
                for s in range(deg):
                    acc = 0
                    for r in range(q):
                        acc += cnt[i * q + (r + k * x[i]) % q] * red[r, s]
                    if acc != ref[s]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append([x[j] for j in range(n)])
            # odometer with x_{n-1} fastest; counts updated column by column
            d = n - 1
            while True:
                for i in range(n):
                    cnt[i * q + (L[i, d] + x[d]) % q] -= 1
                x[d] += 1
                if d == 0:
                    if x[0] >= hi:
                        d = -1
                        break
                elif x[d] == q:
                    x[d] = 0
                for i in range(n):
                    cnt[i * q + (L[i, d] + x[d]) % q] += 1
                if x[d] != 0 or d == 0:
                    break
                d -= 1
            if d < 0:
                break
    finally:
        free(cnt); free(ref); free(x)
    if not out:
        return np.zeros((0, n), dtype=np.int32)
    return np.asarray(out, dtype=np.int32)
