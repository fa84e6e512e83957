# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled short-vector scan: same scaled-integer recursion as _shortvec,
on 64-bit C integers.  Callers must preflight the magnitude bound."""

from libc.stdlib cimport calloc, free
from libc.math cimport sqrt


cdef inline long long _isqrt(long long r) nogil:
    cdef long long s
    if r < 0:
        return -1
    s = <long long> sqrt(<double> r)
    while s > 0 and s * s > r:
        s -= 1
    while (s + 1) * (s + 1) <= r:
        s += 1
    return s


cdef inline long long _floordiv(long long a, long long b) nogil:
    # b > 0; round toward minus infinity like Python's //
    cdef long long q = a / b
    if a % b != 0 and (a < 0) != (b < 0):
        q -= 1
    return q


def count_by_norm(list lm, list m, list ehat, long long lam,
                  long long norm_max, int rank):
    """Counts of vectors at each norm 0..norm_max; mirrors the pure scan."""
    cdef long long *clm
    cdef long long *cm
    cdef long long *cehat
    cdef long long *xs
    cdef long long *chat
    cdef long long *budget
    cdef long long *xhi
    cdef long long *counts
    cdef long long budget0, s, t, rem, lo, hi, acc
    cdef int i, j, n
    cdef list out

    n = rank
    if norm_max < 0:
        return [0] * 0
    out = [0] * (norm_max + 1)
    if n == 0:
        out[0] = 1
        return out

    clm = <long long *> calloc(n * n, sizeof(long long))
    cm = <long long *> calloc(n, sizeof(long long))
    cehat = <long long *> calloc(n, sizeof(long long))
    xs = <long long *> calloc(n, sizeof(long long))
    chat = <long long *> calloc(n, sizeof(long long))
    budget = <long long *> calloc(n, sizeof(long long))
    xhi = <long long *> calloc(n, sizeof(long long))
    counts = <long long *> calloc(norm_max + 1, sizeof(long long))
    if (clm == NULL or cm == NULL or cehat == NULL or xs == NULL or
            chat == NULL or budget == NULL or xhi == NULL or counts == NULL):
        free(clm); free(cm); free(cehat); free(xs)
        free(chat); free(budget); free(xhi); free(counts)
        raise MemoryError()

    for i in range(n):
        cm[i] = m[i]
        cehat[i] = ehat[i]
        row = lm[i]
        for j in range(n):
            clm[i * n + j] = row[j]

    budget0 = lam * norm_max

    with nogil:
        i = n - 1
        budget[i] = budget0
        chat[i] = 0
        s = _isqrt(budget[i] / cehat[i])
        xs[i] = -_floordiv(s + chat[i], cm[i]) - 1   # one below lo
        xhi[i] = _floordiv(s - chat[i], cm[i])
        while True:
            xs[i] += 1
            if xs[i] > xhi[i]:
                i += 1
                if i >= n:
                    break
                continue
            t = cm[i] * xs[i] + chat[i]
            rem = budget[i] - cehat[i] * t * t
            if i == 0:
                counts[(budget0 - rem) / lam] += 1
            else:
                i -= 1
                budget[i] = rem
                acc = 0
                for j in range(i + 1, n):
                    acc += clm[i * n + j] * xs[j]
                chat[i] = acc
                s = _isqrt(budget[i] / cehat[i])
                xs[i] = -_floordiv(s + chat[i], cm[i]) - 1
                xhi[i] = _floordiv(s - chat[i], cm[i])

    for i in range(norm_max + 1):
        out[i] = counts[i]
    free(clm); free(cm); free(cehat); free(xs)
    free(chat); free(budget); free(xhi); free(counts)
    return out
