# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Howell normal form over Z/m on a flat C buffer (requires m < 2**31)."""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64


cdef inline i64 _mod(i64 x, i64 m) nogil:
    x %= m
    return x + m if x < 0 else x


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _egcd(i64 a, i64 b, i64* g, i64* s, i64* t) nogil:
    cdef i64 old_r = a, r = b, old_s = 1, s_ = 0, old_t = 0, t_ = 1, q, tmp
    while r:
        q = old_r // r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s_
        old_s = s_
        s_ = tmp
        tmp = old_t - q * t_
        old_t = t_
        t_ = tmp
    g[0] = old_r
    s[0] = old_s
    t[0] = old_t


cdef i64 _inverse(i64 a, i64 m) nogil:
    cdef i64 g, s, t
    _egcd(_mod(a, m), m, &g, &s, &t)
    return _mod(s, m)


cdef i64 _unit_normalizer(i64 a, i64 m) nogil:
    cdef i64 g = _gcd(a, m)
    cdef i64 mg = m // g
    cdef i64 u
    if mg == 1:
        return 1
    u = _inverse(a // g, mg)
    while _gcd(u, m) != 1:
        u += mg
    return u % m


def howell_form(rows, int ncols, long long m):
    """Same contract as the pure-Python ``howell_form``."""
    if m >= (1LL << 31):
        raise OverflowError("compiled Howell kernel needs m < 2**31")
    cdef object pm = m
    cdef list src = []
    for row in rows:
        vals = [int(x) % pm for x in row]
        if any(vals):
            src.append(vals)
    cdef int n0 = len(src)
    cdef int cap = n0 + ncols + 1
    cdef i64* A = <i64*> malloc(sizeof(i64) * cap * (ncols if ncols > 0 else 1))
    cdef i64* tmp = <i64*> malloc(sizeof(i64) * (ncols if ncols > 0 else 1))
    cdef int* pivots = <int*> malloc(sizeof(int) * (ncols if ncols > 0 else 1))
    if A == NULL or tmp == NULL or pivots == NULL:
        free(A); free(tmp); free(pivots)
        raise MemoryError()
    cdef int i, j, k, c, r = 0, n = n0, piv, npiv = 0
    cdef i64 a, b, g, s, t, u, v, x, y, unit, f, p, q
    cdef bint nz
    try:
        for i in range(n0):
            row = src[i]
            for k in range(ncols):
                A[i * ncols + k] = <i64> row[k]
        with nogil:
            for c in range(ncols):
                piv = -1
                for i in range(r, n):
                    if A[i * ncols + c]:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    memcpy(tmp, &A[r * ncols], sizeof(i64) * ncols)
                    memcpy(&A[r * ncols], &A[piv * ncols], sizeof(i64) * ncols)
                    memcpy(&A[piv * ncols], tmp, sizeof(i64) * ncols)
                for i in range(r + 1, n):
                    b = A[i * ncols + c]
                    if not b:
                        continue
                    a = A[r * ncols + c]
                    _egcd(a, b, &g, &s, &t)
                    s = _mod(s, m)
                    t = _mod(t, m)
                    u = b // g
                    v = a // g
                    for k in range(c, ncols):
                        x = A[r * ncols + k]
                        y = A[i * ncols + k]
                        A[r * ncols + k] = (s * x + t * y) % m
                        A[i * ncols + k] = _mod(v * y - u * x, m)
                unit = _unit_normalizer(A[r * ncols + c], m)
                if unit != 1:
                    for k in range(c, ncols):
                        A[r * ncols + k] = A[r * ncols + k] * unit % m
                f = m // A[r * ncols + c]
                if f != m:
                    nz = False
                    for k in range(ncols):
                        A[n * ncols + k] = A[r * ncols + k] * f % m
                        if A[n * ncols + k]:
                            nz = True
                    if nz:
                        n += 1
                pivots[npiv] = c
                npiv += 1
                r += 1
            for i in range(npiv):
                c = pivots[i]
                p = A[i * ncols + c]
                for j in range(i):
                    q = A[j * ncols + c] // p
                    if q:
                        for k in range(c, ncols):
                            A[j * ncols + k] = _mod(A[j * ncols + k] - q * A[i * ncols + k], m)
        return [[A[i * ncols + k] for k in range(ncols)] for i in range(r)]
    finally:
        free(A)
        free(tmp)
        free(pivots)
