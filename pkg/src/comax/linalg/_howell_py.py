"""Howell normal form over Z/m, pure-Python kernel.

The compiled twin in ``_howell.pyx`` implements the same algorithm on C
integers; both must produce identical output.
"""
from __future__ import annotations


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _unit_normalizer(a, m):
    g = _gcd(a, m)
    mg = m // g
    if mg == 1:
        return 1
    u = pow(a // g, -1, mg)
    while _gcd(u, m) != 1:
        u += mg
    return u % m


def howell_form(rows, ncols: int, m: int) -> list[list[int]]:
    """Row-echelon form of the Z/m-span of ``rows`` with the Howell property.

    Output rows have strictly increasing pivot columns, each pivot is a
    divisor of ``m``, entries above a pivot are reduced below it, and the
    rows whose leading columns are >= c span every vector of the row space
    that vanishes left of c.  The form is unique for the row space.
    """
    A = [[x % m for x in r] for r in rows]
    A = [r for r in A if any(r)]
    r = 0
    pivots = []
    for c in range(ncols):
        piv = -1
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        A[r], A[piv] = A[piv], A[r]
        top = A[r]
        for i in range(r + 1, len(A)):
            row = A[i]
            b = row[c]
            if not b:
                continue
            a = top[c]
            g, s, t = _egcd(a, b)
            u, v = b // g, a // g
            for k in range(c, ncols):
                x, y = top[k], row[k]
                top[k] = (s * x + t * y) % m
                row[k] = (v * y - u * x) % m
        unit = _unit_normalizer(top[c], m)
        if unit != 1:
            for k in range(c, ncols):
                top[k] = top[k] * unit % m
        f = m // top[c]
        if f != m:
            sat = [x * f % m for x in top]
            if any(sat):
                A.append(sat)
        pivots.append(c)
        r += 1
    out = A[:r]
    for i, c in enumerate(pivots):
        p = out[i][c]
        for j in range(i):
            q = out[j][c] // p
            if q:
                rj, ri = out[j], out[i]
                for k in range(c, ncols):
                    rj[k] = (rj[k] - q * ri[k]) % m
    return out
