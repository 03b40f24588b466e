"""Exact linear algebra over the scalar rings Z, Z/m and F_p[x].

Row vectors are tuples; a *lattice* is a list of row tuples in canonical
echelon form (Hermite over the Euclidean domains, Howell over Z/m), so two
lattices are equal iff their echelon lists are equal.

The Howell kernel has a compiled implementation; ``COMAX_PURE_PYTHON=1``
forces the pure-Python one.
"""
from __future__ import annotations

import os
from typing import Sequence

from .. import arith
from ..errors import UnsupportedRing, VerificationError
from ..polys import Poly, gcdex as poly_gcdex
from ._howell_py import howell_form as howell_form_py

howell_form_ext = None
if not os.environ.get("COMAX_PURE_PYTHON"):
    try:
        from ._howell import howell_form as howell_form_ext
    except ImportError:
        howell_form_ext = None

HAVE_EXTENSION = howell_form_ext is not None
_EXT_LIMIT = 1 << 31


def howell_form(rows, ncols: int, m: int) -> list[list[int]]:
    if howell_form_ext is not None and m < _EXT_LIMIT:
        return howell_form_ext(rows, ncols, m)
    return howell_form_py(rows, ncols, m)


# ---------------------------------------------------------------------------
# Euclidean domains

class IntegerDomain:
    key = ("Z",)
    zero = 0
    one = 1

    def is_zero(self, a):
        return a == 0

    def norm(self, a):
        return a

    def gcdex(self, a, b):
        return arith.egcd(a, b)

    def quo(self, a, b):
        return a // b

    def canon_unit(self, a):
        return -1 if a < 0 else 1

    def size(self, a):
        return abs(a)

    def divides(self, a, b):
        return b == 0 if a == 0 else b % a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def canon(self, a):
        return abs(a)


class PolyDomain:
    def __init__(self, p: int):
        self.p = p
        self.key = ("Fpx", p)
        self.zero = Poly.zero(p)
        self.one = Poly.one(p)

    def is_zero(self, a):
        return not a

    def norm(self, a):
        return a

    def gcdex(self, a, b):
        return poly_gcdex(a, b)

    def quo(self, a, b):
        return a // b

    def canon_unit(self, a):
        if not a:
            return self.one
        return Poly._raw((pow(a.lc, -1, self.p),), self.p)

    def size(self, a):
        return a.degree

    def divides(self, a, b):
        return not b if not a else not (b % a)

    def is_unit(self, a):
        return a.degree == 0

    def canon(self, a):
        return a.monic()


def _rank_first_nonzero(D, row):
    for i, x in enumerate(row):
        if not D.is_zero(x):
            return i
    return -1


def hermite_form(rows, ncols: int, D) -> list[tuple]:
    """Canonical row-echelon basis of the span of ``rows`` over a Euclidean
    domain: pivots normalised, entries above pivots reduced."""
    pending = [list(r) for r in rows if any(not D.is_zero(x) for x in r)]
    out: list[tuple[int, list]] = []
    for c in range(ncols):
        piv = None
        rest = []
        for row in pending:
            a = row[c]
            if D.is_zero(a):
                rest.append(row)
                continue
            if piv is None:
                piv = row
                continue
            g, s, t = D.gcdex(piv[c], a)
            u, v = D.quo(a, g), D.quo(piv[c], g)
            new_piv = [s * x + t * y for x, y in zip(piv, row)]
            new_row = [v * y - u * x for x, y in zip(piv, row)]
            piv = new_piv
            if any(not D.is_zero(x) for x in new_row):
                rest.append(new_row)
        pending = rest
        if piv is None:
            continue
        unit = D.canon_unit(piv[c])
        if unit != D.one:
            piv = [unit * x for x in piv]
        out.append((c, piv))
    for i, (c, row) in enumerate(out):
        p = row[c]
        for j in range(i):
            rj = out[j][1]
            q = D.quo(rj[c], p)
            if not D.is_zero(q):
                out[j] = (out[j][0], [x - q * y for x, y in zip(rj, row)])
    return [tuple(r) for _, r in out]


# ---------------------------------------------------------------------------
# backends: lattice operations keyed by scalar ring

class EuclideanBackend:
    def __init__(self, D):
        self.D = D
        self.key = D.key
        self.zero = D.zero
        self.one = D.one

    def is_zero(self, a):
        return self.D.is_zero(a)

    def norm(self, a):
        return a

    def echelon(self, rows, ncols):
        return hermite_form(rows, ncols, self.D)

    def reduce(self, v, ech):
        D = self.D
        v = list(v)
        for row in ech:
            c = _rank_first_nonzero(D, row)
            q = D.quo(v[c], row[c])
            if not D.is_zero(q):
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def canon(self, a):
        return self.D.canon(a)

    def gcd(self, a, b):
        return self.D.canon(self.D.gcdex(a, b)[0])

    def divides(self, a, b):
        return self.D.divides(a, b)


class ModularBackend:
    def __init__(self, m: int):
        self.m = m
        self.key = ("Zmod", m)
        self.zero = 0
        self.one = 1 % m

    def is_zero(self, a):
        return a % self.m == 0

    def norm(self, a):
        return a % self.m

    def echelon(self, rows, ncols):
        return [tuple(r) for r in howell_form([list(r) for r in rows], ncols, self.m)]

    def reduce(self, v, ech):
        m = self.m
        v = [x % m for x in v]
        for row in ech:
            c = next(i for i, x in enumerate(row) if x)
            q = v[c] // row[c]
            if q:
                v = [(x - q * y) % m for x, y in zip(v, row)]
        return tuple(v)

    def canon(self, a):
        import math
        return math.gcd(a, self.m) % self.m

    def gcd(self, a, b):
        import math
        return math.gcd(math.gcd(a, b), self.m) % self.m

    def divides(self, a, b):
        import math
        ga = math.gcd(a, self.m)
        return b % ga == 0


_BACKENDS: dict = {}


def backend_for(key) -> "EuclideanBackend | ModularBackend":
    if key is None:
        raise UnsupportedRing("ring has no common scalar ring; module operations are unavailable")
    b = _BACKENDS.get(key)
    if b is None:
        if key[0] == "Z":
            b = EuclideanBackend(IntegerDomain())
        elif key[0] == "Fpx":
            b = EuclideanBackend(PolyDomain(key[1]))
        elif key[0] == "Zmod":
            b = ModularBackend(key[1])
        else:
            raise UnsupportedRing(f"unknown scalar ring {key!r}")
        _BACKENDS[key] = b
    return b


# ---------------------------------------------------------------------------
# generic lattice algebra

def is_zero_vec(B, v) -> bool:
    return all(B.is_zero(x) for x in v)


def vec_mat(B, v, A) -> tuple:
    """Row vector times matrix (list of rows)."""
    if not A:
        return ()
    ncols = len(A[0])
    out = [B.zero] * ncols
    for x, row in zip(v, A):
        if B.is_zero(x):
            continue
        for j, y in enumerate(row):
            out[j] = out[j] + x * y
    return tuple(B.norm(x) for x in out)


def lattice_sum(B, U, W, ncols):
    return B.echelon(list(U) + list(W), ncols)


def contains(B, ech, v) -> bool:
    return is_zero_vec(B, B.reduce(v, ech))


def lattice_contains(B, big, small) -> bool:
    return all(contains(B, big, v) for v in small)


def left_kernel(B, rows: Sequence, ncols: int) -> list[tuple]:
    """Echelon basis of ``{c : sum_i c_i rows[i] == 0}``."""
    k = len(rows)
    if k == 0:
        return []
    aug = []
    for i, r in enumerate(rows):
        e = [B.zero] * k
        e[i] = B.one
        aug.append(list(r) + e)
    ech = B.echelon(aug, ncols + k)
    ker = [row[ncols:] for row in ech if is_zero_vec(B, row[:ncols])]
    return B.echelon(ker, k)


def preimage(B, dim: int, maps: Sequence, targets: Sequence, target_dims: Sequence[int]) -> list[tuple]:
    """``{v in S^dim : v * maps[j] in targets[j] for all j}`` as an echelon
    lattice; ``maps[j]`` is a ``dim x target_dims[j]`` matrix."""
    total = sum(target_dims)
    offs = []
    acc = 0
    for d in target_dims:
        offs.append(acc)
        acc += d
    aug = []
    for i in range(dim):
        row = [B.zero] * (total + dim)
        for j, A in enumerate(maps):
            for k, x in enumerate(A[i]):
                row[offs[j] + k] = x
        row[total + i] = B.one
        aug.append(row)
    for j, T in enumerate(targets):
        for t in T:
            row = [B.zero] * (total + dim)
            for k, x in enumerate(t):
                row[offs[j] + k] = x
            aug.append(row)
    ech = B.echelon(aug, total + dim)
    ker = [row[total:] for row in ech if is_zero_vec(B, row[:total])]
    return B.echelon(ker, dim)


def intersect(B, U, W, ncols: int) -> list[tuple]:
    aug = [list(u) + list(u) for u in U] + [list(w) + [B.zero] * ncols for w in W]
    ech = B.echelon(aug, 2 * ncols)
    meet = [row[ncols:] for row in ech if is_zero_vec(B, row[:ncols])]
    return B.echelon(meet, ncols)


# ---------------------------------------------------------------------------
# Smith normal form over a Euclidean domain

def _identity(D, n):
    return [[D.one if i == j else D.zero for j in range(n)] for i in range(n)]


def matmul(A, Bm, zero):
    if not A:
        return []
    n, k = len(A), len(Bm)
    p = len(Bm[0]) if Bm else 0
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == zero:
                continue
            Bt = Bm[t]
            row = out[i]
            for j in range(p):
                row[j] = row[j] + a * Bt[j]
    return out


def smith_form(A, D):
    """``(U, S, V, Vinv)`` with ``U A V = S`` diagonal, divisibility chain,
    nonzero diagonal entries canonical; checked before returning."""
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(r) for r in A]
    U = _identity(D, m)
    V = _identity(D, n)
    Vinv = _identity(D, n)
    z = D.zero

    def row_combine(i, j, s, t, u, v):
        # row_i <- s row_i + t row_j ; row_j <- -u row_i + v row_j
        for M_ in (S, U):
            ri, rj = M_[i], M_[j]
            M_[i] = [s * x + t * y for x, y in zip(ri, rj)]
            M_[j] = [v * y - u * x for x, y in zip(ri, rj)]

    def col_combine(i, j, s, t, u, v):
        # col_i <- s col_i + t col_j ; col_j <- -u col_i + v col_j
        for M_ in (S, V):
            for r in M_:
                x, y = r[i], r[j]
                r[i] = s * x + t * y
                r[j] = v * y - u * x
        # Vinv <- T^{-1} Vinv with T^{-1} = [[v, u], [-t, s]] on rows i, j
        ri, rj = Vinv[i], Vinv[j]
        Vinv[i] = [v * x + u * y for x, y in zip(ri, rj)]
        Vinv[j] = [s * y - t * x for x, y in zip(ri, rj)]

    def swap_rows(i, j):
        for M_ in (S, U):
            M_[i], M_[j] = M_[j], M_[i]

    def swap_cols(i, j):
        for M_ in (S, V):
            for r in M_:
                r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if not D.is_zero(x) and (best is None or D.size(x) < best[0]):
                    best = (D.size(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            for i in range(t + 1, m):
                b = S[i][t]
                if D.is_zero(b):
                    continue
                a = S[t][t]
                if D.divides(a, b):
                    q = D.quo(b, a)
                    for M_ in (S, U):
                        M_[i] = [y - q * x for x, y in zip(M_[t], M_[i])]
                else:
                    g, s, tt = D.gcdex(a, b)
                    row_combine(t, i, s, tt, D.quo(b, g), D.quo(a, g))
            for j in range(t + 1, n):
                b = S[t][j]
                if D.is_zero(b):
                    continue
                a = S[t][t]
                if D.divides(a, b):
                    q = D.quo(b, a)
                    col_combine(t, j, D.one, z, q, D.one)
                else:
                    g, s, tt = D.gcdex(a, b)
                    col_combine(t, j, s, tt, D.quo(b, g), D.quo(a, g))
            if any(not D.is_zero(S[i][t]) for i in range(t + 1, m)):
                continue
            a = S[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not D.divides(a, S[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for M_ in (S, U):
                M_[t] = [x + y for x, y in zip(M_[t], M_[bad])]
        unit = D.canon_unit(S[t][t])
        if unit != D.one:
            S[t] = [unit * x for x in S[t]]
            U[t] = [unit * x for x in U[t]]
    _check_smith(A, U, S, V, Vinv, D)
    return U, S, V, Vinv


def _check_smith(A, U, S, V, Vinv, D):
    m = len(A)
    n = len(A[0]) if m else 0
    z = D.zero
    if m and n and matmul(matmul(U, A, z), V, z) != S:
        raise VerificationError("U A V != D in Smith form")
    if n and matmul(V, Vinv, z) != _identity(D, n):
        raise VerificationError("V is not invertible")
    diag = []
    for i in range(m):
        for j in range(n):
            if i != j and not D.is_zero(S[i][j]):
                raise VerificationError("Smith form is not diagonal")
        if i < n:
            diag.append(S[i][i])
    for a, b in zip(diag, diag[1:]):
        if not D.divides(a, b):
            raise VerificationError("Smith diagonal lacks the divisibility chain")
    if m:
        uinv = left_kernel_free_check(U, D)
        if not uinv:
            raise VerificationError("U is not invertible")


def left_kernel_free_check(U, D) -> bool:
    """U is invertible over D iff its Hermite form is the identity."""
    return hermite_form(U, len(U), D) == [tuple(r) for r in _identity(D, len(U))]


def smith_normal_form(A, ring_key=("Z",)):
    """``(U, D, V)`` with ``U A V = D``; ``ring_key`` selects Z or F_p[x]."""
    if ring_key[0] == "Z":
        D = IntegerDomain()
    elif ring_key[0] == "Fpx":
        D = PolyDomain(ring_key[1])
    else:
        raise UnsupportedRing("Smith normal form needs Z or F_p[x] entries")
    U, S, V, _ = smith_form(A, D)
    return U, S, V


def domain_for(key):
    if key[0] == "Z":
        return IntegerDomain()
    if key[0] == "Fpx":
        return PolyDomain(key[1])
    raise UnsupportedRing(f"{key!r} is not a Euclidean domain")
