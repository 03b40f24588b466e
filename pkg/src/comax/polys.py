"""Dense univariate polynomials over a prime field F_p.

Coefficients are stored little-endian in a tuple with no trailing zeros, so
the zero polynomial is ``()``.  Instances are immutable and hashable.
"""
from __future__ import annotations

import random
from .arith import factorint
from .errors import BudgetExceeded

DEGREE_CAP = 64


class Poly:
    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int):
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, p):
        return cls._raw((), p)

    @classmethod
    def one(cls, p):
        return cls._raw((1,), p)

    @classmethod
    def x(cls, p):
        return cls._raw((0, 1), p)

    @classmethod
    def const(cls, c, p):
        return cls((c,), p)

    # --- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly((other,), self.p).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    # --- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("polynomials over different primes")
            return other
        if isinstance(other, int):
            return Poly((other,), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.coeffs, other.coeffs, self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        while out and out[-1] == 0:
            out.pop()
        return Poly._raw(tuple(out), p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(tuple((-c) % p for c in self.coeffs), p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.coeffs, other.coeffs, self.p
        if not a or not b:
            return Poly._raw((), p)
        if len(b) == 1:
            c = b[0]
            return Poly._raw(tuple(x * c % p for x in a), p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out, p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        b = other.coeffs
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        r = list(self.coeffs)
        if len(r) <= db:
            return Poly._raw((), p), self
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                c = c * inv % p
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        return Poly(q, p), Poly(r[:db], p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        result = Poly.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def powmod(self, k: int, mod: "Poly") -> "Poly":
        result = Poly.one(self.p)
        base = self % mod
        while k:
            if k & 1:
                result = result * base % mod
            base = base * base % mod
            k >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return self * inv

    def deriv(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def gcdex(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic (or zero)."""
    p = a.p
    old_r, r = a, b
    old_s, s = Poly.one(p), Poly.zero(p)
    old_t, t = Poly.zero(p), Poly.one(p)
    while r:
        q, rem = divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r:
        inv = pow(old_r.lc, -1, p)
        old_r, old_s, old_t = old_r * inv, old_s * inv, old_t * inv
    return old_r, old_s, old_t


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly.zero(a.p)
    return (a * b // gcd(a, b)).monic()


def _check_cap(f: Poly):
    if f.degree > DEGREE_CAP:
        raise BudgetExceeded(f"degree {f.degree} exceeds the factorisation cap {DEGREE_CAP}")


def _pth_root(f: Poly) -> Poly:
    p = f.p
    return Poly(f.coeffs[::p], p)


def squarefree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition in characteristic p: ``f = prod g_i^e_i``
    with each ``g_i`` squarefree and monic."""
    f = f.monic()
    p = f.p
    if f.degree < 1:
        return []
    out: list[tuple[Poly, int]] = []
    fp = f.deriv()
    if fp:
        c = gcd(f, fp)
        w = f // c
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), i))
            i += 1
            w, c = y, c // y
        if c.degree > 0:
            out.extend((g, e * p) for g, e in squarefree_factorization(_pth_root(c)))
    else:
        out.extend((g, e * p) for g, e in squarefree_factorization(_pth_root(f)))
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return list(merged.items())


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    p = f.p
    out = []
    x = Poly.x(p)
    h = x
    rest = f.monic()
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(p, rest)
        g = gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    n = f.degree
    if n == d:
        return [f]
    p = f.p
    while True:
        a = Poly([rng.randrange(p) for _ in range(n)], p)
        if a.degree < 1:
            continue
        if p == 2:
            b = a % f
            t = b
            for _ in range(d - 1):
                t = t * t % f
                b = b + t
        else:
            b = a.powmod((p**d - 1) // 2, f) - 1
        g = gcd(b, f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factorisation, sorted by (degree, coefficients)."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    _check_cap(f)
    rng = random.Random(hash(f.coeffs) ^ f.p)
    out: dict[Poly, int] = {}
    for g, e in squarefree_factorization(f):
        for h, d in distinct_degree_factorization(g):
            for irr in _equal_degree_split(h, d, rng):
                out[irr] = out.get(irr, 0) + e
    return sorted(out.items(), key=lambda it: (it[0].degree, it[0].coeffs))


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    _check_cap(f)
    f = f.monic()
    p = f.p
    x = Poly.x(p)
    if x.powmod(p**n, f) != x % f:
        return False
    for q in factorint(n):
        h = x.powmod(p ** (n // q), f)
        if gcd(h - x, f).degree > 0:
            return False
    return True


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors; ``0 -> 0``."""
    if not f:
        return f
    out = Poly.one(f.p)
    for g, _ in squarefree_factorization(f):
        out = out * g
    return out
