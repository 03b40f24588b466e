"""Ring descriptors, canonical ideals, and comaximality machinery.

Every supported ring ``R`` is an algebra over a *scalar ring* ``S`` (one of
Z, Z/L, F_p[x]) with a finite monomial basis ``b_1..b_N``: as an S-module
``R = (+)_u S/(a_u) b_u`` and every two-sided ideal is ``(+)_u J_u b_u`` for
ideals ``J_u`` of S.  The module layer uses that structure to turn questions
about R-modules into S-linear algebra; the ideal operations below work on
the ring-specific canonical forms directly.

Elements are plain Python values (``int``, :class:`~comax.polys.Poly`,
tuples); a ring object supplies the arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Any, ClassVar, Iterable, Sequence

from . import arith, polys
from .errors import (
    InvalidRing,
    MalformedIdeal,
    NotComaximal,
    RingMismatch,
    UnsupportedRing,
    VerificationError,
)
from .polys import Poly


class Ring:
    """Common interface; concrete variants are frozen dataclasses."""

    kind: ClassVar[str]
    is_commutative: ClassVar[bool] = True

    # element arithmetic -------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, items: Iterable):
        return reduce(self.add, items, self.zero())

    def prod(self, items: Iterable):
        return reduce(self.mul, items, self.one())

    def pow(self, a, k: int):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a) -> bool:
        return a == self.zero()

    # finiteness -----------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def ideal(self, data) -> "Ideal":
        return Ideal(self, self.ideal_normalize(data))

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, self._unit())

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, self._zero_ideal())

    # scalar structure ------------------------------------------------------
    @property
    def basis_size(self) -> int:
        return len(self.basis())

    def ideal_span(self, data) -> list:
        """Ring elements spanning the ideal over the scalar ring."""
        gens = self.ideal_coords(data)
        basis = self.basis()
        skey = self.scalar_key
        out = []
        for u, g in enumerate(gens):
            if _scalar_is_zero(skey, g, self.basis_ann()[u]):
                continue
            coords = [_scalar_zero(skey)] * len(basis)
            coords[u] = g
            out.append(self.from_coords(coords))
        return out

    def __str__(self):
        return self.label()


def _scalar_zero(skey):
    return Poly.zero(skey[1]) if skey[0] == "Fpx" else 0


def _scalar_is_zero(skey, g, ann) -> bool:
    if skey[0] == "Fpx":
        return not g or (bool(ann) and not (g % ann))
    if skey[0] == "Zmod":
        g %= skey[1]
        if g == 0:
            return True
        return bool(ann) and g % math.gcd(ann, skey[1]) == 0
    if g == 0:
        return True
    return bool(ann) and g % ann == 0


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Integers(Ring):
    kind: ClassVar[str] = "Z"

    def label(self):
        return "Z"

    order = None

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingMismatch(f"{x!r} is not an integer")
        return x

    # ideals: nonnegative generator
    def ideal_normalize(self, data):
        if isinstance(data, bool) or not isinstance(data, int):
            raise MalformedIdeal(f"ideal of Z needs an integer generator, got {data!r}")
        return abs(data)

    def _unit(self):
        return 1

    def _zero_ideal(self):
        return 0

    def i_sum(self, a, b):
        return math.gcd(a, b)

    def i_prod(self, a, b):
        return a * b

    def i_meet(self, a, b):
        return arith.lcm(a, b)

    def i_contains(self, a, b):
        return b == 0 if a == 0 else b % a == 0

    def i_member(self, a, x):
        return x == 0 if a == 0 else x % a == 0

    def i_bezout(self, a, b):
        g, s, t = arith.egcd(a, b)
        if g != 1:
            raise NotComaximal(f"{a}Z + {b}Z != Z")
        return s * a, t * b

    def ideal_label(self, a):
        return f"{a}Z"

    # scalar structure
    scalar_key = ("Z",)

    def basis(self):
        return [1]

    def basis_ann(self):
        return [0]

    def coords(self, x):
        return (x,)

    def from_coords(self, c):
        return c[0]

    def ideal_coords(self, a):
        return (a,)

    def ideal_from_coords(self, gens):
        return abs(gens[0])


@dataclass(frozen=True)
class ModularIntegers(Ring):
    modulus: int
    kind: ClassVar[str] = "Zmod"

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 2:
            raise InvalidRing(f"modulus must be an integer >= 2, got {self.modulus!r}")

    def label(self):
        return f"Z/{self.modulus}"

    @property
    def order(self):
        return self.modulus

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingMismatch(f"{x!r} is not a residue")
        return x % self.modulus

    def elements(self):
        return list(range(self.modulus))

    # ideals: divisor d of m, ideal dZ/mZ; d == m is the zero ideal
    def ideal_normalize(self, data):
        if isinstance(data, bool) or not isinstance(data, int):
            raise MalformedIdeal(f"ideal of {self.label()} needs an integer divisor, got {data!r}")
        m = self.modulus
        if data == 0 or data % m == 0:
            return m
        if data < 0 or m % data:
            raise MalformedIdeal(f"{data} does not divide {m}")
        return data

    def _unit(self):
        return 1

    def _zero_ideal(self):
        return self.modulus

    def i_sum(self, a, b):
        return math.gcd(a, b)

    def i_prod(self, a, b):
        return math.gcd(a * b, self.modulus)

    def i_meet(self, a, b):
        return arith.lcm(a, b)

    def i_contains(self, a, b):
        return b % a == 0

    def i_member(self, a, x):
        return (x % self.modulus) % a == 0

    def i_bezout(self, a, b):
        g, s, t = arith.egcd(a, b)
        if g != 1:
            raise NotComaximal(f"({a}) + ({b}) != {self.label()}")
        m = self.modulus
        return s * a % m, t * b % m

    def ideal_label(self, a):
        return f"{a % self.modulus}Z/{self.modulus}"

    @property
    def scalar_key(self):
        return ("Zmod", self.modulus)

    def basis(self):
        return [1]

    def basis_ann(self):
        return [0]

    def coords(self, x):
        return (x,)

    def from_coords(self, c):
        return c[0] % self.modulus

    def ideal_coords(self, a):
        return (a % self.modulus,)

    def ideal_from_coords(self, gens):
        return math.gcd(gens[0], self.modulus)

    def all_ideals(self):
        return arith.divisors(self.modulus)


@dataclass(frozen=True)
class PolyOverPrimeField(Ring):
    p: int
    kind: ClassVar[str] = "Fpx"

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not arith.is_prime_trial(self.p):
            raise InvalidRing(f"p must be prime, got {self.p!r}")

    def label(self):
        return f"F{self.p}[x]"

    order = None

    def zero(self):
        return Poly.zero(self.p)

    def one(self):
        return Poly.one(self.p)

    def x(self):
        return Poly.x(self.p)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.p != self.p:
                raise RingMismatch(f"{x!r} lives over F{x.p}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Poly((x,), self.p)
        if isinstance(x, (list, tuple)):
            return Poly(x, self.p)
        raise RingMismatch(f"{x!r} is not a polynomial over F{self.p}")

    def ideal_normalize(self, data):
        try:
            f = self.coerce(data)
        except RingMismatch as exc:
            raise MalformedIdeal(str(exc)) from None
        return f.monic()

    def _unit(self):
        return Poly.one(self.p)

    def _zero_ideal(self):
        return Poly.zero(self.p)

    def i_sum(self, a, b):
        return polys.gcd(a, b)

    def i_prod(self, a, b):
        return (a * b).monic()

    def i_meet(self, a, b):
        return polys.lcm(a, b)

    def i_contains(self, a, b):
        return not b if not a else not (b % a)

    def i_member(self, a, x):
        return self.i_contains(a, x)

    def i_bezout(self, a, b):
        g, s, t = polys.gcdex(a, b)
        if g != Poly.one(self.p):
            raise NotComaximal(f"({a}) + ({b}) != {self.label()}")
        return s * a, t * b

    def ideal_label(self, a):
        return f"({a})"

    @property
    def scalar_key(self):
        return ("Fpx", self.p)

    def basis(self):
        return [Poly.one(self.p)]

    def basis_ann(self):
        return [Poly.zero(self.p)]

    def coords(self, x):
        return (x,)

    def from_coords(self, c):
        return c[0]

    def ideal_coords(self, a):
        return (a,)

    def ideal_from_coords(self, gens):
        return gens[0].monic()


@dataclass(frozen=True)
class Product(Ring):
    factors: tuple
    kind: ClassVar[str] = "Product"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise InvalidRing("a product ring needs at least one factor")
        for f in self.factors:
            if not isinstance(f, Ring):
                raise InvalidRing(f"{f!r} is not a ring descriptor")

    @property
    def is_commutative(self):
        return all(f.is_commutative for f in self.factors)

    def label(self):
        return " x ".join(f.label() for f in self.factors)

    @property
    def order(self):
        orders = [f.order for f in self.factors]
        return None if None in orders else math.prod(orders)

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def coerce(self, x):
        if not isinstance(x, (list, tuple)) or len(x) != len(self.factors):
            raise RingMismatch(f"{x!r} does not have {len(self.factors)} components")
        return tuple(f.coerce(c) for f, c in zip(self.factors, x))

    def elements(self):
        return [tuple(t) for t in itertools.product(*(f.elements() for f in self.factors))]

    def ideal_normalize(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != len(self.factors):
            raise MalformedIdeal(f"product ideal needs {len(self.factors)} components, got {data!r}")
        return tuple(f.ideal_normalize(d) for f, d in zip(self.factors, data))

    def _unit(self):
        return tuple(f._unit() for f in self.factors)

    def _zero_ideal(self):
        return tuple(f._zero_ideal() for f in self.factors)

    def i_sum(self, a, b):
        return tuple(f.i_sum(x, y) for f, x, y in zip(self.factors, a, b))

    def i_prod(self, a, b):
        return tuple(f.i_prod(x, y) for f, x, y in zip(self.factors, a, b))

    def i_meet(self, a, b):
        return tuple(f.i_meet(x, y) for f, x, y in zip(self.factors, a, b))

    def i_contains(self, a, b):
        return all(f.i_contains(x, y) for f, x, y in zip(self.factors, a, b))

    def i_member(self, a, x):
        return all(f.i_member(i, c) for f, i, c in zip(self.factors, a, x))

    def i_bezout(self, a, b):
        pairs = [f.i_bezout(x, y) for f, x, y in zip(self.factors, a, b)]
        return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)

    def ideal_label(self, a):
        return " x ".join(f.ideal_label(x) for f, x in zip(self.factors, a))

    def all_ideals(self):
        return [tuple(t) for t in itertools.product(*(_all_ideals(f) for f in self.factors))]

    # scalar structure: all factors must agree on a common scalar ring
    @property
    def scalar_key(self):
        keys = [f.scalar_key for f in self.factors]
        if any(k is None for k in keys):
            return None
        kinds = {k[0] for k in keys}
        if kinds == {"Zmod"}:
            return ("Zmod", reduce(arith.lcm, (k[1] for k in keys)))
        if kinds <= {"Z", "Zmod"}:
            return ("Z",)
        if kinds == {"Fpx"} and len({k[1] for k in keys}) == 1:
            return keys[0]
        return None

    def _blocks(self):
        sizes = [f.basis_size for f in self.factors]
        offs = list(itertools.accumulate([0] + sizes))
        return [(offs[i], offs[i + 1]) for i in range(len(sizes))]

    def basis(self):
        out = []
        for i, f in enumerate(self.factors):
            for b in f.basis():
                e = list(self.zero())
                e[i] = b
                out.append(tuple(e))
        return out

    def basis_ann(self):
        out = []
        for f in self.factors:
            fk = f.scalar_key
            for a in f.basis_ann():
                out.append(math.gcd(a, fk[1]) if fk[0] == "Zmod" else a)
        return out

    def coords(self, x):
        out = []
        for f, c in zip(self.factors, x):
            out.extend(f.coords(c))
        return tuple(out)

    def from_coords(self, c):
        return tuple(f.from_coords(tuple(c[lo:hi])) for f, (lo, hi) in zip(self.factors, self._blocks()))

    def ideal_coords(self, a):
        out = []
        for f, x in zip(self.factors, a):
            fk = f.scalar_key
            for g in f.ideal_coords(x):
                out.append(math.gcd(g, fk[1]) if fk[0] == "Zmod" else g)
        return tuple(out)

    def ideal_from_coords(self, gens):
        return tuple(f.ideal_from_coords(tuple(gens[lo:hi])) for f, (lo, hi) in zip(self.factors, self._blocks()))


@dataclass(frozen=True)
class TriangularMatrix(Ring):
    """Upper-triangular n x n matrices over a commutative base ring."""

    n: int
    base: Ring
    kind: ClassVar[str] = "Triangular"

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidRing(f"matrix size must be >= 1, got {self.n!r}")
        if not isinstance(self.base, Ring):
            raise InvalidRing(f"{self.base!r} is not a ring descriptor")
        if _contains_triangular(self.base):
            raise InvalidRing("nested triangular matrix rings are not supported")

    @property
    def is_commutative(self):
        return self.n == 1

    def label(self):
        return f"T{self.n}({self.base.label()})"

    @property
    def order(self):
        bo = self.base.order
        return None if bo is None else bo ** (self.n * (self.n + 1) // 2)

    def positions(self):
        return [(i, j) for i in range(self.n) for j in range(i, self.n)]

    def _mat(self, entries: dict):
        z = self.base.zero()
        return tuple(tuple(entries.get((i, j), z) for j in range(self.n)) for i in range(self.n))

    def zero(self):
        return self._mat({})

    def one(self):
        o = self.base.one()
        return self._mat({(i, i): o for i in range(self.n)})

    def unit_matrix(self, i, j, value=None):
        return self._mat({(i, j): self.base.one() if value is None else value})

    def add(self, a, b):
        B = self.base
        return tuple(tuple(B.add(x, y) for x, y in zip(r, s)) for r, s in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(tuple(B.neg(x) for x in r) for r in a)

    def mul(self, a, b):
        B, n = self.base, self.n
        z = B.zero()
        out = []
        for i in range(n):
            row = []
            for k in range(n):
                if k < i:
                    row.append(z)
                    continue
                acc = z
                for j in range(i, k + 1):
                    acc = B.add(acc, B.mul(a[i][j], b[j][k]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def coerce(self, x):
        n, B = self.n, self.base
        rows = list(x) if isinstance(x, (list, tuple)) else None
        if rows is None or len(rows) != n:
            raise RingMismatch(f"{x!r} is not an {n}x{n} matrix")
        entries = {}
        for i, r in enumerate(rows):
            r = list(r)
            if len(r) == n:
                full = r
            elif len(r) == n - i:
                full = [B.zero()] * i + r
            else:
                raise RingMismatch(f"row {i} of {x!r} has the wrong length")
            for j in range(n):
                v = B.coerce(full[j])
                if j < i:
                    if not B.is_zero(v):
                        raise RingMismatch("entries below the diagonal must vanish")
                else:
                    entries[(i, j)] = v
        return self._mat(entries)

    def elements(self):
        pos = self.positions()
        belts = self.base.elements()
        return [self._mat(dict(zip(pos, vals))) for vals in itertools.product(belts, repeat=len(pos))]

    # ideals: n x n arrays of base ideals, entries below the diagonal unused
    def ideal_normalize(self, data):
        n, B = self.n, self.base
        if not isinstance(data, (list, tuple)) or len(data) != n:
            raise MalformedIdeal(f"triangular ideal needs {n} rows, got {data!r}")
        arr = {}
        for i, r in enumerate(data):
            r = list(r)
            if len(r) == n:
                r = r[i:]
            if len(r) != n - i:
                raise MalformedIdeal(f"row {i} of the ideal array has the wrong length")
            for off, v in enumerate(r):
                arr[(i, i + off)] = B.ideal_normalize(v)
        out = self._iarr(arr)
        if not self._closed(out):
            raise MalformedIdeal("array violates I_ij <= I_hk for h <= i, k >= j; not a two-sided ideal")
        return out

    def _iarr(self, arr: dict):
        z = self.base._zero_ideal()
        return tuple(tuple(arr.get((i, j), z) for j in range(self.n)) for i in range(self.n))

    def _closed(self, a) -> bool:
        B = self.base
        for i, j in self.positions():
            if i > 0 and not B.i_contains(a[i - 1][j], a[i][j]):
                return False
            if j + 1 < self.n and not B.i_contains(a[i][j + 1], a[i][j]):
                return False
        return True

    def close(self, a):
        """Smallest closed array containing ``a``: entry (i, j) absorbs every
        entry (h, k) with h >= i and k <= j."""
        B = self.base
        arr = {}
        for i, j in self.positions():
            acc = B._zero_ideal()
            for h in range(i, j + 1):
                for k in range(h, j + 1):
                    acc = B.i_sum(acc, a[h][k])
            arr[(i, j)] = acc
        return self._iarr(arr)

    def _unit(self):
        u = self.base._unit()
        return self._iarr({p: u for p in self.positions()})

    def _zero_ideal(self):
        return self._iarr({})

    def _entrywise(self, op, a, b):
        return self._iarr({(i, j): op(a[i][j], b[i][j]) for i, j in self.positions()})

    def i_sum(self, a, b):
        return self._entrywise(self.base.i_sum, a, b)

    def i_meet(self, a, b):
        return self._entrywise(self.base.i_meet, a, b)

    def i_prod(self, a, b):
        B = self.base
        arr = {}
        for i, k in self.positions():
            acc = B._zero_ideal()
            for j in range(i, k + 1):
                acc = B.i_sum(acc, B.i_prod(a[i][j], b[j][k]))
            arr[(i, k)] = acc
        return self.close(self._iarr(arr))

    def i_contains(self, a, b):
        B = self.base
        return all(B.i_contains(a[i][j], b[i][j]) for i, j in self.positions())

    def i_member(self, a, x):
        B = self.base
        return all(B.i_member(a[i][j], x[i][j]) for i, j in self.positions())

    def i_bezout(self, a, b):
        B = self.base
        da, db = {}, {}
        for i in range(self.n):
            da[(i, i)], db[(i, i)] = B.i_bezout(a[i][i], b[i][i])
        return self._mat(da), self._mat(db)

    def ideal_label(self, a):
        B = self.base
        rows = ["[" + ", ".join(B.ideal_label(a[i][j]) for j in range(i, self.n)) + "]" for i in range(self.n)]
        return "T" + "".join(rows)

    def all_ideals(self):
        pos = self.positions()
        bid = _all_ideals(self.base)
        out = []
        for vals in itertools.product(bid, repeat=len(pos)):
            arr = self._iarr(dict(zip(pos, vals)))
            if self._closed(arr):
                out.append(arr)
        return out

    @property
    def scalar_key(self):
        return self.base.scalar_key

    def basis(self):
        out = []
        for i, j in self.positions():
            for b in self.base.basis():
                out.append(self._mat({(i, j): b}))
        return out

    def basis_ann(self):
        return list(self.base.basis_ann()) * len(self.positions())

    def coords(self, x):
        out = []
        for i, j in self.positions():
            out.extend(self.base.coords(x[i][j]))
        return tuple(out)

    def from_coords(self, c):
        N = self.base.basis_size
        entries = {}
        for k, (i, j) in enumerate(self.positions()):
            entries[(i, j)] = self.base.from_coords(tuple(c[k * N:(k + 1) * N]))
        return self._mat(entries)

    def ideal_coords(self, a):
        out = []
        for i, j in self.positions():
            out.extend(self.base.ideal_coords(a[i][j]))
        return tuple(out)

    def ideal_from_coords(self, gens):
        N = self.base.basis_size
        arr = {}
        for k, (i, j) in enumerate(self.positions()):
            arr[(i, j)] = self.base.ideal_from_coords(tuple(gens[k * N:(k + 1) * N]))
        return self.close(self._iarr(arr))


def _contains_triangular(R: Ring) -> bool:
    if isinstance(R, TriangularMatrix):
        return True
    if isinstance(R, Product):
        return any(_contains_triangular(f) for f in R.factors)
    return False


def _all_ideals(R: Ring) -> list:
    fn = getattr(R, "all_ideals", None)
    if fn is None:
        raise UnsupportedRing(f"{R.label()} has infinitely many ideals")
    return fn()


def all_ideals(R: Ring) -> list["Ideal"]:
    """Every two-sided ideal of a ring with a finite ideal lattice."""
    return [Ideal(R, a) for a in _all_ideals(R)]


@lru_cache(maxsize=4096)
def action_matrix(R: Ring, x) -> tuple:
    """Matrix of right multiplication by ``x`` on scalar coordinates:
    row ``t`` holds the coordinates of ``b_t * x``."""
    return tuple(R.coords(R.mul(b, x)) for b in R.basis())


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Ideal:
    ring: Ring
    data: Any

    def __str__(self):
        return self.ring.ideal_label(self.data)

    def __repr__(self):
        return f"Ideal({self.ring.label()}, {self.ring.ideal_label(self.data)})"

    def span(self) -> list:
        return self.ring.ideal_span(self.data)

    def contains_element(self, x) -> bool:
        return self.ring.i_member(self.data, x)

    def __contains__(self, x):
        return self.contains_element(x)


def _check_same(R: Ring, *ideals: Ideal):
    for I in ideals:
        if not isinstance(I, Ideal):
            raise MalformedIdeal(f"{I!r} is not an Ideal")
        if I.ring != R:
            raise RingMismatch(f"ideal over {I.ring.label()} used with {R.label()}")


def ideal_combine(R: Ring, op: str, I: Ideal, J: Ideal) -> Ideal:
    """``I + J``, ``IJ`` or ``I cap J`` in canonical form."""
    _check_same(R, I, J)
    fn = {"sum": R.i_sum, "product": R.i_prod, "intersect": R.i_meet}.get(op)
    if fn is None:
        raise ValueError(f"unknown ideal operation {op!r}")
    return Ideal(R, fn(I.data, J.data))


def ideal_sum(R, I, J):
    return ideal_combine(R, "sum", I, J)


def ideal_product(R, I, J):
    return ideal_combine(R, "product", I, J)


def ideal_intersect(R, I, J):
    return ideal_combine(R, "intersect", I, J)


def ideal_product_all(R: Ring, ideals: Sequence[Ideal]) -> Ideal:
    """Ordered product ``X_1 X_2 ... X_n``; the empty product is R."""
    out = R.unit_ideal()
    for I in ideals:
        out = ideal_product(R, out, I)
    return out


def ideal_intersect_all(R: Ring, ideals: Sequence[Ideal]) -> Ideal:
    out = R.unit_ideal()
    for I in ideals:
        out = ideal_intersect(R, out, I)
    return out


def ideal_sum_all(R: Ring, ideals: Sequence[Ideal]) -> Ideal:
    out = R.zero_ideal()
    for I in ideals:
        out = ideal_sum(R, out, I)
    return out


def ideal_power(R: Ring, I: Ideal, k: int) -> Ideal:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"ideal exponent must be a positive integer, got {k!r}")
    _check_same(R, I)
    out = I.data
    for _ in range(k - 1):
        out = R.i_prod(out, I.data)
    return Ideal(R, out)


def ideal_contains(R: Ring, I: Ideal, J: Ideal) -> bool:
    """True iff ``J`` is contained in ``I``."""
    _check_same(R, I, J)
    return R.i_contains(I.data, J.data)


def is_unit_ideal(R: Ring, I: Ideal) -> bool:
    return ideal_contains(R, I, R.unit_ideal())


def is_pairwise_comaximal(R: Ring, ideals: Sequence[Ideal]) -> bool:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    _check_same(R, *ideals)
    return all(
        is_unit_ideal(R, ideal_sum(R, a, b)) for a, b in itertools.combinations(ideals, 2)
    )


@dataclass(frozen=True)
class PartitionOfUnity:
    """Elements ``e_i`` summing to 1 with ``e_i`` in the ordered product of
    the other targets ``X_j^{k_j}``."""

    ring: Ring
    ideals: tuple
    exponents: tuple
    witnesses: tuple

    def targets(self) -> list[Ideal]:
        return [ideal_power(self.ring, I, k) for I, k in zip(self.ideals, self.exponents)]

    def verify(self) -> bool:
        R = self.ring
        if not R.sum(self.witnesses) == R.one():
            return False
        tg = self.targets()
        for i, e in enumerate(self.witnesses):
            others = ideal_product_all(R, tg[:i] + tg[i + 1:])
            if not others.contains_element(e):
                return False
        return True


def partition_of_unity(R: Ring, ideals: Sequence[Ideal], exponents: Sequence[int] | None = None) -> PartitionOfUnity:
    """Constructive CRT witnesses for a pairwise comaximal family.

    Folds the pairwise Bezout identity: with ``f_1..f_{n-1}`` already built
    for the first ``n-1`` targets and ``u + v = 1``, ``u`` in the n-th target,
    ``v`` in the ordered product of the others, the new witnesses are
    ``f_i * u`` and ``v``.  The result is checked before it is returned.
    """
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    _check_same(R, *ideals)
    exponents = [1] * len(ideals) if exponents is None else list(exponents)
    if len(exponents) != len(ideals) or any(k < 1 for k in exponents):
        raise ValueError("need one positive exponent per ideal")
    if not is_pairwise_comaximal(R, ideals):
        raise NotComaximal("ideals are not pairwise comaximal")
    targets = [ideal_power(R, I, k) for I, k in zip(ideals, exponents)]
    wit = [R.one()]
    for n in range(1, len(targets)):
        prev = ideal_product_all(R, targets[:n])
        u, v = R.i_bezout(targets[n].data, prev.data)
        wit = [R.mul(f, u) for f in wit] + [v]
    pou = PartitionOfUnity(R, tuple(ideals), tuple(exponents), tuple(wit))
    if not pou.verify():
        raise VerificationError("partition-of-unity witness failed its own check")
    return pou
