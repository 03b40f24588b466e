"""Concrete ring constructors and structural queries: minimal primes,
diagonal-vanishing ideals of triangular rings, and the prime/comaximality
equivalence checked exhaustively on finite rings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import arith, config, polys
from .errors import BudgetExceeded, InvalidRing, UnsupportedRing, VerificationError
from .ring_core import (
    Ideal,
    Integers,
    ModularIntegers,
    PolyOverPrimeField,
    Product,
    Ring,
    TriangularMatrix,
    all_ideals,
    ideal_contains,
    ideal_intersect_all,
    ideal_sum,
    is_pairwise_comaximal,
    is_unit_ideal,
)


def make_ring(spec) -> Ring:
    """Validate a descriptor, or build one from a tuple/dict shorthand.

    Accepts an existing :class:`Ring`, or ``("Z",)``, ``("Zmod", m)``,
    ``("Fpx", p)``, ``("product", [specs])``, ``("triangular", n, spec)``.
    """
    if isinstance(spec, Ring):
        # dataclass construction already validated; re-run for safety
        if isinstance(spec, Product):
            return Product(tuple(make_ring(f) for f in spec.factors))
        if isinstance(spec, TriangularMatrix):
            return TriangularMatrix(spec.n, make_ring(spec.base))
        return spec
    if isinstance(spec, (tuple, list)) and spec:
        tag, *args = spec
        if tag == "Z" and not args:
            return Integers()
        if tag == "Zmod" and len(args) == 1:
            return ModularIntegers(args[0])
        if tag == "Fpx" and len(args) == 1:
            return PolyOverPrimeField(args[0])
        if tag == "product" and len(args) == 1:
            return Product(tuple(make_ring(f) for f in args[0]))
        if tag == "triangular" and len(args) == 2:
            return TriangularMatrix(args[0], make_ring(args[1]))
    raise InvalidRing(f"cannot build a ring from {spec!r}")


# ---------------------------------------------------------------------------
def is_prime_ideal(R: Ring, I: Ideal) -> bool:
    """Structural primality test for the supported variants."""
    a = I.data
    if isinstance(R, Integers):
        return a == 0 or arith.is_prime(a)
    if isinstance(R, ModularIntegers):
        return arith.is_prime(a)
    if isinstance(R, PolyOverPrimeField):
        return (not a) or polys.is_irreducible(a)
    if isinstance(R, Product):
        proper = [i for i, (f, x) in enumerate(zip(R.factors, a)) if not f.i_contains(x, f._unit())]
        return len(proper) == 1 and is_prime_ideal(R.factors[proper[0]], Ideal(R.factors[proper[0]], a[proper[0]]))
    if isinstance(R, TriangularMatrix):
        B = R.base
        proper = [(i, j) for i, j in R.positions() if not B.i_contains(a[i][j], B._unit())]
        if len(proper) != 1 or proper[0][0] != proper[0][1]:
            return False
        i = proper[0][0]
        return is_prime_ideal(B, Ideal(B, a[i][i]))
    raise UnsupportedRing(f"primality for {R.label()} is not supported")


@dataclass(frozen=True)
class MinimalPrimeSet:
    ring: Ring
    primes: tuple
    pairwise_comaximal: bool


def _minimal_prime_data(R: Ring) -> list:
    if isinstance(R, (Integers, PolyOverPrimeField)):
        return [R._zero_ideal()]
    if isinstance(R, ModularIntegers):
        return list(arith.factorint(R.modulus))
    if isinstance(R, Product):
        out = []
        for i, f in enumerate(R.factors):
            for P in _minimal_prime_data(f):
                comp = [g._unit() for g in R.factors]
                comp[i] = P
                out.append(tuple(comp))
        return out
    if isinstance(R, TriangularMatrix):
        B = R.base
        out = []
        for alpha in range(R.n):
            for Q in _minimal_prime_data(B):
                arr = {p: B._unit() for p in R.positions()}
                arr[(alpha, alpha)] = Q
                out.append(R._iarr(arr))
        return out
    raise UnsupportedRing(f"minimal primes of {R.label()} are not supported")


def minimal_primes(R: Ring) -> MinimalPrimeSet:
    primes = tuple(Ideal(R, d) for d in _minimal_prime_data(R))
    for P in primes:
        if not is_prime_ideal(R, P):
            raise VerificationError(f"{P} is not prime")
    for P, Q in itertools.permutations(primes, 2):
        if ideal_contains(R, P, Q):
            raise VerificationError(f"{P} contains {Q}; list is not minimal")
    return MinimalPrimeSet(R, primes, is_pairwise_comaximal(R, list(primes)))


def diagonal_vanishing_ideals(T: Ring) -> list[Ideal]:
    """The ideals ``P_a`` of matrices whose a-th diagonal entry is zero."""
    if not isinstance(T, TriangularMatrix):
        raise UnsupportedRing(f"{T.label()} is not a triangular matrix ring")
    B = T.base
    out = []
    for alpha in range(T.n):
        arr = {p: B._unit() for p in T.positions()}
        arr[(alpha, alpha)] = B._zero_ideal()
        out.append(Ideal(T, T._iarr(arr)))
    return out


def strict_upper_ideal(T: TriangularMatrix) -> Ideal:
    return ideal_intersect_all(T, diagonal_vanishing_ideals(T))


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class RingTable:
    """Finite ring as index tables built from the structured arithmetic."""

    ring: Ring
    elements: tuple
    index: dict
    mul: tuple
    add: tuple


_TABLES: dict = {}


def ring_table(R: Ring) -> RingTable:
    if R in _TABLES:
        return _TABLES[R]
    order = R.order
    if order is None:
        raise UnsupportedRing(f"{R.label()} is infinite")
    if order * order > config.pair_budget():
        raise BudgetExceeded(f"{order}^2 element pairs exceed the budget {config.pair_budget()}")
    elts = tuple(R.elements())
    index = {e: i for i, e in enumerate(elts)}
    mul = tuple(tuple(index[R.mul(a, b)] for b in elts) for a in elts)
    add = tuple(tuple(index[R.add(a, b)] for b in elts) for a in elts)
    tab = RingTable(R, elts, index, mul, add)
    _TABLES[R] = tab
    return tab


def is_prime_by_definition(R: Ring, I: Ideal) -> bool:
    """``P != R`` and ``aRb <= P`` forces ``a`` or ``b`` into ``P``."""
    tab = ring_table(R)
    inside = [R.i_member(I.data, e) for e in tab.elements]
    if all(inside):
        return False
    outside = [i for i, f in enumerate(inside) if not f]
    mul = tab.mul
    n = len(tab.elements)
    for a in outside:
        aR = {mul[a][r] for r in range(n)}
        for b in outside:
            if all(inside[mul[x][b]] for x in aR):
                return False
    return True


@dataclass(frozen=True)
class PrimeComaximalityReport:
    ring: Ring
    primes: tuple
    minimal: tuple
    unique_minimal_below_each_prime: bool
    minimal_pairwise_comaximal: bool

    @property
    def equivalent(self) -> bool:
        return self.unique_minimal_below_each_prime == self.minimal_pairwise_comaximal


def check_prime_comaximality_equivalence(R: Ring) -> PrimeComaximalityReport:
    """Enumerate the primes of a finite ring and compare "each prime lies over
    exactly one minimal prime" with "minimal primes are pairwise comaximal"."""
    if R.order is None:
        raise UnsupportedRing(f"{R.label()} is infinite")
    ideals = all_ideals(R)
    primes = [I for I in ideals if is_prime_by_definition(R, I)]
    minimal = [P for P in primes if not any(Q != P and ideal_contains(R, P, Q) for Q in primes)]
    unique = all(sum(1 for Q in minimal if ideal_contains(R, P, Q)) == 1 for P in primes)
    comax = all(is_unit_ideal(R, ideal_sum(R, P, Q)) for P, Q in itertools.combinations(minimal, 2))
    rep = PrimeComaximalityReport(R, tuple(primes), tuple(minimal), unique, comax)
    if not rep.equivalent:
        raise VerificationError(f"prime/comaximality equivalence fails on {R.label()}")
    structured = {P.data for P in minimal_primes(R).primes}
    if structured != {P.data for P in minimal}:
        raise VerificationError(f"structured minimal primes of {R.label()} disagree with enumeration")
    if {I.data for I in ideals if is_prime_ideal(R, I)} != {P.data for P in primes}:
        raise VerificationError(f"structural primality test disagrees with the definition on {R.label()}")
    return rep
