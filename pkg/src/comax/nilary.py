"""Pseudo-radicals, strongly p-nilary ideals and their minimal
decompositions, and the module decomposition they drive."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import arith, config, polys
from .decomp import Decomposition, decompose
from .errors import BudgetExceeded, NotTorsion, UnsupportedRing, VerificationError
from .modules import FPModule, annihilator, left_annihilator_of_ideal
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
    ideal_power,
    ideal_product,
    ideal_sum,
    ideal_sum_all,
    is_unit_ideal,
)
from .polys import Poly


def _stable_power(R: Ring, V: Ideal) -> Ideal:
    """``V^k`` for ``k`` large: the powers form a descending chain."""
    P = V
    for _ in range(config.element_cap()):
        nxt = ideal_product(R, P, V)
        if nxt == P:
            return P
        P = nxt
    raise BudgetExceeded("ideal powers did not stabilise")


def pseudo_radical(R: Ring, I: Ideal) -> Ideal:
    """Sum of all ideals some power of which lies in ``I``."""
    a = I.data
    if isinstance(R, Integers):
        return Ideal(R, arith.radical(a))
    if isinstance(R, ModularIntegers):
        return Ideal(R, arith.radical(a))
    if isinstance(R, PolyOverPrimeField):
        return Ideal(R, polys.squarefree_part(a))
    if isinstance(R, Product):
        comps = [pseudo_radical(f, Ideal(f, x)).data for f, x in zip(R.factors, a)]
        return Ideal(R, tuple(comps))
    if isinstance(R, TriangularMatrix):
        if R.order is None:
            raise UnsupportedRing("pseudo-radicals over infinite triangular rings are not supported")
        ideals = all_ideals(R)
        if len(ideals) ** 2 > config.pair_budget():
            raise BudgetExceeded(f"{len(ideals)} ideals exceed the enumeration budget")
        good = [V for V in ideals if ideal_contains(R, I, _stable_power(R, V))]
        return ideal_sum_all(R, good)
    raise UnsupportedRing(f"pseudo-radical over {R.label()} is not supported")


def is_strongly_p_nilary(R: Ring, I: Ideal) -> bool:
    from .rings import is_prime_by_definition, is_prime_ideal

    rad = pseudo_radical(R, I)
    if isinstance(R, TriangularMatrix):
        return is_prime_by_definition(R, rad)
    return is_prime_ideal(R, rad)


@dataclass(frozen=True)
class NilaryDecomposition:
    ideal: Ideal
    factors: tuple
    pseudo_radicals: tuple
    minimal: bool


def _prime_power_factors(R: Ring, a) -> list:
    if isinstance(R, Integers):
        if a == 0:
            return [0]
        return [p**e for p, e in arith.factorint(a).items()]
    if isinstance(R, ModularIntegers):
        return [p**e for p, e in arith.factorint(a).items()]
    if isinstance(R, PolyOverPrimeField):
        if not a:
            return [a]
        return [(g**e).monic() for g, e in polys.factor(a)]
    if isinstance(R, Product):
        out = []
        for i, (f, x) in enumerate(zip(R.factors, a)):
            if f.i_contains(x, f._unit()):
                continue
            for q in _prime_power_factors(f, x):
                comp = [g._unit() for g in R.factors]
                comp[i] = q
                out.append(tuple(comp))
        return out
    raise UnsupportedRing(f"no factorisation available over {R.label()}")


def minimality_conditions(R: Ring, I: Ideal, factors) -> tuple[bool, bool]:
    """(1) no factor is redundant; (2) no intersection of two or more
    factors is strongly p-nilary."""
    n = len(factors)
    cond1 = all(
        ideal_intersect_all(R, [Q for j, Q in enumerate(factors) if j != i]) != I for i in range(n)
    )
    cond2 = True
    for size in range(2, n + 1):
        for S in itertools.combinations(factors, size):
            if is_strongly_p_nilary(R, ideal_intersect_all(R, list(S))):
                cond2 = False
                break
        if not cond2:
            break
    return cond1, cond2


def minimal_nilary_decomposition(R: Ring, I: Ideal) -> NilaryDecomposition:
    if is_unit_ideal(R, I):
        raise ValueError("the unit ideal has no strongly p-nilary decomposition")
    factors = [Ideal(R, q) for q in _prime_power_factors(R, I.data)]
    if ideal_intersect_all(R, factors) != I:
        raise VerificationError("factors do not intersect back to the ideal")
    for Q in factors:
        if not is_strongly_p_nilary(R, Q):
            raise VerificationError(f"{Q} is not strongly p-nilary")
    c1, c2 = minimality_conditions(R, I, factors)
    if not (c1 and c2):
        raise VerificationError("decomposition is not minimal")
    rads = tuple(pseudo_radical(R, Q) for Q in factors)
    return NilaryDecomposition(I, tuple(factors), rads, True)


def intersection_power_condition(R: Ring, A: Ideal, B: Ideal, max_k: int = config.PID_STABILIZATION_BOUND) -> int:
    """Least ``k <= max_k`` with ``A^k cap B^k <= AB``."""
    AB = ideal_product(R, A, B)
    for k in range(1, max_k + 1):
        meet = ideal_intersect_all(R, [ideal_power(R, A, k), ideal_power(R, B, k)])
        if ideal_contains(R, AB, meet):
            return k
    raise BudgetExceeded(f"no k <= {max_k} with A^k cap B^k inside AB")


def _least_power_inside(R: Ring, P: Ideal, Q: Ideal) -> int:
    for k in range(1, config.PID_STABILIZATION_BOUND + 1):
        if ideal_contains(R, Q, ideal_power(R, P, k)):
            return k
    raise BudgetExceeded(f"no power of {P} up to {config.PID_STABILIZATION_BOUND} lies in {Q}")


@dataclass(frozen=True, eq=False)
class NilaryModuleDecomposition:
    decomposition: Decomposition
    primes: tuple
    exponents: tuple
    generator_decompositions: tuple


def nilary_module_decompose(M: FPModule) -> NilaryModuleDecomposition:
    """Primes and exponents from the strongly p-nilary decompositions of the
    generator annihilators, then a verified decomposition by those primes
    with every part nonzero."""
    R = M.ring
    gens = M.generators()
    if not gens:
        raise NotTorsion("the zero module has no generators to decompose")
    merged: dict = {}
    per_gen = []
    zero = R.zero_ideal()
    for gi, y in enumerate(gens):
        A = annihilator(M, [y])
        if A == zero:
            raise NotTorsion(f"generator {gi} has zero annihilator")
        if is_unit_ideal(R, A):
            per_gen.append(None)
            continue
        nd = minimal_nilary_decomposition(R, A)
        per_gen.append(nd)
        for Q, P in zip(nd.factors, nd.pseudo_radicals):
            merged[P.data] = max(merged.get(P.data, 0), _least_power_inside(R, P, Q))
    if not merged:
        raise NotTorsion("module is zero; nothing to decompose")
    keys = sorted(merged, key=_sort_key)
    primes = [Ideal(R, k) for k in keys]
    exps = [merged[k] for k in keys]
    dec = decompose(M, primes, max_exponent=max(exps))
    for part, P, k in zip(dec.parts, primes, exps):
        if part.is_zero:
            raise VerificationError(f"component of {P} is zero")
        if part.component != left_annihilator_of_ideal(M, ideal_power(R, P, k)):
            raise VerificationError(f"component of {P} is not l_M({P}^{k})")
    return NilaryModuleDecomposition(dec, tuple(primes), tuple(exps), tuple(per_gen))


def _sort_key(data):
    if isinstance(data, Poly):
        return (data.degree, data.coeffs)
    if isinstance(data, tuple):
        return tuple(_sort_key(x) for x in data)
    return data
