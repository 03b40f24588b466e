import random

import pytest
import sympy
from hypothesis import given, strategies as hst

from comax import arith, polys
from comax.errors import BudgetExceeded
from comax.polys import Poly


@given(hst.integers(min_value=1, max_value=10**12))
def test_factorint_matches_sympy(n):
    assert arith.factorint(n) == {int(p): e for p, e in sympy.factorint(n).items()}


@given(hst.integers(min_value=0, max_value=10**9))
def test_is_prime_matches_sympy(n):
    assert arith.is_prime(n) == sympy.isprime(n)


def test_radical_and_divisors():
    assert arith.radical(360) == 30
    assert arith.radical(1) == 1
    assert arith.divisors(12) == [1, 2, 3, 4, 6, 12]


@given(hst.integers(-10**6, 10**6), hst.integers(-10**6, 10**6))
def test_egcd_bezout(a, b):
    g, x, y = arith.egcd(a, b)
    assert g == abs(sympy.gcd(a, b)) and a * x + b * y == g


def test_factor_size_cap():
    with pytest.raises(BudgetExceeded):
        arith.factorint(2**64 + 13)


def _sympy_factors(f: Poly):
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(f.coeffs))
    _, fl = sympy.factor_list(expr, x, modulus=f.p)
    out = []
    for g, e in fl:
        cs = [int(c) % f.p for c in reversed(sympy.Poly(g, x).all_coeffs())]
        out.append((Poly(cs, f.p).monic().coeffs, e))
    return sorted(out)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_poly_factor_matches_sympy(p):
    rng = random.Random(p)
    for _ in range(40):
        f = Poly([rng.randrange(p) for _ in range(rng.randint(1, 9))] + [1], p)
        ours = sorted((g.coeffs, e) for g, e in polys.factor(f))
        assert ours == _sympy_factors(f)
        prod = Poly.one(p)
        for g, e in polys.factor(f):
            prod = prod * g**e
        assert prod == f.monic()


def test_gcdex_and_squarefree():
    p = 3
    a = Poly([0, 0, 1, 1], p)   # x^2 (x + 1)
    b = Poly([2, 1], p)         # x - 1
    g, s, t = polys.gcdex(a, b)
    assert g == Poly.one(p) and s * a + t * b == g
    assert polys.squarefree_part(Poly([0, 0, 1], 2)) == Poly([0, 1], 2)
    assert polys.is_irreducible(Poly([1, 1, 1], 2))
    assert not polys.is_irreducible(Poly([1, 0, 1], 2))
