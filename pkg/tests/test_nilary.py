import random

import pytest
from hypothesis import given, settings, strategies as hst

from comax.errors import BudgetExceeded, NotTorsion
from comax.modules import present_module
from comax.nilary import (
    intersection_power_condition,
    is_strongly_p_nilary,
    minimal_nilary_decomposition,
    minimality_conditions,
    nilary_module_decompose,
    pseudo_radical,
)
from comax.polys import Poly
from comax.ring_core import ideal_intersect_all, is_pairwise_comaximal
from comax.rings import is_prime_ideal, make_ring

Z = make_ring(("Z",))
F2 = make_ring(("Fpx", 2))
x2 = Poly([0, 1], 2)
one2 = Poly([1], 2)


def test_pseudo_radical_examples():
    assert pseudo_radical(Z, Z.ideal(12)) == Z.ideal(6)
    assert pseudo_radical(Z, Z.zero_ideal()) == Z.zero_ideal()
    assert pseudo_radical(F2, F2.ideal(x2 * x2)) == F2.ideal(x2)
    R = make_ring(("Zmod", 72))
    assert pseudo_radical(R, R.ideal(8)) == R.ideal(2)


def test_pseudo_radical_on_triangular_ring():
    T = make_ring(("triangular", 2, ("Zmod", 2)))
    rad = pseudo_radical(T, T.zero_ideal())
    # the strictly upper ideal squares to zero
    assert rad == T.ideal(((0, 1), (0,)))


def test_strongly_p_nilary_examples():
    assert is_strongly_p_nilary(Z, Z.ideal(8))
    assert not is_strongly_p_nilary(Z, Z.ideal(12))
    assert is_strongly_p_nilary(Z, Z.zero_ideal())


def test_minimal_decomposition_examples():
    nd = minimal_nilary_decomposition(Z, Z.ideal(360))
    assert {Q.data for Q in nd.factors} == {8, 9, 5} and nd.minimal
    assert [Q.data for Q in minimal_nilary_decomposition(Z, Z.ideal(7)).factors] == [7]
    nd = minimal_nilary_decomposition(F2, F2.ideal(x2 * x2 * (x2 + one2)))
    assert set(nd.factors) == {F2.ideal(x2 * x2), F2.ideal(x2 + one2)}
    with pytest.raises(ValueError):
        minimal_nilary_decomposition(Z, Z.unit_ideal())


def test_intersection_power_examples():
    assert intersection_power_condition(Z, Z.ideal(2), Z.ideal(3)) == 1
    assert intersection_power_condition(Z, Z.ideal(2), Z.ideal(2)) == 2
    assert intersection_power_condition(Z, Z.ideal(4), Z.ideal(6)) == 2
    with pytest.raises(BudgetExceeded):
        intersection_power_condition(Z, Z.ideal(4), Z.ideal(6), max_k=1)


def test_module_decompose_examples():
    nm = nilary_module_decompose(present_module(Z, 1, [[360]]))
    assert [P.data for P in nm.primes] == [2, 3, 5]
    assert nm.exponents == (3, 2, 1)
    assert [p.component.invariants.divisors for p in nm.decomposition.parts] == [(8,), (9,), (5,)]
    assert len(nilary_module_decompose(present_module(Z, 1, [[7]])).primes) == 1
    F3 = make_ring(("Fpx", 3))
    x = Poly([0, 1], 3)
    M = present_module(F3, 1, [[x * x * (x - Poly([1], 3))]])
    parts = nilary_module_decompose(M).decomposition.parts
    assert sorted(p.component.cardinality for p in parts) == [3, 9]


def test_module_decompose_errors():
    with pytest.raises(NotTorsion):
        nilary_module_decompose(present_module(Z, 1))
    with pytest.raises(NotTorsion):
        nilary_module_decompose(present_module(Z, 1, [[1]]))


@given(hst.integers(2, 10**6))
def test_minimal_decomposition_properties(n):
    nd = minimal_nilary_decomposition(Z, Z.ideal(n))
    assert ideal_intersect_all(Z, list(nd.factors)) == Z.ideal(n)
    assert all(is_strongly_p_nilary(Z, Q) for Q in nd.factors)
    assert minimality_conditions(Z, Z.ideal(n), list(nd.factors)) == (True, True)
    assert is_pairwise_comaximal(Z, list(nd.pseudo_radicals))
    assert all(is_prime_ideal(Z, P) for P in nd.pseudo_radicals)


@given(hst.integers(0, 10**6))
def test_pseudo_radical_is_idempotent(n):
    I = Z.ideal(n)
    rad = pseudo_radical(Z, I)
    assert pseudo_radical(Z, rad) == rad
    assert rad.data == 0 or n % rad.data == 0


@settings(max_examples=30)
@given(hst.integers(0, 10**6))
def test_random_torsion_modules_have_nonzero_parts(seed):
    rng = random.Random(seed)
    g = rng.randint(1, 3)
    ords = [rng.choice([2, 3, 4, 5, 6, 8, 9, 12, 25, 30, 49]) for _ in range(g)]
    M = present_module(Z, g, [[o if i == j else 0 for j in range(g)] for i, o in enumerate(ords)])
    nm = nilary_module_decompose(M)
    assert not any(p.is_zero for p in nm.decomposition.parts)
    total = 1
    for p in nm.decomposition.parts:
        total *= p.component.cardinality
    assert total == M.cardinality


@settings(max_examples=20)
@given(hst.lists(hst.integers(0, 1), min_size=2, max_size=6).filter(lambda c: c[-1] == 1))
def test_random_polynomial_quotients_have_nonzero_parts(coeffs):
    f = Poly(coeffs, 2)
    if f.degree < 1:
        return
    nm = nilary_module_decompose(present_module(F2, 1, [[f]]))
    assert not any(p.is_zero for p in nm.decomposition.parts)
    total = 1
    for p in nm.decomposition.parts:
        total *= p.component.cardinality
    assert total == 2 ** f.degree
