import itertools

import pytest
from hypothesis import given, strategies as hst

from comax import oracle
from comax.errors import InvalidRing, MalformedIdeal, NotComaximal, RingMismatch
from comax.polys import Poly
from comax.ring_core import (
    ideal_combine,
    ideal_contains,
    ideal_intersect_all,
    ideal_power,
    ideal_product,
    is_pairwise_comaximal,
    is_unit_ideal,
    partition_of_unity,
    all_ideals,
)
from comax.rings import diagonal_vanishing_ideals, make_ring

Z = make_ring(("Z",))


def test_combine_examples():
    assert ideal_combine(Z, "sum", Z.ideal(6), Z.ideal(10)) == Z.ideal(2)
    assert ideal_combine(Z, "product", Z.ideal(7), Z.ideal(1)) == Z.ideal(7)
    R = make_ring(("Zmod", 12))
    assert ideal_combine(R, "intersect", R.ideal(2), R.ideal(3)) == R.ideal(6)


def test_power_examples():
    assert ideal_power(Z, Z.ideal(2), 3) == Z.ideal(8)
    R = make_ring(("Zmod", 12))
    assert ideal_power(R, R.ideal(2), 2) == R.ideal(4)
    T = make_ring(("triangular", 3, ("Zmod", 4)))
    N = ideal_intersect_all(T, diagonal_vanishing_ideals(T))
    assert ideal_power(T, N, 3) == T.zero_ideal()
    assert ideal_power(T, N, 2) != T.zero_ideal()
    with pytest.raises(ValueError):
        ideal_power(Z, Z.ideal(2), 0)


def test_contains_examples():
    assert ideal_contains(Z, Z.ideal(2), Z.ideal(6))
    assert not ideal_contains(Z, Z.ideal(6), Z.ideal(2))
    T = make_ring(("triangular", 2, ("Z",)))
    X1, X2 = diagonal_vanishing_ideals(T)
    assert ideal_contains(T, X1, ideal_product(T, X1, X2))


def test_comaximal_examples():
    assert is_pairwise_comaximal(Z, [Z.ideal(2), Z.ideal(3), Z.ideal(5)])
    assert not is_pairwise_comaximal(Z, [Z.ideal(2), Z.ideal(4)])
    assert is_pairwise_comaximal(Z, [Z.ideal(4)])
    T = make_ring(("triangular", 3, ("Z",)))
    assert is_pairwise_comaximal(T, diagonal_vanishing_ideals(T))
    with pytest.raises(ValueError):
        is_pairwise_comaximal(Z, [])


def test_partition_of_unity_examples():
    pou = partition_of_unity(Z, [Z.ideal(2), Z.ideal(3)], [1, 1])
    assert pou.witnesses == (3, -2)
    assert partition_of_unity(Z, [Z.ideal(9)], [4]).witnesses == (1,)
    pou = partition_of_unity(Z, [Z.ideal(2), Z.ideal(3), Z.ideal(5)], [2, 1, 1])
    e1, e2, e3 = pou.witnesses
    assert e1 % 15 == 0 and e2 % 20 == 0 and e3 % 12 == 0 and e1 + e2 + e3 == 1
    with pytest.raises(NotComaximal):
        partition_of_unity(Z, [Z.ideal(2), Z.ideal(4)])


def test_partition_of_unity_triangular_and_product():
    T = make_ring(("triangular", 3, ("Zmod", 4)))
    pou = partition_of_unity(T, diagonal_vanishing_ideals(T), [2, 1, 3])
    assert pou.verify()
    R = make_ring(("product", [("Z",), ("Fpx", 3)]))
    X = [R.ideal((2, Poly([0, 1], 3))), R.ideal((3, Poly([1, 1], 3)))]
    assert partition_of_unity(R, X, [2, 2]).verify()


def test_errors():
    with pytest.raises(RingMismatch):
        ideal_combine(Z, "sum", Z.ideal(2), make_ring(("Zmod", 4)).ideal(2))
    with pytest.raises(MalformedIdeal):
        make_ring(("Zmod", 12)).ideal(5)
    with pytest.raises(MalformedIdeal):
        T = make_ring(("triangular", 2, ("Zmod", 4)))
        # the corner must contain both diagonal entries
        T.ideal(((1, 2), (0, 4)))
    for bad in [("Zmod", 1), ("Fpx", 4), ("triangular", 2, ("triangular", 2, ("Z",))), ("product", [])]:
        with pytest.raises(InvalidRing):
            make_ring(bad)


# brute-force agreement ------------------------------------------------------

def _closure_sets(raw, A, B):
    prod = oracle._ideal_product_set(raw, A, B)
    summ = frozenset(oracle._additive_closure(raw.add, raw.zero, set(A) | set(B)))
    return summ, prod, frozenset(A) & frozenset(B)


@pytest.mark.parametrize("spec", [("Zmod", m) for m in (2, 6, 12, 16, 30, 36, 60, 64)]
                         + [("triangular", 2, ("Zmod", 4)), ("triangular", 3, ("Zmod", 2))])
def test_ideal_ops_match_element_sets(spec):
    R = make_ring(spec)
    raw = oracle.raw_ring(R)
    ideals = all_ideals(R)
    sets = {I.data: raw.ideal_set(I.data) for I in ideals}
    for I, J in itertools.product(ideals, repeat=2):
        s, p, m = _closure_sets(raw, sets[I.data], sets[J.data])
        assert sets[ideal_combine(R, "sum", I, J).data] == s
        assert sets[ideal_combine(R, "product", I, J).data] == p
        assert sets[ideal_combine(R, "intersect", I, J).data] == m
        assert ideal_contains(R, I, J) == (sets[J.data] <= sets[I.data])
    for I in ideals:
        sq = oracle._ideal_product_set(raw, sets[I.data], sets[I.data])
        assert sets[ideal_power(R, I, 2).data] == sq


@given(hst.integers(2, 64), hst.data())
def test_powers_of_comaximal_pairs_stay_comaximal(m, data):
    R = make_ring(("Zmod", m))
    ds = [d for d in range(1, m + 1) if m % d == 0]
    a, b = data.draw(hst.sampled_from(ds)), data.draw(hst.sampled_from(ds))
    I, J = R.ideal(a), R.ideal(b)
    if is_unit_ideal(R, ideal_combine(R, "sum", I, J)):
        for s, t in itertools.product(range(1, 5), repeat=2):
            assert is_unit_ideal(R, ideal_combine(R, "sum", ideal_power(R, I, s), ideal_power(R, J, t)))
