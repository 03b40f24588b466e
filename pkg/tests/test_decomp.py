import itertools
import random
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as hst

from comax import oracle
from comax.decomp import (
    check_certificate,
    check_condition,
    decompose,
    decompose_crt,
    nontrivial_components,
    p_component_decompose,
    round_trip,
    triangular_quotient_decompose,
)
from comax.errors import ConditionNotEstablished, NotComaximal, NotTorsion, UnsupportedRing
from comax.modules import (
    annihilator,
    component,
    hom_from_vec,
    hom_space,
    is_internal_direct_sum,
    left_annihilator_of_ideal,
    present_module,
)
from comax.polys import Poly
from comax.rings import make_ring

from strategies import ring_module, zmod_family, zmod_module

Z = make_ring(("Z",))


def zgroup(*orders):
    g = len(orders)
    return present_module(Z, g, [[o if i == j else 0 for j in range(g)] for i, o in enumerate(orders)])


def orders(dec):
    return [p.component.cardinality for p in dec.parts]


def test_condition_examples():
    M = zgroup(2, 3)
    table = check_condition(M, [Z.ideal(2), Z.ideal(3), Z.ideal(5)])
    assert table.J == (0, 1) and table.exponents == (1, 1)
    with pytest.raises(ConditionNotEstablished) as err:
        check_condition(present_module(Z, 1), [Z.ideal(2), Z.ideal(3)])
    assert err.value.generator == 0
    table = check_condition(zgroup(4, 6), [Z.ideal(2), Z.ideal(3)])
    assert table.exponents == (2, 1)
    with pytest.raises(NotComaximal):
        check_condition(M, [Z.ideal(2), Z.ideal(4)])
    with pytest.raises(ValueError):
        check_condition(M, [Z.ideal(2)], max_exponent=0)


def test_decompose_examples():
    dec = decompose(zgroup(2, 3), [Z.ideal(2), Z.ideal(3), Z.ideal(5)])
    assert dec.verified and orders(dec) == [2, 3, 1]
    assert [p.is_zero for p in dec.parts] == [False, False, True]
    dec = decompose(zgroup(2, 9, 125), [Z.ideal(2), Z.ideal(3), Z.ideal(5)])
    assert [p.component.invariants.divisors for p in dec.parts] == [(2,), (9,), (125,)]
    assert [p.exponent for p in dec.parts] == [1, 2, 3]


def test_exponent_one_mode_rejects_higher_powers():
    with pytest.raises(ConditionNotEstablished):
        decompose(zgroup(4, 3), [Z.ideal(2), Z.ideal(3)], max_exponent=1)
    assert decompose(zgroup(2, 3), [Z.ideal(2), Z.ideal(3)], max_exponent=1).verified


# F2[x]: x acts on row vectors by a matrix ---------------------------------

def operator_module(A, p=2):
    """F_p^n with x acting on row vectors as ``v -> vA``."""
    R = make_ring(("Fpx", p))
    n = len(A)
    x = Poly([0, 1], p)
    rels = []
    for i in range(n):
        row = [Poly([(-A[i][j]) % p], p) for j in range(n)]
        row[i] = row[i] + x
        rels.append(row)
    return R, present_module(R, n, rels)


def _mat_pow_kernel(A, shift, p):
    """Row vectors v with v (A + shift I)^n = 0, by enumeration."""
    n = len(A)
    B = [[(A[i][j] + (shift if i == j else 0)) % p for j in range(n)] for i in range(n)]
    out = set()
    for v in itertools.product(range(p), repeat=n):
        w = list(v)
        for _ in range(n):
            w = [sum(w[i] * B[i][j] for i in range(n)) % p for j in range(n)]
        if not any(w):
            out.add(v)
    return out


def _vectors_in(M, sub, p):
    n = M.num_generators
    return {v for v in itertools.product(range(p), repeat=n)
            if sub.contains(M.element([Poly([c], p) for c in v]))}


def test_generalized_eigenspaces_over_f2():
    A = [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    R, M = operator_module(A)
    x = Poly([0, 1], 2)
    dec = decompose(M, [R.ideal(x), R.ideal(x + Poly([1], 2))])
    assert orders(dec) == [4, 4]
    assert _vectors_in(M, dec.parts[0].component, 2) == _mat_pow_kernel(A, 0, 2)
    assert _vectors_in(M, dec.parts[1].component, 2) == _mat_pow_kernel(A, 1, 2)


@settings(max_examples=20)
@given(hst.lists(hst.lists(hst.integers(0, 1), min_size=3, max_size=3), min_size=3, max_size=3))
def test_eigenspaces_match_enumeration(A):
    R, M = operator_module(A)
    x = Poly([0, 1], 2)
    X = [R.ideal(x), R.ideal(x + Poly([1], 2))]
    k0, k1 = _mat_pow_kernel(A, 0, 2), _mat_pow_kernel(A, 1, 2)
    if len(k0) * len(k1) < 2 ** len(A):
        # an irreducible factor other than x, x+1 survives in the char poly
        with pytest.raises(ConditionNotEstablished):
            decompose(M, X)
        return
    dec = decompose(M, X)
    assert _vectors_in(M, dec.parts[0].component, 2) == k0
    assert _vectors_in(M, dec.parts[1].component, 2) == k1


# exponent-one splitting ----------------------------------------------------

def test_crt_examples():
    dec = decompose_crt(zgroup(4, 6), [Z.ideal(4), Z.ideal(3)])
    assert [p.component.invariants.divisors for p in dec.parts] == [(2, 4), (3,)]
    assert dec.source is None
    dec = decompose_crt(present_module(Z, 1), [Z.ideal(2), Z.ideal(3)])
    assert dec.source is not None and dec.module.cardinality == 6
    assert orders(dec) == [2, 3]
    with pytest.raises(ValueError):
        decompose_crt(zgroup(2), [Z.ideal(2)])


# a three-block triangular ring [[R,0,0],[0,R,R],[0,0,R]] over R = Z is
# Z x T_2(Z); the corner acts trivially on the matrix module, and column c
# is a module through the c-th diagonal entry.
ZT = make_ring(("product", [("Z",), ("triangular", 2, ("Z",))]))
_T2_ZERO = ((0, 0), (0,))


def _column_annihilator_rows(col, quotient, g, slot):
    """Relations saying generator ``slot`` lives in column ``col`` as R/quotient."""
    def rel(x):
        row = [(0, _T2_ZERO)] * g
        row[slot] = x
        return row
    if col == 0:
        return [rel((quotient, _T2_ZERO)), rel((0, ((1, 0), (1,))))]
    kill_z = rel((1, _T2_ZERO))
    corner = rel((0, ((0, 1), (0,))))
    if col == 1:
        return [kill_z, corner, rel((0, ((quotient, 0), (0,)))), rel((0, ((0, 0), (1,))))]
    return [kill_z, corner, rel((0, ((1, 0), (0,)))), rel((0, ((0, 0), (quotient,))))]


def triangular_matrix_module(x, y, z_ideal_gen=1):
    """Module whose (row, col) entry is R / (sum of two of X, Y, Z) as laid out
    for the three-ideal triangular example; zero entries are dropped."""
    XY, XZ, YZ = gcd(x, y), gcd(x, z_ideal_gen), gcd(y, z_ideal_gen)
    layout = [[XZ, YZ, XY], [XY, YZ, XY], [YZ, XZ, YZ]]
    cells = [(c, q) for row in layout for c, q in enumerate(row) if q != 1]
    g = max(1, len(cells))
    rels = []
    for slot, (c, q) in enumerate(cells):
        rels += _column_annihilator_rows(c, q, g, slot)
    if not cells:
        rels = [[(1, ((1, 0), (1,)))]]
    M = present_module(ZT, g, rels)
    P1 = ZT.ideal((XY, ((XZ, 1), (XY,))))
    P2 = ZT.ideal((XZ, ((YZ, 1), (YZ,))))
    P3 = ZT.ideal((YZ, ((1, 1), (1,))))
    expected_ann = ZT.ideal((lcm(XY, XZ, YZ), ((lcm(XZ, YZ), 1), (lcm(XY, YZ),))))
    return M, [P1, P2, P3], expected_ann, layout


def test_triangular_example_degenerate_instance():
    M, P, ann, _ = triangular_matrix_module(2, 3)
    assert M.cardinality == 1
    assert all(I == ZT.unit_ideal() for I in P)
    dec = decompose_crt(M, P)
    assert all(p.is_zero for p in dec.parts)


def test_triangular_example_nondegenerate_instance():
    M, P, ann, layout = triangular_matrix_module(2, 2)
    assert M.cardinality == 8
    assert annihilator(M) == ann == P[0]
    dec = decompose_crt(M, P)
    assert dec.source is None
    assert orders(dec) == [8, 1, 1]
    for part, I in zip(dec.parts, P):
        assert part.component == left_annihilator_of_ideal(M, I)
    # every nonzero cell sits in the first block
    assert all(dec.parts[0].component.contains(y) for y in M.generators())


# nontriviality -------------------------------------------------------------

def test_certificates():
    M = zgroup(2, 3)
    X = [Z.ideal(2), Z.ideal(3), Z.ideal(5)]
    certs = nontrivial_components(M, X)
    assert [c.verdict for c in certs] == ["nonzero", "nonzero", "zero"]
    assert all(check_certificate(M, X, c) for c in certs)
    certs = nontrivial_components(zgroup(6), [Z.ideal(2), Z.ideal(3)])
    assert [c.verdict for c in certs] == ["nonzero", "nonzero"]
    zero = present_module(Z, 1, [[1]])
    assert {c.verdict for c in nontrivial_components(zero, X)} == {"zero"}


# triangular quotients and primary parts -------------------------------------

def test_triangular_quotient_examples():
    T = make_ring(("triangular", 2, ("Zmod", 2)))
    K = present_module(T, 1)
    dec = triangular_quotient_decompose(T, K)
    assert len(dec.parts) == 2
    assert dec.parts[0].component.cardinality * dec.parts[1].component.cardinality == dec.module.cardinality
    T1 = make_ring(("triangular", 1, ("Z",)))
    K1 = present_module(T1, 1, [[((5,),)]])
    dec = triangular_quotient_decompose(T1, K1)
    assert len(dec.parts) == 1 and dec.module.cardinality == K1.cardinality == 5
    T3 = make_ring(("triangular", 3, ("Zmod", 4)))
    dec = triangular_quotient_decompose(T3, present_module(T3, 1))
    assert len(dec.parts) == 3 and not any(p.is_zero for p in dec.parts)
    with pytest.raises(UnsupportedRing):
        triangular_quotient_decompose(Z, present_module(Z, 1))


def test_primary_parts():
    dec = p_component_decompose(zgroup(360))
    assert [p.component.invariants.divisors for p in dec.parts] == [(8,), (9,), (5,)]
    assert len(p_component_decompose(zgroup(2)).parts) == 1
    dec = p_component_decompose(zgroup(12, 18))
    assert [p.component.invariants.divisors for p in dec.parts] == [(2, 4), (3, 9)]
    with pytest.raises(NotTorsion):
        p_component_decompose(present_module(Z, 1))
    with pytest.raises(UnsupportedRing):
        p_component_decompose(zmod_module(random.Random(0), 6))


# properties -----------------------------------------------------------------

@settings(max_examples=30)
@given(hst.integers(0, 10**6), hst.sampled_from([12, 24, 36, 60, 72]))
def test_decomposition_properties_over_zmod(seed, m):
    rng = random.Random(seed)
    M = zmod_module(rng, m, max_ambient=3000)
    X = zmod_family(rng, m, covering=True)
    dec = decompose(M, X)
    assert is_internal_direct_sum(M, dec.components)
    assert round_trip(M, X, [p.exponent for p in dec.parts])
    total = 1
    for p in dec.parts:
        assert p.component == component(M, p.ideal)
        total *= p.component.cardinality
    assert total == M.cardinality
    model = oracle.enumerate_model(M)
    for p in dec.parts:
        assert oracle.structured_set(model, p.component) == oracle.component(model, p.ideal)


@settings(max_examples=20)
@given(hst.integers(0, 10**6))
def test_components_are_fully_invariant(seed):
    rng = random.Random(seed)
    M = zmod_module(rng, 36, max_ambient=1500)
    X = zmod_family(rng, 36, 2, covering=True)
    dec = decompose(M, X)
    lattice = hom_space(M, M)
    for _ in range(4):
        v = [0] * (M.num_generators * M.dim)
        for row in lattice:
            c = rng.randrange(36)
            v = [(a + c * b) % 36 for a, b in zip(v, row)]
        h = hom_from_vec(M, M, v)
        assert h.is_valid()
        for p in dec.parts:
            assert h.image(p.component) <= p.component


@settings(max_examples=15)
@given(hst.integers(0, 10**6), hst.integers(1, 3), hst.lists(hst.integers(1, 3), min_size=3, max_size=3))
def test_integer_torsion_bookkeeping(seed, g, es):
    rng = random.Random(seed)
    ords = [2 ** rng.randint(0, es[0]) * 3 ** rng.randint(0, es[1]) * 5 ** rng.randint(0, es[2]) for _ in range(g)]
    M = zgroup(*ords)
    dec = p_component_decompose(M)
    total = 1
    divs = []
    for p in dec.parts:
        total *= p.component.cardinality
        divs += list(p.component.invariants.divisors)
    assert total == M.cardinality
    from comax.serialize import elementary_divisors
    assert sorted(elementary_divisors(M.invariants)) == sorted(
        q for d in divs for q in elementary_divisors(type(M.invariants)((d,), 0, d)))


@settings(max_examples=10)
@given(hst.integers(0, 10**6))
def test_triangular_modules_decompose_like_the_oracle(seed):
    rng = random.Random(seed)
    T = make_ring(("triangular", 2, ("Zmod", 2)))
    K = ring_module(rng, T, 1)
    dec = triangular_quotient_decompose(T, K)
    model = oracle.enumerate_model(dec.module)
    for p in dec.parts:
        assert oracle.structured_set(model, p.component) == oracle.left_annihilator(model, p.ideal)
