import ast
import pathlib

import pytest

from comax import oracle
from comax.errors import BudgetExceeded, UnsupportedRing
from comax.modules import present_module
from comax.rings import make_ring


def test_enumeration_sizes():
    assert oracle.enumerate(make_ring(("Zmod", 12))).size == 12
    assert oracle.enumerate(make_ring(("triangular", 2, ("Zmod", 2)))).size == 8
    Z = make_ring(("Z",))
    assert oracle.enumerate(present_module(Z, 2, [[2, 0], [0, 3]])).size == 6
    R = make_ring(("product", [("Zmod", 4), ("Zmod", 3)]))
    assert oracle.enumerate(present_module(R, 1)).size == 12


def test_definitional_queries():
    R = make_ring(("Zmod", 12))
    model = oracle.enumerate(present_module(R, 1))
    comp = oracle.brute_eval(model, "component", R.ideal(2))
    assert comp == {(0,), (3,), (6,), (9,)}
    everything = oracle.brute_eval(model, "left_annihilator", R.zero_ideal())
    assert len(everything) == 12
    assert oracle.brute_eval(model, "element_annihilator", (4,)) == {0, 3, 6, 9}
    R6 = make_ring(("Zmod", 6))
    ring_model = oracle.enumerate(R6)
    assert len(oracle.brute_eval(ring_model, "right_ideals")) == 4
    assert oracle.brute_eval(ring_model, "essential_right_ideals") == [frozenset(range(6))]
    with pytest.raises(ValueError):
        oracle.brute_eval(model, "no_such_query")


def test_singular_submodule():
    # over Z/4 the annihilator of 2 is 2Z/4, which is essential
    R = make_ring(("Zmod", 4))
    model = oracle.enumerate(present_module(R, 1))
    assert oracle.brute_eval(model, "singular_submodule") == {(0,), (2,)}
    # Z/6 is semisimple: nothing is singular
    R = make_ring(("Zmod", 6))
    model = oracle.enumerate(present_module(R, 1))
    assert oracle.brute_eval(model, "singular_submodule") == {(0,)}


def test_caps_and_unsupported_rings(monkeypatch):
    monkeypatch.setenv("COMAX_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        oracle.enumerate(present_module(make_ring(("Zmod", 12)), 2))
    monkeypatch.delenv("COMAX_BUDGET")
    with pytest.raises(UnsupportedRing):
        oracle.enumerate(make_ring(("Fpx", 2)))
    with pytest.raises(UnsupportedRing):
        oracle.enumerate(make_ring(("Z",)))
    with pytest.raises(UnsupportedRing):
        oracle.enumerate(present_module(make_ring(("Z",)), 1))


def test_integer_modules_reduce_to_a_finite_quotient():
    Z = make_ring(("Z",))
    assert oracle.integer_module_order(2, [[4, 2], [0, 6]]) == 24
    assert oracle.integer_module_order(2, [[1, 0]]) == 0
    model = oracle.enumerate(present_module(Z, 2, [[4, 2], [0, 6]]))
    assert model.size == 24


def test_imports_only_ring_descriptors():
    tree = ast.parse(pathlib.Path(oracle.__file__).read_text())
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
            if node.module == "ring_core":
                assert {a.name for a in node.names} <= {
                    "Integers", "ModularIntegers", "Product", "Ring", "TriangularMatrix"}
    assert imported & {"linalg", "decomp", "torsion", "nilary", "arith", "polys", "rings"} == set()


def test_runs_with_structured_arithmetic_disabled(monkeypatch):
    R = make_ring(("triangular", 2, ("Zmod", 4)))
    M = present_module(R, 1, [[((2, 1), (0,))]])
    X = [R.ideal(((2, 1), (1,))), R.ideal(((1, 1), (2,)))]
    model_before = oracle.enumerate(M)
    expected = oracle.gamma(model_before, X), oracle.rho(model_before, X)
    from comax import ring_core

    def boom(*args, **kwargs):
        raise AssertionError("oracle touched structured arithmetic")

    for cls in (ring_core.ModularIntegers, ring_core.TriangularMatrix):
        for name in ("add", "mul", "neg", "i_sum", "i_prod", "i_meet", "i_contains", "i_member", "elements"):
            monkeypatch.setattr(cls, name, boom)
    model = oracle.enumerate(M)
    assert (oracle.gamma(model, X), oracle.rho(model, X)) == expected
    assert len(oracle.right_ideals(oracle.enumerate(R))) > 0


def test_raw_triangular_multiplication_matches_definition():
    R = make_ring(("triangular", 2, ("Zmod", 3)))
    raw = oracle.raw_ring(R)
    a = ((1, 2), (0, 1))
    b = ((2, 1), (0, 2))
    # [[1,2],[0,1]] [[2,1],[0,2]] = [[2, 1+4], [0, 2]]
    assert raw.mul(a, b) == ((2, 2), (0, 2))
