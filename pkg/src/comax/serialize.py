"""JSON encodings of rings, ideals, elements, modules and reports.

Ideal encodings mirror the canonical internal forms:
``{"gen": n}`` over Z, ``{"div": d}`` over Z/m, ``{"gen": [c0, c1, ...]}``
over F_p[x] (little-endian), ``{"factors": [...]}`` over products and
``{"entries": [[...], [...]]}`` (upper-triangular rows of base encodings)
over triangular rings.
"""
from __future__ import annotations

from . import arith, polys
from .errors import InvalidRing, MalformedIdeal, RingMismatch
from .modules import FPModule, ModuleInvariants, Submodule, present_module
from .polys import Poly
from .ring_core import (
    Ideal,
    Integers,
    ModularIntegers,
    PolyOverPrimeField,
    Product,
    Ring,
    TriangularMatrix,
    ideal_power,
    ideal_product_all,
)


# rings ---------------------------------------------------------------------

def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InvalidRing(f"ring must be an object with a 'type', got {obj!r}")
    t = obj["type"]
    if t == "Z":
        return Integers()
    if t == "Zmod":
        return ModularIntegers(_int(obj.get("modulus"), "modulus"))
    if t == "Fpx":
        return PolyOverPrimeField(_int(obj.get("p"), "p"))
    if t == "product":
        fs = obj.get("factors")
        if not isinstance(fs, list) or not fs:
            raise InvalidRing("product needs a nonempty 'factors' list")
        return Product(tuple(ring_from_json(f) for f in fs))
    if t == "triangular":
        return TriangularMatrix(_int(obj.get("n"), "n"), ring_from_json(obj.get("base")))
    raise InvalidRing(f"unknown ring type {t!r}")


def ring_to_json(R: Ring) -> dict:
    if isinstance(R, Integers):
        return {"type": "Z"}
    if isinstance(R, ModularIntegers):
        return {"type": "Zmod", "modulus": R.modulus}
    if isinstance(R, PolyOverPrimeField):
        return {"type": "Fpx", "p": R.p}
    if isinstance(R, Product):
        return {"type": "product", "factors": [ring_to_json(f) for f in R.factors]}
    if isinstance(R, TriangularMatrix):
        return {"type": "triangular", "n": R.n, "base": ring_to_json(R.base)}
    raise InvalidRing(f"cannot encode {R!r}")


def _int(x, name):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidRing(f"'{name}' must be an integer, got {x!r}")
    return x


# ideals --------------------------------------------------------------------

def _ideal_data(R: Ring, obj):
    if not isinstance(obj, dict):
        raise MalformedIdeal(f"ideal encoding must be an object, got {obj!r}")
    if isinstance(R, Integers):
        if set(obj) != {"gen"}:
            raise MalformedIdeal(f"ideal of Z is {{'gen': n}}, got {obj!r}")
        return obj["gen"]
    if isinstance(R, ModularIntegers):
        if set(obj) != {"div"}:
            raise MalformedIdeal(f"ideal of {R.label()} is {{'div': d}}, got {obj!r}")
        return obj["div"]
    if isinstance(R, PolyOverPrimeField):
        if set(obj) != {"gen"} or not isinstance(obj["gen"], list):
            raise MalformedIdeal(f"ideal of {R.label()} is {{'gen': [coeffs]}}, got {obj!r}")
        return Poly(obj["gen"], R.p)
    if isinstance(R, Product):
        fs = obj.get("factors")
        if set(obj) != {"factors"} or not isinstance(fs, list) or len(fs) != len(R.factors):
            raise MalformedIdeal(f"ideal of {R.label()} needs {len(R.factors)} factor encodings")
        return tuple(_ideal_data(f, x) for f, x in zip(R.factors, fs))
    if isinstance(R, TriangularMatrix):
        rows = obj.get("entries")
        n = R.n
        if set(obj) != {"entries"} or not isinstance(rows, list) or len(rows) != n:
            raise MalformedIdeal(f"ideal of {R.label()} needs {n} rows of entries")
        arr = {}
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n - i:
                raise MalformedIdeal(f"row {i} must hold {n - i} entries")
            for j, x in enumerate(row, start=i):
                arr[(i, j)] = R.base.ideal_normalize(_ideal_data(R.base, x))
        return R._iarr(arr)
    raise MalformedIdeal(f"no ideal encoding for {R.label()}")


def ideal_from_json(R: Ring, obj) -> Ideal:
    return R.ideal(_ideal_data(R, obj))


def ideal_to_json(R: Ring, data) -> dict:
    if isinstance(data, Ideal):
        data = data.data
    if isinstance(R, Integers):
        return {"gen": data}
    if isinstance(R, ModularIntegers):
        return {"div": data}
    if isinstance(R, PolyOverPrimeField):
        return {"gen": list(data.coeffs)}
    if isinstance(R, Product):
        return {"factors": [ideal_to_json(f, x) for f, x in zip(R.factors, data)]}
    if isinstance(R, TriangularMatrix):
        return {"entries": [[ideal_to_json(R.base, data[i][j]) for j in range(i, R.n)] for i in range(R.n)]}
    raise MalformedIdeal(f"no ideal encoding for {R.label()}")


# elements ------------------------------------------------------------------

def element_from_json(R: Ring, obj):
    if isinstance(R, Product):
        if not isinstance(obj, list) or len(obj) != len(R.factors):
            raise RingMismatch(f"{obj!r} is not an element of {R.label()}")
        return tuple(element_from_json(f, x) for f, x in zip(R.factors, obj))
    if isinstance(R, TriangularMatrix):
        if not isinstance(obj, list) or len(obj) != R.n:
            raise RingMismatch(f"{obj!r} is not an element of {R.label()}")
        rows = []
        for i, row in enumerate(obj):
            if not isinstance(row, list):
                raise RingMismatch(f"row {i} of {obj!r} is not a list")
            rows.append([element_from_json(R.base, x) for x in row])
        return R.coerce(rows)
    return R.coerce(obj)


def element_to_json(R: Ring, x):
    if isinstance(R, Product):
        return [element_to_json(f, c) for f, c in zip(R.factors, x)]
    if isinstance(R, TriangularMatrix):
        return [[element_to_json(R.base, x[i][j]) for j in range(i, R.n)] for i in range(R.n)]
    if isinstance(R, PolyOverPrimeField):
        return list(x.coeffs)
    if isinstance(R, ModularIntegers):
        return x % R.modulus
    return x


# modules -------------------------------------------------------------------

def module_from_json(R: Ring, obj) -> FPModule:
    if not isinstance(obj, dict) or "generators" not in obj:
        raise ValueError("module needs a 'generators' count")
    g = obj["generators"]
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError(f"'generators' must be a nonnegative integer, got {g!r}")
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise ValueError("'relations' must be a list of rows")
    rows = []
    for r in rels:
        if not isinstance(r, list) or len(r) != g:
            raise ValueError(f"relation {r!r} must have {g} entries")
        rows.append([element_from_json(R, x) for x in r])
    return present_module(R, g, rows)


def module_to_json(M: FPModule) -> dict:
    R = M.ring
    return {
        "generators": M.num_generators,
        "relations": [[element_to_json(R, x) for x in r] for r in M.relations],
    }


def _scalar_to_json(x):
    if isinstance(x, Poly):
        return list(x.coeffs)
    return x


def elementary_divisors(inv: ModuleInvariants) -> list:
    """Prime-power pieces of the nonzero invariant factors, sorted."""
    out = []
    for d in inv.divisors:
        if isinstance(d, Poly):
            if d.degree > 0:
                out.extend((f ** e).monic() for f, e in polys.factor(d))
        elif d:
            out.extend(p ** e for p, e in arith.factorint(d).items())
    out.sort(key=lambda x: (x.degree, x.coeffs) if isinstance(x, Poly) else (x,))
    return [_scalar_to_json(x) for x in out]


def invariants_to_json(inv: ModuleInvariants) -> dict:
    return {
        "invariant_factors": [_scalar_to_json(d) for d in inv.divisors if not _is_zero(d)],
        "elementary_divisors": elementary_divisors(inv),
        "free_rank": inv.free_rank,
        "order": inv.cardinality,
    }


def _is_zero(d):
    return (not d.coeffs) if isinstance(d, Poly) else d == 0


def submodule_to_json(N: Submodule) -> dict:
    R = N.ambient.ring
    return {
        "generators": [[element_to_json(R, x) for x in e.coords] for e in N.generators()],
        "invariants": invariants_to_json(N.invariants),
        "zero": N.is_zero(),
    }


def witness_to_json(pou) -> dict:
    """Partition-of-unity witnesses plus an independent re-check: the sum is
    1 and each ``e_i`` lies in the product of the other target powers."""
    R = pou.ring
    targets = [ideal_power(R, I, k) for I, k in zip(pou.ideals, pou.exponents)]
    members = []
    for i, e in enumerate(pou.witnesses):
        others = ideal_product_all(R, targets[:i] + targets[i + 1:])
        members.append(R.i_member(others.data, e))
    return {
        "exponents": list(pou.exponents),
        "elements": [element_to_json(R, e) for e in pou.witnesses],
        "sum_is_one": R.sum(pou.witnesses) == R.one(),
        "memberships": members,
    }


def witness_check(R: Ring, ideals, exponents, elements) -> dict:
    """Re-verify user-supplied witnesses."""
    targets = [ideal_power(R, I, k) for I, k in zip(ideals, exponents)]
    members = []
    for i, e in enumerate(elements):
        others = ideal_product_all(R, targets[:i] + targets[i + 1:])
        members.append(R.i_member(others.data, e))
    return {"sum_is_one": R.sum(elements) == R.one(), "memberships": members}
