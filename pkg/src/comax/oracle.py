"""Brute-force finite models.

Everything here is computed from definitions by exhaustive enumeration over
element tables, using its own arithmetic on raw payloads.  Nothing is
imported from the structured ring/module code except the descriptor
classes, so agreement between the two is meaningful evidence.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .config import element_cap
from .errors import BudgetExceeded, UnsupportedRing, VerificationError
from .ring_core import Integers, ModularIntegers, Product, Ring, TriangularMatrix


# ---------------------------------------------------------------------------
# raw rings

@dataclass
class RawRing:
    elements: list
    add: Callable
    mul: Callable
    neg: Callable
    zero: Any
    one: Any
    ideal_set: Callable  # canonical ideal payload -> frozenset of elements


def _raw_zmod(m: int) -> RawRing:
    def ideal_set(d):
        d = math.gcd(d, m)
        return frozenset(range(0, m, d)) if d else frozenset({0})

    return RawRing(
        list(range(m)),
        lambda a, b: (a + b) % m,
        lambda a, b: (a * b) % m,
        lambda a: (-a) % m,
        0,
        1 % m,
        ideal_set,
    )


def _raw_triangular(n: int, B: RawRing) -> RawRing:
    pos = [(i, j) for i in range(n) for j in range(i, n)]

    def build(entries):
        return tuple(tuple(entries.get((i, j), B.zero) for j in range(n)) for i in range(n))

    def add(a, b):
        return tuple(tuple(B.add(x, y) for x, y in zip(r, s)) for r, s in zip(a, b))

    def neg(a):
        return tuple(tuple(B.neg(x) for x in r) for r in a)

    def mul(a, b):
        out = {}
        for i, k in pos:
            acc = B.zero
            for j in range(n):
                acc = B.add(acc, B.mul(a[i][j], b[j][k]))
            out[(i, k)] = acc
        return build(out)

    elements = [build(dict(zip(pos, vals))) for vals in itertools.product(B.elements, repeat=len(pos))]

    def ideal_set(arr):
        sets = [B.ideal_set(arr[i][j]) for i, j in pos]
        return frozenset(build(dict(zip(pos, vals))) for vals in itertools.product(*sets))

    return RawRing(elements, add, mul, neg, build({}), build({(i, i): B.one for i in range(n)}), ideal_set)


def _raw_product(fs: list[RawRing]) -> RawRing:
    def ideal_set(data):
        return frozenset(itertools.product(*(f.ideal_set(d) for f, d in zip(fs, data))))

    return RawRing(
        [tuple(t) for t in itertools.product(*(f.elements for f in fs))],
        lambda a, b: tuple(f.add(x, y) for f, x, y in zip(fs, a, b)),
        lambda a, b: tuple(f.mul(x, y) for f, x, y in zip(fs, a, b)),
        lambda a: tuple(f.neg(x) for f, x in zip(fs, a)),
        tuple(f.zero for f in fs),
        tuple(f.one for f in fs),
        ideal_set,
    )


def raw_ring(R: Ring, integer_modulus: int | None = None) -> RawRing:
    """Element tables for a finite ring.  ``Integers`` is only accepted with
    an ``integer_modulus`` N, standing in for Z acting on an N-torsion module."""
    if isinstance(R, ModularIntegers):
        return _raw_zmod(R.modulus)
    if isinstance(R, Integers):
        if not integer_modulus:
            raise UnsupportedRing("Z is infinite; a module exponent is required")
        return _raw_zmod(integer_modulus)
    if isinstance(R, TriangularMatrix):
        return _raw_triangular(R.n, raw_ring(R.base, integer_modulus))
    if isinstance(R, Product):
        return _raw_product([raw_ring(f, integer_modulus) for f in R.factors])
    raise UnsupportedRing(f"oracle cannot enumerate {R.label()}")


def _bareiss_det(A) -> int:
    A = [list(r) for r in A]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def integer_module_order(g: int, relations) -> int:
    """gcd of the maximal minors of an integer relation matrix; 0 when the
    module is infinite."""
    rows = [list(r) for r in relations]
    if g == 0:
        return 1
    acc = 0
    for sel in itertools.combinations(range(len(rows)), g):
        acc = math.gcd(acc, _bareiss_det([rows[i] for i in sel]))
        if acc == 1:
            break
    return acc


# ---------------------------------------------------------------------------

@dataclass
class FiniteModel:
    ring: RawRing
    reps: list            # coset representatives (tuples over the raw ring)
    label: dict           # every tuple of R^g -> coset id
    g: int
    descriptor: Ring
    _act: dict = field(default_factory=dict, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.reps)

    def zero(self) -> int:
        return self.label[tuple([self.ring.zero] * self.g)]

    def madd(self, a: int, b: int) -> int:
        R = self.ring
        return self.label[tuple(R.add(x, y) for x, y in zip(self.reps[a], self.reps[b]))]

    def act(self, a: int, r) -> int:
        key = (a, r)
        out = self._act.get(key)
        if out is None:
            R = self.ring
            out = self.label[tuple(R.mul(x, r) for x in self.reps[a])]
            self._act[key] = out
        return out

    def of(self, coords) -> int:
        return self.label[tuple(coords)]

    def rep(self, a: int) -> tuple:
        return self.reps[a]


def _additive_closure(add, zero, gens) -> set:
    out = {zero}
    frontier = [zero]
    gens = list(set(gens))
    while frontier:
        nxt = []
        for x in frontier:
            for gen in gens:
                y = add(x, gen)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def enumerate_model(obj, seed: int = 0) -> FiniteModel:
    """Build full element tables for a finite ring (as a right module over
    itself) or for a finitely presented module."""
    from .modules import FPModule

    cap = element_cap()
    if isinstance(obj, Ring):
        g, relations, R = 1, [], obj
    elif isinstance(obj, FPModule):
        g, relations, R = obj.num_generators, [list(r) for r in obj.relations], obj.ring
    else:
        raise TypeError(f"cannot enumerate {obj!r}")
    N = None
    if _mentions_integers(R):
        if not isinstance(R, Integers):
            raise UnsupportedRing("oracle handles Z only on its own")
        N = integer_module_order(g, relations)
        if N == 0:
            raise UnsupportedRing("module over Z is infinite")
        if N == 1:
            N = 1
    if N == 1:
        raw = RawRing([0], lambda a, b: 0, lambda a, b: 0, lambda a: 0, 0, 0, lambda d: frozenset({0}))
        relations = [[0] * g for _ in relations]
    else:
        raw = raw_ring(R, N)
        if N:
            relations = [[x % N for x in r] for r in relations]
    if len(raw.elements) ** g > cap:
        raise BudgetExceeded(f"{len(raw.elements)}^{g} elements exceed the cap {cap}")

    def vadd(u, v):
        return tuple(raw.add(x, y) for x, y in zip(u, v))

    zero = tuple([raw.zero] * g)
    gens = [tuple(raw.mul(x, r) for x in rel) for rel in relations for r in raw.elements]
    K = _additive_closure(vadd, zero, gens)
    label: dict = {}
    reps = []
    for v in itertools.product(raw.elements, repeat=g):
        if v in label:
            continue
        cid = len(reps)
        reps.append(v)
        for k in K:
            label[vadd(v, k)] = cid
    model = FiniteModel(raw, reps, label, g, R)
    _spot_check(model, seed)
    return model


def _mentions_integers(R: Ring) -> bool:
    if isinstance(R, Integers):
        return True
    if isinstance(R, Product):
        return any(_mentions_integers(f) for f in R.factors)
    if isinstance(R, TriangularMatrix):
        return _mentions_integers(R.base)
    return False


def _spot_check(model: FiniteModel, seed: int, trials: int = 20):
    rng = random.Random(seed)
    R = model.ring
    E = R.elements
    for _ in range(trials):
        a, b, c = rng.choice(E), rng.choice(E), rng.choice(E)
        if R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c)):
            raise VerificationError("raw ring fails left distributivity")
        if R.mul(R.add(a, b), c) != R.add(R.mul(a, c), R.mul(b, c)):
            raise VerificationError("raw ring fails right distributivity")
        m, n = rng.randrange(model.size), rng.randrange(model.size)
        if model.act(model.madd(m, n), a) != model.madd(model.act(m, a), model.act(n, a)):
            raise VerificationError("module action is not additive")


# ---------------------------------------------------------------------------
# definitional queries

def _ideal_elements(model: FiniteModel, I) -> frozenset:
    data = I.data if hasattr(I, "data") else I
    return model.ring.ideal_set(data)


def _ideal_product_set(R: RawRing, A, B) -> frozenset:
    return frozenset(_additive_closure(R.add, R.zero, {R.mul(a, b) for a in A for b in B}))


def _stable_power(R: RawRing, A) -> frozenset:
    P = frozenset(A)
    while True:
        Q = _ideal_product_set(R, P, A)
        if Q == P:
            return P
        P = Q


def _submodule_generated(model: FiniteModel, a: int) -> set:
    """Elements of ``aR``."""
    return {model.act(a, r) for r in model.ring.elements}


def element_annihilator(model: FiniteModel, a: int, cyclic: bool = True) -> frozenset:
    """``r_R(aR)`` (or ``r_R(a)`` with ``cyclic=False``)."""
    z = model.zero()
    src = _submodule_generated(model, a) if cyclic else {a}
    return frozenset(r for r in model.ring.elements if all(model.act(b, r) == z for b in src))


def left_annihilator(model: FiniteModel, X) -> frozenset:
    z = model.zero()
    Xs = _ideal_elements(model, X) if not isinstance(X, (set, frozenset)) else X
    return frozenset(m for m in range(model.size) if all(model.act(m, x) == z for x in Xs))


def component(model: FiniteModel, X) -> frozenset:
    """Union of ``l_M(X^k)``; the powers of a finite ideal settle, and the
    union is the annihilator of the settled power."""
    Xs = _ideal_elements(model, X) if not isinstance(X, (set, frozenset)) else X
    return left_annihilator(model, _stable_power(model.ring, Xs))


def _meet(sets):
    out = None
    for s in sets:
        out = set(s) if out is None else out & s
    return frozenset(out)


def _family_meets(model: FiniteModel, X, radical: bool) -> list[frozenset]:
    R = model.ring
    stable = [_stable_power(R, _ideal_elements(model, I)) for I in X]
    out = []
    for size in range(1, len(stable) + 1):
        for J in itertools.combinations(range(len(stable)), size):
            B = _meet([stable[j] for j in J])
            out.append(_stable_power(R, B) if radical else B)
    return out


def _meeting(model: FiniteModel, meets) -> frozenset:
    out = set()
    for m in range(model.size):
        ann = element_annihilator(model, m)
        if any(B <= ann for B in meets):
            out.add(m)
    return frozenset(out)


def gamma(model: FiniteModel, X) -> frozenset:
    """``{m : cap_{j in J} X_j^{k_j} <= r_R(mR)`` for some nonempty J, k}``.
    Raising exponents only shrinks the intersection, so the settled powers
    decide every choice of k."""
    meets = _family_meets(model, X, radical=False)
    return _meeting(model, meets)


def rho(model: FiniteModel, X) -> frozenset:
    """``{m : (cap_J X_j^{k_j})^n <= r_R(mR)}`` for some J, k, n."""
    meets = _family_meets(model, X, radical=True)
    return _meeting(model, meets)


def right_ideals(model: FiniteModel) -> list[frozenset]:
    """Every right ideal is a sum of cyclic ones ``aR``; close the cyclic
    right ideals under sums."""
    if "right_ideals" in model._memo:
        return model._memo["right_ideals"]
    R = model.ring
    E = R.elements
    cyclic = {frozenset(_additive_closure(R.add, R.zero, {R.mul(a, r) for r in E})) for a in E}
    seen = {frozenset({R.zero})}
    frontier = list(seen)
    while frontier:
        nxt = []
        for I in frontier:
            for C in cyclic:
                if C <= I:
                    continue
                J = frozenset(R.add(x, y) for x in I for y in C)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    out = sorted(seen, key=lambda s: (len(s), sorted(map(repr, s))))
    model._memo["right_ideals"] = out
    return out


def essential_right_ideals(model: FiniteModel) -> list[frozenset]:
    R = model.ring
    zero = frozenset({R.zero})
    ideals = right_ideals(model)
    nonzero = [I for I in ideals if I != zero]
    return [L for L in nonzero if all((L & K) != zero for K in nonzero)]


def singular_submodule(model: FiniteModel) -> frozenset:
    ess = set(essential_right_ideals(model))
    return frozenset(m for m in range(model.size) if element_annihilator(model, m, cyclic=False) in ess)


QUERIES = {
    "element_annihilator": element_annihilator,
    "left_annihilator": left_annihilator,
    "component": component,
    "gamma": gamma,
    "rho": rho,
    "right_ideals": right_ideals,
    "essential_right_ideals": essential_right_ideals,
    "singular_submodule": singular_submodule,
}


def brute_eval(model: FiniteModel, query: str, *args):
    """Dispatch a definitional query.  Module-valued answers come back as
    sets of coset representatives."""
    fn = QUERIES.get(query)
    if fn is None:
        raise ValueError(f"unknown oracle query {query!r}")
    if query == "element_annihilator":
        a = args[0] if isinstance(args[0], int) else model.of(args[0])
        return fn(model, a, *args[1:])
    out = fn(model, *args)
    if query in ("left_annihilator", "component", "gamma", "rho", "singular_submodule"):
        return frozenset(model.rep(i) for i in out)
    return out


def structured_set(model: FiniteModel, sub) -> frozenset:
    """Coset ids whose representative lies in a structured submodule; used
    to compare the two routes element by element."""
    M = sub.ambient
    return frozenset(i for i in range(model.size) if sub.contains(M.element(list(model.reps[i]))))


# public name; shadows the builtin inside this module only
enumerate = enumerate_model  # noqa: A001
