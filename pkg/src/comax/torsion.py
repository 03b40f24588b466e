"""The preradical gamma (sum of components), its radical closure rho, the
torsion/torsion-free split over principal ideal domains, and the
essential-right-ideal stability condition on finite rings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import config, linalg
from .decomp import _validate_family
from .errors import BudgetExceeded, UnsupportedRing, VerificationError
from .modules import (
    FPModule,
    Submodule,
    component,
    is_internal_direct_sum,
    submodule_as_module,
)
from .polys import Poly, gcd as poly_gcd
from .ring_core import (
    Ideal,
    Integers,
    PolyOverPrimeField,
    Ring,
    ideal_intersect_all,
    ideal_power,
    ideal_product,
)


def gamma(M: FPModule, X: Sequence[Ideal]) -> Submodule:
    """Sum of the components ``C(X_i)``; the sum is checked to be direct."""
    X = _validate_family(M, X)
    comps = [component(M, I) for I in X]
    total = M.zero_submodule()
    for c in comps:
        total = total + c
    for i, c in enumerate(comps):
        rest = M.zero_submodule()
        for j, d in enumerate(comps):
            if j != i:
                rest = rest + d
        if not (c & rest).is_zero():
            raise VerificationError("components of a comaximal family overlap")
    return total


def rho(M: FPModule, X: Sequence[Ideal]) -> Submodule:
    """Component of the intersection of the family."""
    X = _validate_family(M, X)
    out = component(M, ideal_intersect_all(M.ring, X))
    return out


@dataclass(frozen=True, eq=False)
class TorsionReport:
    module: FPModule
    ideals: tuple
    gamma: Submodule
    rho: Submodule
    pretorsion_free: bool
    split: tuple | None = None


def torsion_report(M: FPModule, X: Sequence[Ideal], with_split: bool = False) -> TorsionReport:
    g = gamma(M, X)
    r = rho(M, X)
    if not g.issubset(r):
        raise VerificationError("gamma(M) is not inside rho(M)")
    split = torsion_split(M, X) if with_split else None
    return TorsionReport(M, tuple(X), g, r, g.is_zero(), split)


def _x_part(D, d, x):
    """Largest divisor of ``d`` built from primes dividing ``x``."""
    part = D.one
    g = D.canon(D.gcdex(d, x)[0])
    while not D.is_unit(g):
        part = part * g
        d = D.quo(d, g)
        g = D.canon(D.gcdex(d, g)[0])
    return part


def torsion_split(M: FPModule, X: Sequence[Ideal]) -> tuple[Submodule, Submodule]:
    """``(gamma(M), F)`` with ``M = gamma(M) (+) F`` and ``gamma(F) = 0``.

    Works in Smith coordinates: each cyclic summand ``R/(d)`` splits as the
    part killed by the X-primary factor of ``d`` (inside gamma) and the part
    generated by that factor (outside it); free summands go to ``F``.
    """
    R = M.ring
    if not isinstance(R, (Integers, PolyOverPrimeField)):
        raise UnsupportedRing("torsion_split needs a module over Z or F_p[x]")
    X = _validate_family(M, X)
    D = linalg.domain_for(R.scalar_key)
    g = M.num_generators
    G = gamma(M, X)
    if any(D.is_zero(I.data) for I in X):
        F = M.zero_submodule()
    else:
        xprod = D.one
        for I in X:
            xprod = xprod * I.data
        rel = [list(r) for r in M.relation_lattice]
        if rel:
            _, S, _, Vinv = linalg.smith_form(rel, D)
            diag = [S[i][i] if i < len(S) else D.zero for i in range(g)]
        else:
            Vinv = [[D.one if i == j else D.zero for j in range(g)] for i in range(g)]
            diag = [D.zero] * g
        vecs = []
        for j in range(g):
            f = Vinv[j]
            d = diag[j]
            if D.is_zero(d):
                vecs.append(tuple(f))
            elif not D.is_unit(d):
                a = _x_part(D, d, xprod)
                vecs.append(tuple(a * x for x in f))
        F = M.span_of_vecs(vecs)
    if not is_internal_direct_sum(M, [G, F]):
        raise VerificationError("gamma(M) and F do not split M")
    P = submodule_as_module(F).module
    if not gamma(P, [P.ring.ideal(I.data) for I in X]).is_zero():
        raise VerificationError("gamma(F) is not zero")
    if not rho(P, [P.ring.ideal(I.data) for I in X]).is_zero():
        raise VerificationError("rho(F) is not zero")
    return G, F


# ---------------------------------------------------------------------------
# right ideals of a finite ring, as bitmasks over the element table

@dataclass(frozen=True)
class RightIdealLattice:
    ring: Ring
    elements: tuple
    ideals: tuple  # bitmasks
    essential: tuple
    minimal: tuple
    socle: int


_LATTICES: dict = {}


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _additive_span(tab, gens, zero_idx) -> int:
    members = {zero_idx}
    add = tab.add
    for gidx in gens:
        if gidx in members:
            continue
        mult = [zero_idx]
        cur = gidx
        while cur != zero_idx:
            mult.append(cur)
            cur = add[cur][gidx]
        members = {add[s][t] for s in members for t in mult}
    mask = 0
    for i in members:
        mask |= 1 << i
    return mask


def _right_closure(tab, mask, zero_idx) -> int:
    n = len(tab.elements)
    gens = {tab.mul[s][r] for s in _bits(mask) for r in range(n)}
    return _additive_span(tab, gens, zero_idx)


def right_ideal_lattice(R: Ring) -> RightIdealLattice:
    from .rings import ring_table

    if R in _LATTICES:
        return _LATTICES[R]
    tab = ring_table(R)
    n = len(tab.elements)
    zero_idx = tab.index[R.zero()]
    zero_mask = 1 << zero_idx
    seen = {zero_mask}
    frontier = [zero_mask]
    budget = config.pair_budget()
    work = 0
    while frontier:
        nxt = []
        for I in frontier:
            for a in range(n):
                if I >> a & 1:
                    continue
                work += n
                if work > budget * 16:
                    raise BudgetExceeded("right-ideal enumeration exceeded the budget")
                J = _right_closure(tab, I | (1 << a), zero_idx)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    ideals = tuple(sorted(seen, key=lambda m: (bin(m).count("1"), m)))
    nonzero = [I for I in ideals if I != zero_mask]
    essential = tuple(L for L in nonzero if all((L & K) != zero_mask for K in nonzero))
    minimal = tuple(K for K in nonzero if not any(J != K and (J & K) == J for J in nonzero))
    soc = _additive_span(tab, [i for K in minimal for i in _bits(K)], zero_idx)
    lat = RightIdealLattice(R, tab.elements, ideals, essential, minimal, soc)
    _LATTICES[R] = lat
    return lat


def _ideal_mask(R, tab, I: Ideal) -> int:
    mask = 0
    for i, e in enumerate(tab.elements):
        if R.i_member(I.data, e):
            mask |= 1 << i
    return mask


def _product_mask(tab, A, B, zero_idx) -> int:
    gens = {tab.mul[a][b] for a in _bits(A) for b in _bits(B)}
    return _additive_span(tab, gens, zero_idx)


@dataclass(frozen=True)
class StabilityReport:
    ring: Ring
    exponent_bound: int
    right_ideal_count: int
    essential_count: int
    hypothesis_holds: bool
    failure: tuple | None
    socle_absorbs_intersection: bool
    intersection_idempotent_in_socle: bool

    @property
    def remark_applies(self) -> bool:
        return self.socle_absorbs_intersection or self.intersection_idempotent_in_socle


def stability_condition_check(R: Ring, X: Sequence[Ideal], exponent_bound: int = 3) -> StabilityReport:
    """Check ``L * (cap_{j in J} X_j^{k_j}) = cap_{j in J} X_j^{k_j}`` for every
    essential right ideal ``L``, nonempty ``J`` and ``k_j <= exponent_bound``."""
    from .rings import ring_table

    if R.order is None:
        raise UnsupportedRing(f"{R.label()} is infinite")
    X = list(X)
    lat = right_ideal_lattice(R)
    tab = ring_table(R)
    zero_idx = tab.index[R.zero()]
    targets = {}
    for size in range(1, len(X) + 1):
        for J in itertools.combinations(range(len(X)), size):
            for ks in itertools.product(range(1, exponent_bound + 1), repeat=size):
                B = ideal_intersect_all(R, [ideal_power(R, X[j], k) for j, k in zip(J, ks)])
                targets.setdefault(B.data, (J, ks, B))
    failure = None
    for _, (J, ks, B) in sorted(targets.items(), key=lambda kv: (len(kv[1][0]), kv[1][0], kv[1][1])):
        bm = _ideal_mask(R, tab, B)
        for L in lat.essential:
            if _product_mask(tab, L, bm, zero_idx) != bm:
                failure = (J, ks, tuple(tab.elements[i] for i in _bits(L)))
                break
        if failure:
            break
    A = ideal_intersect_all(R, X)
    am = _ideal_mask(R, tab, A)
    soc_abs = _product_mask(tab, lat.socle, am, zero_idx) == am
    idem = ideal_product(R, A, A) == A and (am & lat.socle) == am
    rep = StabilityReport(R, exponent_bound, len(lat.ideals), len(lat.essential), failure is None, failure, soc_abs, idem)
    if rep.remark_applies:
        for L in lat.essential:
            if _product_mask(tab, L, am, zero_idx) != am:
                raise VerificationError("socle condition holds but an essential right ideal fails on the intersection")
    return rep
