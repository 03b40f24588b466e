"""Finitely presented right modules and their annihilator submodules.

A module ``M = R^g / (relations)`` is stored through the scalar structure
of its ring: with ``R = (+)_u S/(a_u) b_u`` the module is ``S^(g*N) / L``
where coordinate ``(i, u)`` stands for ``gen_i * b_u`` and ``L`` is spanned
by the annihilator rows ``a_u e_(i,u)`` and every ``rel * b_u``.  Since
``S`` maps into the centre of ``R``, R-submodules are exactly the
S-lattices between ``L`` and ``S^(g*N)`` that are stable under right
multiplication by the basis, and everything reduces to echelon forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import config, linalg
from .errors import (
    RingMismatch,
    StabilizationError,
    UnsupportedRing,
    VerificationError,
)
from .linalg import IntegerDomain, hermite_form, smith_form
from .ring_core import Ideal, Ring, action_matrix


def _block_action(R: Ring, g: int, x) -> list[list]:
    """Matrix of right multiplication by ``x`` on ``S^(g*N)``."""
    A = action_matrix(R, x)
    N = len(A)
    z = linalg.backend_for(R.scalar_key).zero
    out = []
    for i in range(g):
        for t in range(N):
            row = [z] * (g * N)
            row[i * N:(i + 1) * N] = A[t]
            out.append(row)
    return out


@dataclass(frozen=True, eq=False)
class FPModule:
    ring: Ring
    num_generators: int
    relations: tuple

    def __post_init__(self):
        if self.ring.scalar_key is None:
            raise UnsupportedRing(f"modules over {self.ring.label()} are not supported")
        object.__setattr__(self, "_lattice", self._relation_lattice())

    # scalar-structure helpers
    @property
    def backend(self):
        return linalg.backend_for(self.ring.scalar_key)

    @property
    def basis_size(self) -> int:
        return self.ring.basis_size

    @property
    def dim(self) -> int:
        return self.num_generators * self.basis_size

    @property
    def relation_lattice(self) -> list:
        return self._lattice

    def _relation_lattice(self):
        R, B = self.ring, self.backend
        N, g = self.basis_size, self.num_generators
        rows = []
        for i in range(g):
            for u, a in enumerate(R.basis_ann()):
                if not B.is_zero(a):
                    v = [B.zero] * (g * N)
                    v[i * N + u] = a
                    rows.append(v)
        for rel in self.relations:
            for b in R.basis():
                rows.append(self.ring_row_to_vec([R.mul(r, b) for r in rel]))
        return B.echelon(rows, g * N)

    def ring_row_to_vec(self, row) -> tuple:
        B = self.backend
        out = []
        for r in row:
            out.extend(B.norm(c) for c in self.ring.coords(r))
        return tuple(out)

    def vec_to_ring_row(self, v) -> tuple:
        N = self.basis_size
        return tuple(self.ring.from_coords(tuple(v[i * N:(i + 1) * N])) for i in range(self.num_generators))

    def reduce(self, v) -> tuple:
        return self.backend.reduce(v, self._lattice)

    def right_mul_vec(self, v, x) -> tuple:
        if not v:
            return ()
        A = action_matrix(self.ring, x)
        N = self.basis_size
        B = self.backend
        out = []
        for i in range(self.num_generators):
            out.extend(linalg.vec_mat(B, v[i * N:(i + 1) * N], A))
        return tuple(out)

    def right_action(self, x) -> list[list]:
        return _block_action(self.ring, self.num_generators, x)

    # elements and submodules
    def element(self, coords) -> "ModuleElement":
        if len(coords) != self.num_generators:
            raise RingMismatch(f"expected {self.num_generators} coordinates, got {len(coords)}")
        row = [self.ring.coerce(c) for c in coords]
        return ModuleElement(self, self.reduce(self.ring_row_to_vec(row)))

    def from_vec(self, v) -> "ModuleElement":
        return ModuleElement(self, self.reduce(tuple(v)))

    def gen(self, i: int) -> "ModuleElement":
        row = [self.ring.zero()] * self.num_generators
        row[i] = self.ring.one()
        return self.element(row)

    def generators(self) -> list["ModuleElement"]:
        return [self.gen(i) for i in range(self.num_generators)]

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, tuple([self.backend.zero] * self.dim))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, tuple(self._lattice))

    def whole(self) -> "Submodule":
        B = self.backend
        rows = []
        for k in range(self.dim):
            v = [B.zero] * self.dim
            v[k] = B.one
            rows.append(v)
        return Submodule(self, tuple(B.echelon(rows, self.dim)))

    def submodule(self, elements: Sequence["ModuleElement"]) -> "Submodule":
        """Submodule generated by ``elements`` (closed under right action)."""
        rows = list(self._lattice)
        for e in elements:
            if e.module is not self:
                raise RingMismatch("element does not belong to this module")
            for b in self.ring.basis():
                rows.append(self.right_mul_vec(e.vec, b))
        return Submodule(self, tuple(self.backend.echelon(rows, self.dim)))

    def span_of_vecs(self, vecs) -> "Submodule":
        return self.submodule([ModuleElement(self, tuple(v)) for v in vecs])

    @cached_property
    def invariants(self) -> "ModuleInvariants":
        return self.whole().invariants

    @property
    def cardinality(self):
        return self.invariants.cardinality

    @property
    def is_finite(self) -> bool:
        return self.invariants.cardinality is not None

    def __repr__(self):
        return f"FPModule({self.ring.label()}, g={self.num_generators}, {len(self.relations)} relations)"


@dataclass(frozen=True, eq=False)
class ModuleElement:
    module: FPModule
    vec: tuple

    @property
    def coords(self) -> tuple:
        return self.module.vec_to_ring_row(self.vec)

    def is_zero(self) -> bool:
        return linalg.is_zero_vec(self.module.backend, self.vec)

    def __add__(self, other):
        B = self.module.backend
        return self.module.from_vec(tuple(x + y for x, y in zip(self.vec, other.vec)))

    def __neg__(self):
        return self.module.from_vec(tuple(-x for x in self.vec))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, r):
        return self.module.from_vec(self.module.right_mul_vec(self.vec, self.module.ring.coerce(r)))

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and other.module is self.module and other.vec == self.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return f"ModuleElement({list(self.coords)!r})"


@dataclass(frozen=True)
class ModuleInvariants:
    divisors: tuple
    free_rank: int
    cardinality: int | None


@dataclass(frozen=True, eq=False)
class Submodule:
    """An R-submodule, stored as its canonical lattice (which contains the
    ambient relation lattice)."""

    ambient: FPModule
    lattice: tuple

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.ambient is self.ambient and other.lattice == self.lattice

    def __hash__(self):
        return hash(self.lattice)

    def generators(self) -> list[ModuleElement]:
        M = self.ambient
        out = []
        for row in self.lattice:
            e = M.from_vec(row)
            if not e.is_zero():
                out.append(e)
        return out

    def contains(self, e: ModuleElement) -> bool:
        return linalg.contains(self.ambient.backend, list(self.lattice), e.vec)

    __contains__ = contains

    def is_zero(self) -> bool:
        return self.lattice == tuple(self.ambient.relation_lattice)

    def issubset(self, other: "Submodule") -> bool:
        _same_ambient(self, other)
        return linalg.lattice_contains(self.ambient.backend, list(other.lattice), self.lattice)

    def __le__(self, other):
        return self.issubset(other)

    def __add__(self, other):
        _same_ambient(self, other)
        M = self.ambient
        return Submodule(M, tuple(linalg.lattice_sum(M.backend, self.lattice, other.lattice, M.dim)))

    def __and__(self, other):
        _same_ambient(self, other)
        M = self.ambient
        return Submodule(M, tuple(linalg.intersect(M.backend, self.lattice, other.lattice, M.dim)))

    @cached_property
    def invariants(self) -> ModuleInvariants:
        return _quotient_invariants(self.ambient, list(self.lattice))

    @property
    def cardinality(self):
        return self.invariants.cardinality

    def __repr__(self):
        inv = self.invariants
        return f"Submodule(divisors={list(map(str, inv.divisors))}, order={inv.cardinality})"


def _same_ambient(*subs: Submodule):
    amb = subs[0].ambient
    for s in subs:
        if s.ambient is not amb:
            raise RingMismatch("submodules live in different ambient modules")


# ---------------------------------------------------------------------------

def present_module(R: Ring, g: int, relations: Sequence[Sequence] = ()) -> FPModule:
    """Validated module ``R^g / (rows of relations)``."""
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError(f"generator count must be a nonnegative integer, got {g!r}")
    rows = []
    for rel in relations:
        rel = list(rel)
        if len(rel) != g:
            raise RingMismatch(f"relation {rel!r} does not have {g} entries")
        rows.append(tuple(R.coerce(x) for x in rel))
    return FPModule(R, g, tuple(rows))


def _express(D, basis, v):
    """Coefficients of ``v`` in an echelon ``basis`` over a domain."""
    v = list(v)
    coeffs = []
    for row in basis:
        c = next(i for i, x in enumerate(row) if not D.is_zero(x))
        q = D.quo(v[c], row[c])
        if not D.is_zero(v[c] - q * row[c]):
            raise VerificationError("vector is not in the lattice span")
        coeffs.append(q)
        if not D.is_zero(q):
            v = [x - q * y for x, y in zip(v, row)]
    if any(not D.is_zero(x) for x in v):
        raise VerificationError("vector is not in the lattice span")
    return coeffs


def _quotient_invariants(M: FPModule, lattice: list) -> ModuleInvariants:
    """Invariant factors of ``lattice / L`` over the scalar ring."""
    key = M.ring.scalar_key
    d = M.dim
    if d == 0:
        return ModuleInvariants((), 0, 1)
    if key[0] == "Zmod":
        m = key[1]
        D = IntegerDomain()
        box = [[m if i == j else 0 for j in range(d)] for i in range(d)]
        top = hermite_form(list(lattice) + box, d, D)
        bottom = hermite_form(list(M.relation_lattice) + box, d, D)
    else:
        D = linalg.domain_for(key)
        top = list(lattice)
        bottom = list(M.relation_lattice)
    k = len(top)
    if k == 0:
        return ModuleInvariants((), 0, 1)
    C = [_express(D, top, v) for v in bottom]
    if C:
        _, S, _, _ = smith_form(C, D)
        diag = [S[i][i] for i in range(min(len(S), k))]
    else:
        diag = []
    nonzero = [x for x in diag if not D.is_zero(x)]
    free_rank = k - len(nonzero)
    divisors = [D.canon(x) for x in nonzero if not D.is_unit(x)]
    zero = D.zero
    card = None
    if free_rank == 0:
        if key[0] == "Fpx":
            card = key[1] ** sum(x.degree for x in divisors)
        else:
            card = math.prod(divisors)
    return ModuleInvariants(tuple(divisors) + (zero,) * free_rank, free_rank, card)


def submodule_invariants(N: Submodule) -> ModuleInvariants:
    return N.invariants


def smith_normal_form(A, ring_key=("Z",)):
    return linalg.smith_normal_form(A, ring_key)


# ---------------------------------------------------------------------------
# annihilators

def _coerce_gens(M: FPModule, gens) -> list[ModuleElement]:
    if gens is None:
        return M.generators()
    out = []
    for e in gens:
        if isinstance(e, ModuleElement):
            if e.module is not M:
                raise RingMismatch("element does not belong to the module")
            out.append(e)
        else:
            out.append(M.element(e))
    return out


def annihilator(M: FPModule, gens=None) -> Ideal:
    """Right annihilator ``r_R(NR)`` of the submodule generated by ``gens``
    (default: all generators, giving ``r_R(M)``)."""
    R, B = M.ring, M.backend
    gens = _coerce_gens(M, gens)
    basis = R.basis()
    Nb = len(basis)
    maps = []
    for e in gens:
        for bu in basis:
            wb = M.right_mul_vec(e.vec, bu)
            maps.append([M.right_mul_vec(wb, bt) for bt in basis])
    L = list(M.relation_lattice)
    K = linalg.preimage(B, Nb, maps, [L] * len(maps), [M.dim] * len(maps))
    gens_u = []
    for u in range(Nb):
        acc = R.basis_ann()[u]
        for row in K:
            acc = B.gcd(acc, row[u])
        gens_u.append(acc)
    I = Ideal(R, R.ideal_from_coords(tuple(gens_u)))
    _check_monomial(R, B, I, K)
    return I


def _check_monomial(R, B, I, K):
    # the lattice computed for an annihilator must be the full ideal lattice
    span = [R.coords(x) for x in I.span()]
    Nb = R.basis_size
    ann_rows = []
    for u, a in enumerate(R.basis_ann()):
        if not B.is_zero(a):
            v = [B.zero] * Nb
            v[u] = a
            ann_rows.append(v)
    lhs = B.echelon(list(span) + ann_rows, Nb)
    rhs = B.echelon(list(K) + ann_rows, Nb)
    if lhs != rhs:
        raise VerificationError("annihilator lattice is not an ideal in canonical form")


def _ideal_maps(M: FPModule, X: Ideal):
    if X.ring != M.ring:
        raise RingMismatch(f"ideal over {X.ring.label()} used with a module over {M.ring.label()}")
    return [M.right_action(x) for x in X.span()]


def _preimage_under(M: FPModule, maps, target: Sequence) -> tuple:
    if not maps:
        return tuple(M.whole().lattice)
    B = M.backend
    k = len(maps)
    return tuple(linalg.preimage(B, M.dim, maps, [list(target)] * k, [M.dim] * k))


def left_annihilator_of_ideal(M: FPModule, X: Ideal) -> Submodule:
    """``l_M(X) = {m : mX = 0}``."""
    return Submodule(M, _preimage_under(M, _ideal_maps(M, X), M.relation_lattice))


@dataclass(frozen=True, eq=False)
class Component:
    submodule: Submodule
    exponent: int
    chain: tuple = field(repr=False)


def component_chain(M: FPModule, X: Ideal, bound: int | None = None) -> Component:
    """``C(X) = sum_k l_M(X^k)`` with the first ``k >= 1`` at which the
    chain ``l_M(X^k)`` becomes stationary."""
    maps = _ideal_maps(M, X)
    if bound is None:
        card = M.cardinality
        bound = card if card is not None else config.PID_STABILIZATION_BOUND
        bound = max(bound, 1)
    prev = _preimage_under(M, maps, M.relation_lattice)
    chain = [prev]
    k = 1
    while True:
        nxt = _preimage_under(M, maps, prev)
        if nxt == prev:
            return Component(Submodule(M, prev), k, tuple(Submodule(M, c) for c in chain))
        if k >= bound:
            raise StabilizationError(f"l_M(X^k) still growing at k = {k} (bound {bound})")
        prev = nxt
        chain.append(prev)
        k += 1


def component(M: FPModule, X: Ideal, bound: int | None = None) -> Submodule:
    return component_chain(M, X, bound).submodule


def is_internal_direct_sum(M: FPModule, parts: Sequence[Submodule]) -> bool:
    parts = list(parts)
    for p in parts:
        if p.ambient is not M:
            raise RingMismatch("part does not live in this module")
    total = M.zero_submodule()
    for p in parts:
        total = total + p
    if total != M.whole():
        return False
    for i, p in enumerate(parts):
        rest = M.zero_submodule()
        for j, q in enumerate(parts):
            if j != i:
                rest = rest + q
        if not (p & rest).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# derived modules and maps

def quotient_module(M: FPModule, N: Submodule) -> FPModule:
    """``M / N`` presented on the same generators."""
    if N.ambient is not M:
        raise RingMismatch("submodule does not live in this module")
    extra = [M.vec_to_ring_row(v) for v in N.lattice]
    return FPModule(M.ring, M.num_generators, M.relations + tuple(extra))


def module_times_ideal(M: FPModule, A: Ideal) -> Submodule:
    """The submodule ``MA``."""
    if A.ring != M.ring:
        raise RingMismatch("ideal and module over different rings")
    elems = [ModuleElement(M, M.right_mul_vec(g.vec, x)) for g in M.generators() for x in A.span()]
    return M.submodule(elems)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FPModule
    target: FPModule
    images: tuple  # image of each source generator, as target vectors

    def apply(self, e: ModuleElement) -> ModuleElement:
        T = self.target
        B = T.backend
        acc = [B.zero] * T.dim
        for r, img in zip(e.coords, self.images):
            v = T.right_mul_vec(img, r)
            acc = [x + y for x, y in zip(acc, v)]
        return T.from_vec(acc)

    def image(self, N: Submodule) -> Submodule:
        return self.target.submodule([self.apply(e) for e in N.generators()])

    def kernel(self) -> Submodule:
        S, T = self.source, self.target
        maps = [[self.apply(S.from_vec(_unit(S, k))).vec for k in range(S.dim)]]
        return Submodule(S, tuple(linalg.preimage(S.backend, S.dim, maps, [list(T.relation_lattice)], [T.dim])))

    def is_valid(self) -> bool:
        T = self.target
        for rel in self.source.relations:
            acc = [T.backend.zero] * T.dim
            for r, img in zip(rel, self.images):
                acc = [x + y for x, y in zip(acc, T.right_mul_vec(img, r))]
            if not T.from_vec(acc).is_zero():
                return False
        return True


def _unit(M, k):
    v = [M.backend.zero] * M.dim
    v[k] = M.backend.one
    return tuple(v)


def hom_space(M: FPModule, N: FPModule) -> list[tuple]:
    """Lattice in ``S^(g_M * dim N)`` of generator-image tuples that define
    homomorphisms ``M -> N``."""
    if M.ring != N.ring:
        raise RingMismatch("modules over different rings")
    B = N.backend
    g, dN = M.num_generators, N.dim
    total = g * dN
    maps = []
    for rel in M.relations:
        A = [[B.zero] * dN for _ in range(total)]
        for i, r in enumerate(rel):
            act = N.right_action(r)
            for k in range(dN):
                A[i * dN + k] = act[k]
        maps.append(A)
    base = []
    for i in range(g):
        for row in N.relation_lattice:
            v = [B.zero] * total
            v[i * dN:(i + 1) * dN] = row
            base.append(v)
    if not maps:
        rows = [list(_unit_total(B, total, k)) for k in range(total)]
        return B.echelon(rows, total)
    K = linalg.preimage(B, total, maps, [list(N.relation_lattice)] * len(maps), [dN] * len(maps))
    return B.echelon(list(K) + base, total)


def _unit_total(B, n, k):
    v = [B.zero] * n
    v[k] = B.one
    return v


def hom_from_vec(M: FPModule, N: FPModule, v) -> ModuleHom:
    dN = N.dim
    imgs = tuple(N.reduce(tuple(v[i * dN:(i + 1) * dN])) for i in range(M.num_generators))
    return ModuleHom(M, N, imgs)


@dataclass(frozen=True, eq=False)
class SubmodulePresentation:
    module: FPModule
    inclusion: ModuleHom


def submodule_as_module(N: Submodule) -> SubmodulePresentation:
    """Present ``N`` as a module in its own right, with the inclusion map."""
    M = N.ambient
    R, B = M.ring, M.backend
    gens = [e.vec for e in N.generators()]
    k = len(gens)
    basis = R.basis()
    rows = []
    for w in gens:
        for bt in basis:
            rows.append(M.right_mul_vec(w, bt))
    K = linalg.preimage(B, k * len(basis), [rows], [list(M.relation_lattice)], [M.dim]) if rows else []
    Nb = len(basis)
    rels = []
    for c in K:
        rels.append(tuple(R.from_coords(tuple(c[j * Nb:(j + 1) * Nb])) for j in range(k)))
    P = FPModule(R, k, tuple(rels))
    inc = ModuleHom(P, M, tuple(M.reduce(w) for w in gens))
    return SubmodulePresentation(P, inc)
