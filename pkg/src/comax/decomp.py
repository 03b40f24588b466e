"""Decomposition of a module into components of pairwise comaximal ideals.

``decompose`` finds, for every generator ``y``, exponents with
``cap_j X_j^{k_j} <= r_R(yR)``, splits each generator through a partition of
unity, and checks the result both ways: the components form an internal
direct sum, and the per-component stabilisation exponents recover a covering
intersection for every generator's annihilator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import config
from .errors import (
    ConditionNotEstablished,
    NotComaximal,
    NotTorsion,
    RingMismatch,
    UnsupportedRing,
    VerificationError,
)
from .modules import (
    FPModule,
    ModuleElement,
    Submodule,
    annihilator,
    component_chain,
    is_internal_direct_sum,
    left_annihilator_of_ideal,
    module_times_ideal,
    quotient_module,
)
from .ring_core import (
    Ideal,
    Integers,
    PartitionOfUnity,
    TriangularMatrix,
    ideal_contains,
    ideal_intersect_all,
    ideal_power,
    is_pairwise_comaximal,
    partition_of_unity,
)


@dataclass(frozen=True)
class ConditionEntry:
    """Exponents ``k_j`` for ``j`` in ``J`` (0-based indices) covering the
    annihilator of one generator."""

    generator: int
    annihilator: Ideal
    J: tuple
    exponents: tuple


@dataclass(frozen=True)
class ConditionTable:
    entries: tuple
    J: tuple
    exponents: tuple

    def exponent_vector(self, n: int) -> list[int]:
        """Aggregated exponent per ideal; indices outside ``J`` get 1."""
        out = [1] * n
        for j, k in zip(self.J, self.exponents):
            out[j] = k
        return out


@dataclass(frozen=True, eq=False)
class Part:
    ideal: Ideal
    exponent: int
    component: Submodule
    is_zero: bool


@dataclass(frozen=True, eq=False)
class Decomposition:
    module: FPModule
    parts: tuple
    witness: PartitionOfUnity
    verified: bool
    condition_table: ConditionTable
    projections: tuple
    source: FPModule | None = None

    @property
    def components(self) -> list[Submodule]:
        return [p.component for p in self.parts]


def _validate_family(M: FPModule, X: Sequence[Ideal]) -> list[Ideal]:
    X = list(X)
    if not X:
        raise ValueError("need at least one ideal")
    for I in X:
        if not isinstance(I, Ideal) or I.ring != M.ring:
            raise RingMismatch("every ideal must belong to the module's ring")
    if not is_pairwise_comaximal(M.ring, X):
        raise NotComaximal("ideals are not pairwise comaximal")
    return X


def _covers(R, X, ks, A) -> bool:
    """``cap_{k_j > 0} X_j^{k_j} <= A``."""
    parts = [ideal_power(R, I, k) for I, k in zip(X, ks) if k > 0]
    return ideal_contains(R, A, ideal_intersect_all(R, parts))


def check_condition(M: FPModule, X: Sequence[Ideal], max_exponent: int = config.PID_STABILIZATION_BOUND) -> ConditionTable:
    """Per-generator exponent search.

    Finds the least uniform exponent ``t <= max_exponent`` that works, then
    lowers each coordinate in turn as far as the containment survives
    (exponent 0 drops the ideal from ``J``).  Raises
    :class:`ConditionNotEstablished` naming the first generator for which no
    exponent up to the budget works.
    """
    if max_exponent < 1:
        raise ValueError("max_exponent must be >= 1")
    X = _validate_family(M, X)
    R, n = M.ring, len(X)
    entries = []
    for gi, y in enumerate(M.generators()):
        A = annihilator(M, [y])
        t = next((t for t in range(1, max_exponent + 1) if _covers(R, X, [t] * n, A)), None)
        if t is None:
            raise ConditionNotEstablished(
                f"no exponents <= {max_exponent} put an intersection of powers inside "
                f"r_R(yR) = {A} for generator {gi}",
                generator=gi,
                annihilator=A,
            )
        ks = [t] * n
        for j in range(n):
            while ks[j] > 0:
                trial = ks[:j] + [ks[j] - 1] + ks[j + 1:]
                if not any(trial) or not _covers(R, X, trial, A):
                    break
                ks = trial
        J = tuple(j for j in range(n) if ks[j] > 0)
        entries.append(ConditionEntry(gi, A, J, tuple(ks[j] for j in J)))
    agg: dict[int, int] = {}
    for e in entries:
        for j, k in zip(e.J, e.exponents):
            agg[j] = max(agg.get(j, 0), k)
    J = tuple(sorted(agg))
    return ConditionTable(tuple(entries), J, tuple(agg[j] for j in J))


def _split_generators(M: FPModule, pou: PartitionOfUnity) -> tuple:
    out = []
    for y in M.generators():
        out.append(tuple(y * e for e in pou.witnesses))
    return tuple(out)


def decompose(M: FPModule, X: Sequence[Ideal], max_exponent: int = config.PID_STABILIZATION_BOUND) -> Decomposition:
    X = _validate_family(M, X)
    table = check_condition(M, X, max_exponent)
    R, n = M.ring, len(X)
    chains = [component_chain(M, I) for I in X]
    parts = tuple(Part(I, c.exponent, c.submodule, c.submodule.is_zero()) for I, c in zip(X, chains))
    pou = partition_of_unity(R, X, table.exponent_vector(n))
    projections = _split_generators(M, pou)
    _verify(M, X, parts, projections)
    return Decomposition(M, parts, pou, True, table, projections)


def _verify(M, X, parts, projections):
    R = M.ring
    for y, pieces in zip(M.generators(), projections):
        total = M.zero()
        for piece, part in zip(pieces, parts):
            if not part.component.contains(piece):
                raise VerificationError("generator projection left its component")
            total = total + piece
        if total != y:
            raise VerificationError("generator projections do not sum back to the generator")
    if not is_internal_direct_sum(M, [p.component for p in parts]):
        raise VerificationError("components do not form an internal direct sum")
    if not round_trip(M, X, [p.exponent for p in parts]):
        raise VerificationError("component exponents do not cover a generator annihilator")


def round_trip(M: FPModule, X: Sequence[Ideal], exponents: Sequence[int]) -> bool:
    """Reverse direction: with the stabilisation exponents of the parts,
    ``cap_i X_i^{k_i}`` lies in every generator's ``r_R(yR)``."""
    R = M.ring
    meet = ideal_intersect_all(R, [ideal_power(R, I, k) for I, k in zip(X, exponents)])
    return all(ideal_contains(R, annihilator(M, [y]), meet) for y in M.generators())


def decompose_crt(M: FPModule, X: Sequence[Ideal]) -> Decomposition:
    """Exponent-one decomposition of ``M`` when ``cap X_i`` kills it, and of
    ``M / MA`` otherwise."""
    X = list(X)
    if len(X) < 2:
        raise ValueError("need at least two ideals")
    X = _validate_family(M, X)
    R = M.ring
    A = ideal_intersect_all(R, X)
    target = M
    if not ideal_contains(R, annihilator(M), A):
        target = quotient_module(M, module_times_ideal(M, A))
    dec = decompose(target, X, max_exponent=1)
    for part, I in zip(dec.parts, X):
        if part.component != left_annihilator_of_ideal(target, I):
            raise VerificationError("component differs from the plain left annihilator")
    return Decomposition(target, dec.parts, dec.witness, True, dec.condition_table, dec.projections,
                         source=M if target is not M else None)


@dataclass(frozen=True, eq=False)
class NontrivialityCertificate:
    index: int
    verdict: str  # "nonzero" or "zero"
    witness: ModuleElement | None
    J: tuple


def nontrivial_components(M: FPModule, X: Sequence[Ideal]) -> list[NontrivialityCertificate]:
    """For each ``X_j``: a witness ``m != 0`` with ``cap_{J} X_i <= r_R(mR)``
    but ``cap_{J - j} X_i`` not inside it, or the verdict that ``l_M(X_j) = 0``."""
    X = _validate_family(M, X)
    check_condition(M, X, max_exponent=1)
    R, n = M.ring, len(X)
    out = []
    for j, I in enumerate(X):
        ell = left_annihilator_of_ideal(M, I)
        gens = ell.generators()
        if not gens:
            out.append(NontrivialityCertificate(j, "zero", None, ()))
            continue
        m = gens[0]
        J = (j,) if n == 1 else tuple(sorted({j, next(i for i in range(n) if i != j)}))
        cert = NontrivialityCertificate(j, "nonzero", m, J)
        if not check_certificate(M, X, cert):
            raise VerificationError(f"nontriviality certificate for ideal {j} failed")
        out.append(cert)
    return out


def check_certificate(M: FPModule, X: Sequence[Ideal], cert: NontrivialityCertificate) -> bool:
    R = M.ring
    if cert.verdict == "zero":
        return left_annihilator_of_ideal(M, X[cert.index]).is_zero()
    ann = annihilator(M, [cert.witness])
    full = ideal_intersect_all(R, [X[i] for i in cert.J])
    rest = ideal_intersect_all(R, [X[i] for i in cert.J if i != cert.index])
    return ideal_contains(R, ann, full) and not ideal_contains(R, ann, rest)


def triangular_quotient_decompose(T, K: FPModule) -> Decomposition:
    """Decompose ``K / KA`` by the diagonal-vanishing ideals, ``A`` their
    intersection."""
    from .rings import diagonal_vanishing_ideals

    if not isinstance(T, TriangularMatrix):
        raise UnsupportedRing(f"{T.label()} is not a triangular matrix ring")
    if K.ring != T:
        raise RingMismatch("module is not over the given triangular ring")
    P = diagonal_vanishing_ideals(T)
    A = ideal_intersect_all(T, P)
    M = quotient_module(K, module_times_ideal(K, A))
    dec = decompose(M, P, max_exponent=1)
    return Decomposition(M, dec.parts, dec.witness, True, dec.condition_table, dec.projections, source=K)


def p_component_decompose(M: FPModule) -> Decomposition:
    """Split a torsion module over Z into its p-primary parts."""
    from .arith import factorint

    if not isinstance(M.ring, Integers):
        raise UnsupportedRing("p-component decomposition needs a module over Z")
    g = annihilator(M).data
    if g == 0:
        raise NotTorsion("module is not torsion")
    R = M.ring
    primes = list(factorint(g)) if g > 1 else []
    if not primes:
        # zero module: one (zero) part for the unit ideal keeps the report shape
        return decompose(M, [R.ideal(1)], max_exponent=1)
    return decompose(M, [R.ideal(p) for p in primes])
