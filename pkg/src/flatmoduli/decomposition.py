"""Rational isotypic decomposition of the lattice representation.

Each Galois orbit of complex irreducible characters occurring in Q^n gives
one rational component W with projector

    e = (d/|H|) sum_g (sum_{psi in orbit} psi(g^{-1})) rho(g),

and real data (M, K, f): K in {R, C, H} from the Frobenius-Schur indicator,
f = [Q(chi) cap R : Q] and M the multiplicity of the real irreducible.
Schur indices over Q are taken to be 1, except that an indicator of -1
forces index 2; components of the latter kind carry the flag "suspect".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .characters import CharacterTable, character_table
from .crystallo import CrystGroup
from .cyclotomic import CyclotomicField
from .errors import InternalInconsistency, OddQuaternionMultiplicity
from .linalg import freeze, identity, mat_add, mat_mul, mat_scale, rank
from .poly import IntPoly

REAL_TYPE = {1: "R", 0: "C", -1: "H"}


@dataclass(frozen=True)
class IsotypicComponent:
    """One rational isotypic component of the lattice representation.

    ``multiplicity`` is the complex multiplicity m = <chi_Lambda, phi> of
    the representative character ``character``.
    """

    character: int
    degree: int
    orbit: tuple[int, ...]
    multiplicity: int
    indicator: int
    real_type: str
    field_degree: int
    field_polynomial: IntPoly
    projector: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    rank: int
    schur_flag: str

    @property
    def schur_index(self) -> int:
        return 2 if self.indicator == -1 else 1

    @property
    def rational_multiplicity(self) -> int:
        """Number of rational irreducibles in the component (under the Schur index assumption)."""
        return self.multiplicity // self.schur_index

    @property
    def real_multiplicity(self) -> int:
        return real_isotypic_data(self)[0]


def lattice_character(G: CrystGroup, T: CharacterTable) -> list:
    F = T.field_
    return [F.from_int(sum(G.point_group.elements[C[0]][i][i] for i in range(G.dim))) for C in T.classes]


def field_polynomial(T: CharacterTable, c: int) -> tuple[int, IntPoly]:
    """Degree and minimal polynomial of Q(chi_c) cap R."""
    F = T.field_
    e = max(T.exponent, 1)
    units = F.units
    stab = set(T.stabilizer(c))
    conj = F.conjugation
    real_stab = stab | {(k * conj) % e or e for k in stab}
    if e <= 2:
        real_stab = set(units)
    f = len(units) // len(real_stab)
    if f == 1:
        return 1, IntPoly((-1, 1))
    # coset representatives of the real stabilizer
    reps = []
    covered = set()
    for t in units:
        if t in covered:
            continue
        reps.append(t)
        covered.update((t * k) % e for k in real_stab)

    def periods(j):
        return F.sum(F.zeta(j * k) for k in real_stab)

    candidates = [periods(j) for j in range(1, e)]
    candidates += [F.add(periods(1), F.scale(m, periods(j))) for j in range(2, e) for m in (1, 2, 3)]
    for theta in candidates:
        conjs = [F.galois(theta, t) for t in reps]
        if len(set(conjs)) == f:
            return f, F.min_poly_of_conjugates(conjs)
    raise InternalInconsistency("no primitive element found for the real character field")


def _projector(G: CrystGroup, T: CharacterTable, orbit, degree: int):
    F = T.field_
    H = G.point_group
    n = G.dim
    acc = [[Fraction(0)] * n for _ in range(n)]
    for g in range(H.order):
        ginv = H.inverse[g]
        coef = F.sum(T.value(psi, ginv) for psi in orbit)
        if not F.is_rational(coef):
            raise InternalInconsistency("orbit trace is not rational")
        c = F.rational(coef)
        if c:
            acc = mat_add(acc, mat_scale(c, H.elements[g]))
    return mat_scale(Fraction(degree, H.order), acc)


@lru_cache(maxsize=256)
def rational_isotypic_decomposition(G: CrystGroup, seed: int = 0) -> tuple[IsotypicComponent, ...]:
    T = character_table(G.point_group, seed)
    chi = lattice_character(G, T)
    comps = []
    for orbit in T.orbits:
        c = orbit[0]
        m = T.inner_product(chi, list(T.values[c]))
        if m.denominator != 1 or m < 0:
            raise InternalInconsistency("non-integral multiplicity")
        if m == 0:
            continue
        d = T.degrees[c]
        ind = T.indicators[c]
        f, poly = field_polynomial(T, c)
        expected_f = len(orbit) if ind != 0 else len(orbit) // 2
        if f != expected_f:
            raise InternalInconsistency("real character field degree disagrees with the orbit")
        P = _projector(G, T, orbit, d)
        r = rank(P)
        if r != int(m) * f * d * (2 if ind == 0 else 1):
            raise InternalInconsistency("projector rank disagrees with the character data")
        comps.append(
            IsotypicComponent(
                character=c,
                degree=d,
                orbit=tuple(orbit),
                multiplicity=int(m),
                indicator=ind,
                real_type=REAL_TYPE[ind],
                field_degree=f,
                field_polynomial=poly,
                projector=freeze(P),
                rank=r,
                schur_flag="suspect" if ind == -1 else "assumed",
            )
        )
    comps.sort(key=lambda C: (C.degree, C.field_degree, T.values[C.character]))
    _check_projectors(G, comps)
    return tuple(comps)


def _check_projectors(G: CrystGroup, comps) -> None:
    n = G.dim
    total = [[Fraction(0)] * n for _ in range(n)]
    for C in comps:
        P = [list(r) for r in C.projector]
        if mat_mul(P, P) != P:
            raise InternalInconsistency("projector is not idempotent")
        for h in G.point_group.elements:
            if mat_mul(h, P) != mat_mul(P, h):
                raise InternalInconsistency("projector is not H-equivariant")
        total = mat_add(total, P)
    if total != identity(n):
        raise InternalInconsistency("projectors do not sum to the identity")


def real_isotypic_data(comp: IsotypicComponent) -> tuple[int, str, int]:
    """(M, K, f) for one component."""
    if comp.real_type == "H":
        if comp.multiplicity % 2:
            raise OddQuaternionMultiplicity(
                f"quaternionic character with odd multiplicity {comp.multiplicity}"
            )
        return comp.multiplicity // 2, "H", comp.field_degree
    return comp.multiplicity, comp.real_type, comp.field_degree
