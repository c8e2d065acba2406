"""Rational lattices, finite abelian groups and lattice operations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import RankMismatch
from .linalg import (
    Matrix,
    denominator_lcm,
    det,
    hermite_normal_form,
    integer_kernel,
    inverse,
    mat_vec,
    nullspace,
    rref,
    smith_normal_form,
    solve,
    transpose,
    vec_mat,
)


@dataclass(frozen=True)
class IntLattice:
    """A finitely generated subgroup of Q^n.

    ``basis`` holds the rows of the Hermite normal form of the generators
    (computed after clearing denominators), so two lattices are equal iff
    their bases are.
    """

    dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence], dim: int | None = None) -> "IntLattice":
        gens = [list(g) for g in gens]
        if dim is None:
            if not gens:
                raise ValueError("dimension needed for an empty generating set")
            dim = len(gens[0])
        if not gens:
            return cls(dim, ())
        d = denominator_lcm(gens)
        ints = [[int(Fraction(x) * d) for x in g] for g in gens]
        H, _ = hermite_normal_form(ints)
        rows = tuple(tuple(Fraction(x, d) for x in row) for row in H if any(row))
        return cls(dim, rows)

    @classmethod
    def standard(cls, n: int, scale: Fraction | int = 1) -> "IntLattice":
        s = Fraction(scale)
        return cls.from_generators([[s if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.dim

    def covolume(self) -> Fraction:
        if not self.full_rank:
            raise RankMismatch("covolume of a lattice that is not full rank")
        return abs(det(self.basis))

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coordinates of v in the basis, or None if v is outside the span."""
        if not self.basis:
            return [] if not any(v) else None
        return solve(transpose(self.basis), list(v))

    def contains(self, v: Sequence) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(self.contains(b) for b in other.basis)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z^r x Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... and every d_i >= 2."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    @classmethod
    def from_relation_columns(cls, R: Matrix, ngens: int) -> "FiniteAbelianGroup":
        """The group Z^ngens modulo the column span of R."""
        if ngens == 0:
            return cls()
        if not R or not R[0]:
            return cls((), ngens)
        D, _, _ = smith_normal_form(R)
        diag = [D[i][i] if i < len(D[0]) else 0 for i in range(ngens)]
        return cls(tuple(d for d in diag if d > 1), sum(1 for d in diag if d == 0))


def preimage_lattice(A: Matrix, L: IntLattice) -> tuple[IntLattice, list[list[Fraction]]]:
    """The set {x : A x in L} as (lattice part, kernel basis).

    The full preimage is ``lattice + span(kernel)``.  The lattice part lies in
    the coordinate subspace where the non-pivot variables of ``rref(A)``
    vanish, which is a complement of the kernel.
    """
    m = len(A)
    n = len(A[0])
    if L.dim != m:
        raise RankMismatch(f"lattice lives in Q^{L.dim}, matrix has {m} rows")
    kernel = nullspace(A)
    # y in span(L) lies in the image of A iff y is orthogonal to coker(A)
    coker = nullspace(transpose(A))
    B = [list(b) for b in L.basis]
    if B and coker:
        M = [[sum(b[i] * c[i] for i in range(m)) for c in coker] for b in B]
        combos = integer_kernel(transpose(M), len(B))
        Y = [vec_mat(c, B) for c in combos]
    else:
        Y = B
    preimages = []
    for y in Y:
        x = solve(A, y)
        if x is None:
            raise AssertionError("image vector without preimage")
        preimages.append(x)
    return IntLattice.from_generators(preimages, n), kernel


def lattice_intersection(L1: IntLattice, L2: IntLattice) -> IntLattice:
    n = L1.dim
    if not L1.basis or not L2.basis:
        return IntLattice(n, ())
    B1 = [list(b) for b in L1.basis]
    B2 = [list(b) for b in L2.basis]
    stacked = B1 + [[-x for x in b] for b in B2]
    combos = integer_kernel(transpose(stacked), len(stacked))
    vecs = [vec_mat(c[: len(B1)], B1) for c in combos]
    return IntLattice.from_generators(vecs, n) if vecs else IntLattice(n, ())


def lattice_commensurability(L1: IntLattice, L2: IntLattice) -> tuple[IntLattice, int, int]:
    """Intersection of two full-rank lattices and its index in each."""
    if L1.dim != L2.dim or not L1.full_rank or not L2.full_rank:
        raise RankMismatch("commensurability needs two full-rank lattices in the same space")
    inter = lattice_intersection(L1, L2)
    if not inter.full_rank:
        raise RankMismatch("intersection is not full rank")
    v = inter.covolume()
    i1, i2 = v / L1.covolume(), v / L2.covolume()
    assert i1.denominator == 1 and i2.denominator == 1
    return inter, int(i1), int(i2)


def quotient_group(big: IntLattice, small: IntLattice) -> tuple[FiniteAbelianGroup, list[list[Fraction]]]:
    """big/small for small a sublattice of big, with generators of each cyclic factor."""
    Bb = [list(b) for b in big.basis]
    r = len(Bb)
    if r == 0:
        return FiniteAbelianGroup(), []
    cols = []
    for s in small.basis:
        c = big.coordinates(s)
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError("not a sublattice")
        cols.append([int(x) for x in c])
    if not cols:
        return FiniteAbelianGroup((), r), [list(b) for b in Bb]
    R = transpose(cols)
    D, U, _ = smith_normal_form(R)
    Uinv = inverse(U)
    gens = []
    factors = []
    free = 0
    for i in range(r):
        d = D[i][i] if i < len(D[0]) else 0
        if d == 1:
            continue
        col = [Uinv[j][i] for j in range(r)]
        gens.append(vec_mat(col, Bb))
        if d == 0:
            free += 1
        else:
            factors.append(d)
    # zero diagonal entries come last in Smith form, so gens are ordered
    return FiniteAbelianGroup(tuple(factors), free), gens


@dataclass(frozen=True)
class LatticeQuotient:
    """(part + span(kernel)) / (sublattice + span(kernel)) with coordinates.

    ``coordinates(v)`` gives the residues of v along the cyclic factors of
    ``group``; ``generators[i]`` represents the i-th factor.
    """

    part: IntLattice
    kernel: tuple
    transform: tuple = field(repr=False)
    diagonal: tuple[int, ...]
    group: FiniteAbelianGroup
    generators: tuple

    def _part_coords(self, v) -> list[int]:
        r = self.part.rank
        basis_t = transpose([list(b) for b in self.part.basis] + [list(k) for k in self.kernel])
        c = solve(basis_t, list(v))
        if c is None or any(x.denominator != 1 for x in c[:r]):
            raise ValueError("vector outside the lattice plus subspace")
        return [int(x) for x in c[:r]]

    def coordinates(self, v) -> tuple[int, ...]:
        a = self._part_coords(v)
        y = mat_vec(self.transform, a)
        return tuple(int(y[i]) % d if d else int(y[i]) for i, d in enumerate(self.diagonal) if d != 1)


def quotient_mod_subspace(
    part: IntLattice, kernel: Sequence[Sequence[Fraction]], small: Sequence[Sequence]
) -> LatticeQuotient:
    """(part + span(kernel)) / (Z-span(small) + span(kernel)).

    Every vector of ``small`` must lie in ``part + span(kernel)``; the
    quotient is computed on the coordinates along ``part``.
    """
    kernel = tuple(tuple(k) for k in kernel)
    r = part.rank
    if r == 0:
        return LatticeQuotient(part, kernel, (), (), FiniteAbelianGroup(), ())
    probe = LatticeQuotient(part, kernel, (), (), FiniteAbelianGroup(), ())
    cols = [probe._part_coords(v) for v in small]
    if not cols:
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        gens = tuple(tuple(b) for b in part.basis)
        return LatticeQuotient(part, kernel, ident, (0,) * r, FiniteAbelianGroup((), r), gens)
    D, U, _ = smith_normal_form(transpose(cols))
    Uinv = inverse(U)
    P = [list(b) for b in part.basis]
    diag = tuple(D[i][i] if i < len(D[0]) else 0 for i in range(r))
    gens, factors, free = [], [], 0
    for i, d in enumerate(diag):
        if d == 1:
            continue
        gens.append(tuple(vec_mat([Uinv[j][i] for j in range(r)], P)))
        if d == 0:
            free += 1
        else:
            factors.append(d)
    return LatticeQuotient(
        part,
        kernel,
        tuple(tuple(row) for row in U),
        diag,
        FiniteAbelianGroup(tuple(factors), free),
        tuple(gens),
    )


def lattice_index(big: IntLattice, small: IntLattice) -> int:
    g, _ = quotient_group(big, small)
    if g.free_rank:
        raise RankMismatch("infinite index")
    return g.order


def lattice_from_columns(M: Matrix) -> IntLattice:
    return IntLattice.from_generators(transpose(M), len(M))


__all__ = [
    "IntLattice",
    "FiniteAbelianGroup",
    "preimage_lattice",
    "lattice_intersection",
    "lattice_commensurability",
    "quotient_group",
    "quotient_mod_subspace",
    "LatticeQuotient",
    "lattice_index",
    "lattice_from_columns",
    "mat_vec",
]
