"""Endomorphism algebras of isotypic components.

For a rational component W with projector e, the lattice Lambda cap W is
the integer kernel of 1 - e.  H acts on it by integer matrices and the
commutant End_H(Lambda cap W) is a Z-order in the semisimple algebra
End_H(W).  Algebras are stored by structure constants on that Z-basis, so
the order is simply the Z-span of the basis.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .crystallo import CrystGroup
from .decomposition import IsotypicComponent, rational_isotypic_decomposition
from .errors import InternalInconsistency, NotAField, NotQuaternion, ZeroDivisorFound
from .linalg import identity, integer_kernel, mat_mul, mat_sub, nullspace, rank, solve, transpose
from .normalizer import integer_commutant, ring_from_basis
from .poly import IntPoly, factor_rational_poly, squarefree_part

Vec = tuple[Fraction, ...]

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class RationalAlgebra:
    """Finite-dimensional Q-algebra on a basis b_0..b_{d-1}.

    ``structure[i][j]`` are the coordinates of b_i b_j.  ``order_basis``
    lists the Z-basis of the marked order as coordinate vectors, and
    ``matrices`` optionally keeps a faithful matrix model of the basis.
    """

    dim: int
    labels: tuple[str, ...]
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...] = field(repr=False)
    identity_coords: Vec
    order_basis: tuple[tuple[int, ...], ...] = field(repr=False)
    matrices: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        self._check()

    def _check(self) -> None:
        d = self.dim
        for i in range(d):
            bi = self.basis_vector(i)
            if self.mul(self.identity_coords, bi) != bi or self.mul(bi, self.identity_coords) != bi:
                raise InternalInconsistency("identity does not act as identity")
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = self.mul(self.structure[i][j], self.basis_vector(k))
            rhs = self.mul(self.basis_vector(i), self.structure[j][k])
            if lhs != rhs:
                raise InternalInconsistency(f"structure constants not associative on ({i},{j},{k})")

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(int(a == i)) for a in range(self.dim))

    def mul(self, x: Sequence, y: Sequence) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in enumerate(self.structure[i][j]):
                    if s:
                        out[k] += c * s
        return tuple(out)

    def add(self, x, y) -> Vec:
        return tuple(Fraction(a) + b for a, b in zip(x, y))

    def scale(self, c, x) -> Vec:
        return tuple(Fraction(c) * a for a in x)

    def left_matrix(self, x) -> list[list[Fraction]]:
        """Matrix of y -> x y (columns are images of basis vectors)."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return transpose(cols)

    def trace(self, x) -> Fraction:
        L = self.left_matrix(x)
        return sum((L[i][i] for i in range(self.dim)), Fraction(0))

    def is_commutative(self) -> bool:
        S = self.structure
        return all(S[i][j] == S[j][i] for i in range(self.dim) for j in range(i))

    def order_closed(self) -> bool:
        """Whether the Z-span of ``order_basis`` is closed under products."""
        O = [list(v) for v in self.order_basis]
        A = transpose(O)
        for u in O:
            for v in O:
                c = solve(A, list(self.mul(u, v)))
                if c is None or any(Fraction(t).denominator != 1 for t in c):
                    return False
        return True


def _charpoly(M) -> IntPoly:
    p = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in M]).charpoly(_X)
    return IntPoly.from_rational([Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


def algebra_from_matrices(mats: Sequence, labels: Sequence[str] | None = None) -> RationalAlgebra:
    """Algebra on a Z-basis of integer matrices spanning a ring with 1."""
    n = len(mats[0])
    R = ring_from_basis([tuple(tuple(int(v) for v in row) for row in M) for M in mats], n)
    d = R.rank
    struct = tuple(tuple(tuple(Fraction(v) for v in R.structure[i][j]) for j in range(d)) for i in range(d))
    return RationalAlgebra(
        dim=d,
        labels=tuple(labels) if labels else tuple(f"b{i}" for i in range(d)),
        structure=struct,
        identity_coords=tuple(Fraction(v) for v in R.identity_coords),
        order_basis=tuple(tuple(int(a == i) for a in range(d)) for i in range(d)),
        matrices=R.basis,
    )


def component_lattice(comp: IsotypicComponent) -> list[list[int]]:
    """Basis (rows) of Lambda cap W."""
    P = [list(r) for r in comp.projector]
    n = len(P)
    return integer_kernel(mat_sub(identity(n), P), n)


def restricted_action(G: CrystGroup, basis: list[list[int]]) -> list[list[list[int]]]:
    """Integer matrices of the point-group generators on the given sublattice."""
    H = G.point_group
    B = transpose(basis)  # columns are basis vectors
    out = []
    for i in H.generators:
        h = H.elements[i]
        hB = mat_mul(h, B)
        cols = []
        for c in range(len(basis)):
            x = solve(B, [hB[a][c] for a in range(G.dim)])
            if x is None or any(Fraction(v).denominator != 1 for v in x):
                raise InternalInconsistency("sublattice is not H-stable")
            cols.append([int(v) for v in x])
        out.append(transpose(cols))
    return out


@lru_cache(maxsize=256)
def isotypic_endomorphism_algebra(G: CrystGroup, comp: IsotypicComponent) -> RationalAlgebra:
    basis = component_lattice(comp)
    r = len(basis)
    if r != comp.rank:
        raise InternalInconsistency("component lattice has the wrong rank")
    rho = restricted_action(G, basis)
    comm = integer_commutant(rho, r)
    return algebra_from_matrices(comm)


# ---------------------------------------------------------------------------
# center and field


def center(E: RationalAlgebra) -> list[list[int]]:
    """Z-basis of the center of the marked order (a Q-basis of the center)."""
    d = E.dim
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append([E.structure[i][j][k] - E.structure[j][i][k] for i in range(d)])
    return integer_kernel(rows, d)


@dataclass(frozen=True)
class CenterData:
    basis: tuple[Vec, ...]
    primitive: Vec
    polynomial: IntPoly

    @property
    def degree(self) -> int:
        return len(self.basis)


def _element_polynomial(E: RationalAlgebra, z) -> list[tuple[IntPoly, int]]:
    _, fs = factor_rational_poly(_charpoly(E.left_matrix(z)))
    return fs


def _height(p: IntPoly) -> tuple:
    return (max(abs(c) for c in p.coeffs), sum(abs(c) for c in p.coeffs))


def _primitive_polynomial(E: RationalAlgebra, z, c: int) -> IntPoly | None:
    if not any(z):
        return None
    fs = _element_polynomial(E, z)
    if len(fs) > 1:
        raise NotAField(f"center element with split characteristic polynomial ({len(fs)} factors)")
    p = fs[0][0]
    return p if p.degree == c else None


def center_and_field(E: RationalAlgebra, seed: int = 0, tries: int = 64) -> CenterData:
    """Center basis and the minimal polynomial of a primitive element.

    Candidates are the center basis vectors and their sums and differences
    (the one with the smallest polynomial wins), then seeded pseudo-random
    integer combinations.  An element whose characteristic polynomial has
    two distinct irreducible factors yields a nontrivial idempotent, so the
    center is not a field.
    """
    Z = [tuple(Fraction(x) for x in v) for v in center(E)]
    c = len(Z)
    rng = random.Random(seed)
    small = list(Z)
    if c > 1:
        small += [E.add(x, E.scale(t, y)) for x, y in itertools.combinations(Z, 2) for t in (1, -1)]
    best = None
    for z in small:
        p = _primitive_polynomial(E, z, c)
        if p is not None and (best is None or _height(p) < _height(best[1])):
            best = (z, p)
    if best is not None:
        return CenterData(tuple(Z), best[0], best[1])
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in Z]
        z = tuple(sum((a * v[i] for a, v in zip(coeffs, Z)), Fraction(0)) for i in range(E.dim))
        p = _primitive_polynomial(E, z, c)
        if p is not None:
            return CenterData(tuple(Z), z, p)
    raise NotAField("no primitive element found for the center")


# ---------------------------------------------------------------------------
# division algebra


@dataclass(frozen=True)
class QuaternionBasis:
    """lambda_1^2 = a, lambda_2^2 = b, lambda_1 lambda_2 = -lambda_2 lambda_1 = lambda_3."""

    lambdas: tuple[Vec, Vec, Vec]
    a: Vec
    b: Vec
    a_rational: Fraction | None
    b_rational: Fraction | None


@dataclass(frozen=True)
class DivisionAlgebraDescriptor:
    kind: str  # rational-field, number-field, quaternion, undetermined
    center_polynomial: IntPoly
    center_degree: int
    dim: int
    multiplicity: int
    quaternion: QuaternionBasis | None = None
    note: str = ""

    @property
    def parameters(self) -> tuple[Fraction, Fraction] | None:
        q = self.quaternion
        if q is None or q.a_rational is None:
            return None
        return q.a_rational, q.b_rational


def division_structure(E: RationalAlgebra, m: int, seed: int = 0) -> DivisionAlgebraDescriptor:
    C = center_and_field(E, seed)
    c = C.degree
    if E.dim == m * m * c:
        kind = "rational-field" if c == 1 else "number-field"
        return DivisionAlgebraDescriptor(kind, C.polynomial, c, E.dim, m)
    if m == 1 and E.dim == 4 * c:
        q = quaternion_basis(E, seed, C)
        return DivisionAlgebraDescriptor("quaternion", C.polynomial, c, E.dim, m, q)
    return DivisionAlgebraDescriptor(
        "undetermined",
        C.polynomial,
        c,
        E.dim,
        m,
        note=f"dim {E.dim}, multiplicity {m}, center degree {c}",
    )


def find_zero_divisor(E: RationalAlgebra, seed: int = 0, probes: int = 200):
    """A pair (x, y) of nonzero elements with x y = 0, or None."""
    rng = random.Random(seed)
    for _ in range(probes):
        x = tuple(Fraction(rng.randint(-4, 4)) for _ in range(E.dim))
        if not any(x):
            continue
        L = E.left_matrix(x)
        if rank(L) < E.dim:
            y = tuple(nullspace(L, E.dim)[0])
            return x, y
    return None


def _in_center(E: RationalAlgebra, Z: Sequence[Vec], x) -> bool:
    if not Z:
        return False
    return solve(transpose([list(z) for z in Z]), list(x)) is not None


def _rational_value(E: RationalAlgebra, x) -> Fraction | None:
    """x as a rational multiple of 1, if it is one."""
    one = E.identity_coords
    i = next(i for i, v in enumerate(one) if v)
    r = x[i] / one[i]
    return r if tuple(r * v for v in one) == tuple(x) else None


def _negative_everywhere(E: RationalAlgebra, x) -> bool:
    """All real roots of the characteristic polynomial of x are negative.

    For x in the center these roots are its images under the real
    embeddings.
    """
    p = _charpoly(E.left_matrix(x)).to_sympy()
    return all(r < 0 for r in sympy.Poly(p, _X).real_roots())


def _normalize(E: RationalAlgebra, lam: Vec, sq: Fraction) -> tuple[Vec, Fraction]:
    """Rescale lam so that its (rational) square becomes a squarefree integer."""
    num, den = sq.numerator, sq.denominator
    target = squarefree_part(num * den)
    # lam * den / s has square num*den/s^2 = target
    s2 = Fraction(num * den, target)
    s = sympy.integer_nthroot(int(s2), 2)[0]
    c = Fraction(den, int(s))
    return E.scale(c, lam), Fraction(target)


def _small_vectors(basis: Sequence[Vec], bound: int):
    w = len(basis)
    coeff_sets = sorted(
        (c for c in itertools.product(range(-bound, bound + 1), repeat=w) if any(c)),
        key=lambda c: (max(abs(t) for t in c), sum(abs(t) for t in c), [-t for t in c]),
    )
    for coeffs in coeff_sets:
        yield tuple(sum((a * v[i] for a, v in zip(coeffs, basis)), Fraction(0)) for i in range(len(basis[0])))


def quaternion_basis(E: RationalAlgebra, seed: int = 0, C: CenterData | None = None, bound: int = 2) -> QuaternionBasis:
    C = C or center_and_field(E, seed)
    if E.dim != 4 * C.degree:
        raise NotQuaternion(f"dimension over the center is {Fraction(E.dim, C.degree)}, not 4")
    zd = find_zero_divisor(E, seed)
    if zd is not None:
        raise ZeroDivisorFound("algebra has zero divisors", witness=zd)
    # L0: kernel of the reduced trace, i.e. Tr_Q(L_{x z}) = 0 for all z in Z(E)
    rows = []
    for z in C.basis:
        rows.append([E.trace(E.mul(E.basis_vector(i), z)) for i in range(E.dim)])
    L0 = [tuple(v) for v in nullspace(rows, E.dim)]
    if len(L0) != 3 * C.degree:
        raise InternalInconsistency("trace-zero space has the wrong dimension")
    rational = C.degree == 1
    search = list(_small_vectors(L0, bound)) if rational else list(L0)
    best = None
    for lam1 in search:
        a = E.mul(lam1, lam1)
        if not _in_center(E, C.basis, a):
            continue
        # chi(x) = lam1 x + x lam1 restricted to L0
        images = [E.add(E.mul(lam1, x), E.mul(x, lam1)) for x in L0]
        ker = nullspace(transpose([list(v) for v in images]), len(L0))
        anti = [tuple(sum((k[j] * L0[j][i] for j in range(len(L0))), Fraction(0)) for i in range(E.dim)) for k in ker]
        if len(anti) != 2 * C.degree:
            continue
        lam2_cands = list(_small_vectors(anti, bound)) if rational else anti[:1]
        for lam2 in lam2_cands:
            b = E.mul(lam2, lam2)
            if not _in_center(E, C.basis, b):
                continue
            if rational:
                l1, ar = _normalize(E, lam1, _rational_value(E, a))
                l2, br = _normalize(E, lam2, _rational_value(E, b))
                key = (abs(ar) + abs(br), abs(ar), abs(br))
            else:
                l1, l2, ar, br, key = lam1, lam2, None, None, (0,)
            if best is None or key < best[0]:
                best = (key, l1, l2, ar, br)
            if not rational:
                break
        if best is not None and not rational:
            break
    if best is None:
        raise NotQuaternion("no anticommuting trace-zero pair found")
    _, l1, l2, ar, br = best
    l3 = E.mul(l1, l2)
    a = E.mul(l1, l1)
    b = E.mul(l2, l2)
    neg = tuple(-v for v in l3)
    if E.mul(l2, l1) != neg or not _in_center(E, C.basis, a) or not _in_center(E, C.basis, b):
        raise InternalInconsistency("quaternion relations fail")
    if not any(a) or not any(b):
        raise InternalInconsistency("zero quaternion parameter")
    if not (_negative_everywhere(E, a) and _negative_everywhere(E, b)):
        raise NotQuaternion("quaternion parameters are not totally negative")
    return QuaternionBasis((l1, l2, l3), a, b, ar, br)


@dataclass(frozen=True)
class ComponentAlgebra:
    component: IsotypicComponent
    algebra: RationalAlgebra
    center: CenterData
    division: DivisionAlgebraDescriptor


@lru_cache(maxsize=128)
def component_algebras(G: CrystGroup, seed: int = 0) -> tuple[ComponentAlgebra, ...]:
    out = []
    for comp in rational_isotypic_decomposition(G, seed):
        E = isotypic_endomorphism_algebra(G, comp)
        D = division_structure(E, comp.rational_multiplicity, seed)
        C = center_and_field(E, seed)
        expected = comp.field_degree * (2 if comp.real_type == "C" else 1)
        if C.degree != expected:
            raise InternalInconsistency(
                f"center degree {C.degree} differs from the character field degree {expected}"
            )
        out.append(ComponentAlgebra(comp, E, C, D))
    return tuple(out)
