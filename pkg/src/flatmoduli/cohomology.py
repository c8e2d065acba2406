"""First cohomology H^1(H, R^n/Z^n) and the class of a crystallographic group.

With k = |H|, every class has a representative derivation with values in
(1/k)Z^n/Z^n.  Writing a_h = k s(h) mod k, a derivation is determined by its
values on the generators of H (the other values follow along a spanning tree
of the Cayley graph), so the computation runs on x = (a_g)_{g generator} in
(Z/k)^{nt}.  Principal derivations h -> h v - v are generated by v running
over the lattice {v : (h - 1) v in (1/k) Z^n for all h}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .crystallo import CrystGroup
from .errors import InternalInconsistency, NotNormalizing
from .lattice import FiniteAbelianGroup, IntLattice, preimage_lattice
from .linalg import (
    Matrix,
    hermite_normal_form,
    identity,
    int_inverse,
    inverse,
    is_unimodular,
    mat_mul,
    mat_vec,
    smith_normal_form,
    transpose,
)


@dataclass(frozen=True)
class CocycleSpace:
    """Derivations with values in (1/k)Z^n/Z^n modulo principal ones.

    Coordinates
    -----------
    ``x`` vectors have one block of n integers (mod k) per point-group
    generator.  ``transfer[h]`` is the integer matrix with a_h = transfer[h] x.
    ``derivation_basis`` has as columns a basis of the lattice of admissible
    x (it contains k Z^{nt}).  ``coordinates`` maps an admissible x to its
    class in the invariant-factor decomposition of H^1.
    """

    k: int
    n: int
    generators: tuple[int, ...]
    transfer: tuple = field(repr=False)
    derivation_basis: tuple = field(repr=False)
    principal: tuple = field(repr=False)
    relation_transform: tuple = field(repr=False)
    diagonal: tuple[int, ...] = ()
    group: FiniteAbelianGroup = FiniteAbelianGroup()

    @property
    def size(self) -> int:
        return self.n * len(self.generators)

    def value(self, x, h: int) -> list[int]:
        """a_h = k s(h) mod k."""
        return [v % self.k for v in mat_vec(self.transfer[h], x)]

    def is_derivation(self, x, table, elements) -> bool:
        """Check s(gh) = g s(h) + s(g) on every pair (mod Z^n)."""
        vals = [self.value(x, h) for h in range(len(elements))]
        for g in range(len(elements)):
            for h in range(len(elements)):
                lhs = vals[table[g][h]]
                rhs = [a + b for a, b in zip(mat_vec(elements[g], vals[h]), vals[g])]
                if any((a - b) % self.k for a, b in zip(lhs, rhs)):
                    return False
        return True

    @property
    def _basis_inv(self):
        return _cached_inverse(self.derivation_basis)

    def coordinates(self, x) -> tuple[int, ...]:
        if not self.size:
            return ()
        c = mat_vec(self._basis_inv, x)
        if any(Fraction(v).denominator != 1 for v in c):
            raise InternalInconsistency("vector is not a derivation")
        y = mat_vec(self.relation_transform, [int(v) for v in c])
        return tuple(int(y[i]) % d for i, d in enumerate(self.diagonal) if d != 1)

    def lift(self, j: int) -> list[int]:
        """An x vector representing the j-th invariant-factor generator."""
        kept = [i for i, d in enumerate(self.diagonal) if d != 1]
        i = kept[j]
        Uinv = _cached_int_inverse(self.relation_transform)
        c = [Uinv[a][i] for a in range(len(Uinv))]
        return [int(v) for v in mat_vec(self.derivation_basis, c)]


@lru_cache(maxsize=None)
def _cached_inverse(M):
    return tuple(tuple(r) for r in inverse(M))


@lru_cache(maxsize=None)
def _cached_int_inverse(M):
    return tuple(tuple(r) for r in int_inverse(M))


def _transfer_matrices(G: CrystGroup) -> list[list[list[int]]]:
    H = G.point_group
    n = G.dim
    gens = H.generators
    t = len(gens)
    T: list = [None] * H.order
    T[0] = [[0] * (n * t) for _ in range(n)]
    for h in H.bfs_order()[1:]:
        j, p = H.words[h]
        g = H.elements[gens[j]]
        M = mat_mul(g, T[p])
        for a in range(n):
            M[a][j * n + a] += 1
        T[h] = M
    return T


@lru_cache(maxsize=256)
def h1(G: CrystGroup) -> tuple[FiniteAbelianGroup, CocycleSpace]:
    H = G.point_group
    n = G.dim
    k = H.order
    gens = H.generators
    t = len(gens)
    N = n * t
    if N == 0:
        empty = CocycleSpace(k, n, (), (), (), (), (), (), FiniteAbelianGroup())
        return empty.group, empty
    T = _transfer_matrices(G)
    # cocycle identity for every generator g and every h
    rows = []
    for j, gi in enumerate(gens):
        g = H.elements[gi]
        for h in range(H.order):
            gh = H.table[gi][h]
            gTh = mat_mul(g, T[h])
            for a in range(n):
                row = [T[gh][a][b] - gTh[a][b] for b in range(N)]
                row[j * n + a] -= 1
                rows.append([v % k for v in row])
    rows += [[k * int(a == b) for b in range(N)] for a in range(N)]
    R, _ = hermite_normal_form(rows, transform=False)
    R = [r for r in R if any(r)]
    # admissible x: R x = 0 mod k
    D, _, V = smith_normal_form(R)
    cols = []
    for i in range(N):
        d = D[i][i]
        step = k // gcd(d, k)
        cols.append([V[a][i] * step for a in range(N)])
    basis = transpose(cols)
    # principal derivations
    A = []
    for gi in gens:
        g = H.elements[gi]
        A += [[k * (g[a][b] - (a == b)) for b in range(n)] for a in range(n)]
    part, _ = preimage_lattice(A, IntLattice.standard(N))
    principal = []
    for v in part.basis:
        x = mat_vec(A, v)
        principal.append([int(c) for c in x])
    Binv = inverse(basis)
    rel = []
    for q in principal + [[k * int(a == b) for a in range(N)] for b in range(N)]:
        c = mat_vec(Binv, q)
        if any(Fraction(v).denominator != 1 for v in c):
            raise InternalInconsistency("principal derivation outside the derivation lattice")
        rel.append([int(v) for v in c])
    D2, U2, _ = smith_normal_form(transpose(rel))
    diag = tuple(D2[i][i] for i in range(N))
    if any(d == 0 for d in diag):
        raise InternalInconsistency("H^1 is not finite")
    grp = FiniteAbelianGroup(tuple(d for d in diag if d > 1), 0)
    space = CocycleSpace(
        k=k,
        n=n,
        generators=tuple(gens),
        transfer=tuple(tuple(tuple(r) for r in M) for M in T),
        derivation_basis=tuple(tuple(r) for r in basis),
        principal=tuple(tuple(p) for p in principal),
        relation_transform=tuple(tuple(r) for r in U2),
        diagonal=diag,
        group=grp,
    )
    return grp, space


def shifted_vector_system(G: CrystGroup) -> list[list[Fraction]]:
    """s~(h) = s(h) + (h - 1) (sum_g s(g)) / k, cohomologous to s with k s~ = 0."""
    H = G.point_group
    k = H.order
    n = G.dim
    total = [sum(G.s(g)[a] for g in range(k)) for a in range(n)]
    out = []
    for h in range(k):
        M = H.elements[h]
        shift = [Fraction(sum(M[a][b] * total[b] for b in range(n)) - total[a], k) for a in range(n)]
        out.append([G.s(h)[a] + shift[a] for a in range(n)])
    return out


@lru_cache(maxsize=256)
def class_vector(G: CrystGroup) -> tuple[int, ...]:
    """The x vector of the class of s_Gamma."""
    _, space = h1(G)
    if not space.size:
        return ()
    k = space.k
    st = shifted_vector_system(G)
    x = []
    for gi in space.generators:
        for v in st[gi]:
            w = v * k
            if w.denominator != 1:
                raise InternalInconsistency("k s~ is not integral")
            x.append(int(w) % k)
    for h in range(G.point_group.order):
        expect = [int(v * k) % k for v in st[h]]
        if space.value(x, h) != expect:
            raise InternalInconsistency("vector system is not a derivation")
    return tuple(x)


def class_of(G: CrystGroup) -> tuple[int, ...]:
    """Coordinates of [s_Gamma] in H^1 (all zero iff Gamma is symmorphic)."""
    _, space = h1(G)
    return space.coordinates(list(class_vector(G)))


def _check_normalizing(g: Matrix, G: CrystGroup) -> tuple[list[list[int]], list[list[int]] | None]:
    if len(g) != G.dim or not is_unimodular(g):
        raise NotNormalizing("matrix is not in GL_n(Z)")
    g = [[int(v) for v in row] for row in g]
    H = G.point_group
    if H.order == 1:
        return g, None  # H^1 = 0, the inverse is never needed
    gi = int_inverse(g)
    for h in H.generators:
        if H.lookup(mat_mul(mat_mul(g, H.elements[h]), gi)) is None:
            raise NotNormalizing("matrix does not normalize the point group")
    return g, gi


def act_on_vector(g, gi, G: CrystGroup, space: CocycleSpace, x) -> list[int]:
    """x of the derivation h -> g s(g^{-1} h g)."""
    H = G.point_group
    out = []
    for gen in space.generators:
        c = H.lookup(mat_mul(mat_mul(gi, H.elements[gen]), g))
        if c is None:
            raise NotNormalizing("matrix does not normalize the point group")
        a = space.value(x, c)
        out += [v % space.k for v in mat_vec(g, a)]
    return out


def aut_action_on_h1(g: Matrix, G: CrystGroup) -> tuple[tuple[int, ...], ...]:
    """Matrix of [s] -> [g.s] on the invariant-factor generators of H^1.

    Column j holds the coordinates of the image of generator j.
    """
    g, gi = _check_normalizing(g, G)
    grp, space = h1(G)
    r = len(grp.invariant_factors)
    cols = []
    for j in range(r):
        y = act_on_vector(g, gi, G, space, space.lift(j))
        cols.append(space.coordinates(y))
    return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))


def in_NGamma(g: Matrix, G: CrystGroup) -> bool:
    """Whether g in N_{GL_n(Z)}(H) fixes the class of s_Gamma."""
    g, gi = _check_normalizing(g, G)
    grp, space = h1(G)
    if grp.is_trivial:
        return True
    x = list(class_vector(G))
    y = act_on_vector(g, gi, G, space, x)
    return space.coordinates(y) == space.coordinates(x)
