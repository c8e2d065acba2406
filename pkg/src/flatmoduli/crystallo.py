"""Crystallographic groups, point groups and normalization to Lambda = Z^n."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, lcm
from typing import Iterable, Sequence

from .errors import NotCocompact, OrderExceeded
from .lattice import IntLattice
from .linalg import (
    as_int,
    det,
    freeze,
    identity,
    inverse,
    is_integral,
    mat_add,
    mat_mul,
    mat_vec,
    nullspace,
    to_frac_matrix,
    transpose,
)

IntMat = tuple[tuple[int, ...], ...]


def _mod1(x: Fraction) -> Fraction:
    return x - floor(x)


def reduce_mod_lattice(v: Sequence) -> tuple[Fraction, ...]:
    """Representative of v + Z^n in [0, 1)^n."""
    return tuple(_mod1(Fraction(x)) for x in v)


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation, exact rational entries."""

    linear: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    @classmethod
    def make(cls, linear, translation=None) -> "AffineMap":
        L = freeze(to_frac_matrix(linear))
        n = len(L)
        t = tuple(Fraction(x) for x in (translation if translation is not None else [0] * n))
        return cls(L, t)

    @classmethod
    def translation_by(cls, v) -> "AffineMap":
        n = len(v)
        return cls.make(identity(n), v)

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        L = mat_mul(self.linear, other.linear)
        t = [a + b for a, b in zip(mat_vec(self.linear, other.translation), self.translation)]
        return AffineMap(freeze(L), tuple(t))

    def inverse(self) -> "AffineMap":
        Li = inverse(self.linear)
        t = [-x for x in mat_vec(Li, self.translation)]
        return AffineMap(freeze(Li), tuple(t))

    def __call__(self, x):
        return [a + b for a, b in zip(mat_vec(self.linear, x), self.translation)]

    def conjugate_by(self, B) -> "AffineMap":
        """The same map written in coordinates x' = B^{-1} x."""
        Bi = inverse(B)
        L = mat_mul(mat_mul(Bi, self.linear), B)
        return AffineMap(freeze(L), tuple(mat_vec(Bi, self.translation)))

    def is_translation(self) -> bool:
        n = self.dim
        return all(self.linear[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# finite matrix groups


def _mat_key(M) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in M)


def close_matrix_group(gens: Iterable, max_order: int = 2000) -> list[tuple]:
    """All elements of the finite group generated by rational matrices."""
    gens = [_mat_key(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator to know the dimension")
    n = len(gens[0])
    e = _mat_key(identity(n))
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = _mat_key(mat_mul(g, h))
                if x not in seen:
                    seen.add(x)
                    order.append(x)
                    nxt.append(x)
                    if len(seen) > max_order:
                        raise OrderExceeded(f"group has more than {max_order} elements")
        frontier = nxt
    return order


def _sort_key(M) -> tuple:
    return tuple(x for row in M for x in row)


@dataclass(frozen=True)
class PointGroup:
    """A finite subgroup of GL_n(Z).

    ``elements`` are sorted lexicographically except that the identity always
    comes first; ``table[i][j]`` is the index of ``elements[i] @ elements[j]``.
    """

    elements: tuple[IntMat, ...]
    table: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    exponent: int = field(compare=False)

    identity_index: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements[0])

    @cached_property
    def index(self) -> dict:
        return {h: i for i, h in enumerate(self.elements)}

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = self.table[i][x]
                k += 1
            out.append(k)
        return tuple(out)

    def power(self, i: int, k: int) -> int:
        k %= self.element_orders[i]
        x = 0
        for _ in range(k):
            x = self.table[i][x]
        return x

    def conj(self, g: int, h: int) -> int:
        """Index of g h g^{-1}."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def lookup(self, M) -> int | None:
        return self.index.get(tuple(tuple(int(x) for x in row) for row in M))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set chosen greedily (high element order first)."""
        cand = sorted(range(1, self.order), key=lambda i: (-self.element_orders[i], i))
        gens: list[int] = []
        span = {0}
        for c in cand:
            if c in span:
                continue
            gens.append(c)
            span = self.subgroup_generated(gens)
            if len(span) == self.order:
                break
        return tuple(gens)

    def subgroup_generated(self, gens: Sequence[int]) -> set[int]:
        span = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[g][x]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    @cached_property
    def words(self) -> tuple[tuple[int, int] | None, ...]:
        """Spanning tree: ``words[h] = (j, p)`` with h = gens[j] * p, None at identity."""
        out: list = [None] * self.order
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for p in frontier:
                for j, g in enumerate(self.generators):
                    h = self.table[g][p]
                    if h not in seen:
                        seen.add(h)
                        out[h] = (j, p)
                        nxt.append(h)
            frontier = nxt
        return tuple(out)

    def bfs_order(self) -> list[int]:
        order = [0]
        seen = {0}
        for h in order:
            for g in self.generators:
                x = self.table[g][h]
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        return order


def _point_group_from_elements(elems: Iterable[IntMat]) -> PointGroup:
    elems = list(elems)
    n = len(elems[0])
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    rest = sorted((h for h in elems if h != e), key=_sort_key)
    ordered = [e] + rest
    index = {h: i for i, h in enumerate(ordered)}
    table = tuple(
        tuple(index[freeze(mat_mul(a, b))] for b in ordered) for a in ordered
    )
    exp = 1
    for i in range(len(ordered)):
        k, x = 1, i
        while x != 0:
            x = table[i][x]
            k += 1
        exp = lcm(exp, k)
    return PointGroup(tuple(ordered), table, exp)


def close_point_group(gens: Iterable, max_order: int = 2000) -> PointGroup:
    """Close integer matrices under multiplication into a finite point group."""
    gens = list(gens)
    for g in gens:
        if not is_integral(g):
            raise ValueError("point group generators must be integer matrices")
        if abs(det(g)) != 1:
            raise ValueError("point group generators must be invertible over Z")
    if not gens:
        raise ValueError("empty generating set")
    elems = close_matrix_group(gens, max_order)
    return _point_group_from_elements(tuple(tuple(int(x) for x in r) for r in h) for h in elems)


# ---------------------------------------------------------------------------
# crystallographic groups


@dataclass(frozen=True)
class CrystGroup:
    """A crystallographic group with translation lattice Z^n.

    ``vector_system[i]`` is s(h_i) reduced to [0, 1)^n for the point group
    element ``point_group.elements[i]``, so Gamma consists of the maps
    ``x -> h x + s(h) + lambda``.  ``basis_change`` is the matrix B whose
    columns are the original lattice basis; it is not part of equality.
    """

    dim: int
    point_group: PointGroup
    vector_system: tuple[tuple[Fraction, ...], ...]
    basis_change: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False, default=())
    name: str | None = field(compare=False, default=None)
    expect: tuple = field(compare=False, default=(), repr=False)

    @property
    def H(self) -> PointGroup:
        return self.point_group

    def s(self, i: int) -> tuple[Fraction, ...]:
        return self.vector_system[i]

    def element(self, i: int) -> AffineMap:
        return AffineMap.make(self.point_group.elements[i], self.vector_system[i])

    def generators(self) -> list[AffineMap]:
        """Point-group generators with their translations, then unit translations."""
        n = self.dim
        gens = [self.element(i) for i in self.point_group.generators]
        gens += [AffineMap.translation_by([int(i == j) for j in range(n)]) for i in range(n)]
        return gens

    def contains(self, g: AffineMap) -> bool:
        i = self.point_group.lookup(g.linear) if is_integral(g.linear) else None
        if i is None:
            return False
        return all((a - b).denominator == 1 for a, b in zip(g.translation, self.s(i)))

    @property
    def expectations(self) -> dict:
        return dict(self.expect)

    def with_name(self, name: str | None, expect: dict | None = None) -> "CrystGroup":
        return CrystGroup(
            self.dim,
            self.point_group,
            self.vector_system,
            self.basis_change,
            name,
            tuple(sorted((expect or {}).items())),
        )


def normalize(gens: Sequence[AffineMap], max_order: int = 2000, name: str | None = None) -> CrystGroup:
    """Bring a generating set of a crystallographic group to normal form.

    The translation subgroup is obtained from Schreier generators, its Hermite
    basis becomes the new coordinate basis, so the result has Lambda = Z^n
    and an integral point group.
    """
    gens = list(gens)
    if not gens:
        raise NotCocompact("no generators")
    n = gens[0].dim
    # breadth-first closure of the linear parts, with a coset representative each
    e = _mat_key(identity(n))
    reps = {e: AffineMap.make(identity(n))}
    order = [e]
    for h in order:
        for g in gens:
            x = _mat_key(mat_mul(g.linear, h))
            if x not in reps:
                reps[x] = g * reps[h]
                order.append(x)
                if len(order) > max_order:
                    raise OrderExceeded(f"point group has more than {max_order} elements")
    # Schreier generators of Gamma cap ker(tau)
    translations = []
    for h in order:
        for g in gens:
            t = reps[_mat_key(mat_mul(g.linear, h))].inverse() * g * reps[h]
            if any(t.translation):
                translations.append(list(t.translation))
    lat = IntLattice.from_generators(translations, n) if translations else IntLattice(n, ())
    if not lat.full_rank:
        raise NotCocompact(f"translation lattice has rank {lat.rank} < {n}")
    B = transpose([list(b) for b in lat.basis])
    Bi = inverse(B)
    elems = []
    svals = {}
    for h in order:
        Hn = mat_mul(mat_mul(Bi, h), B)
        if not is_integral(Hn):
            raise AssertionError("point group not integral in the lattice basis")
        key = tuple(tuple(int(x) for x in row) for row in as_int(Hn))
        elems.append(key)
        svals[key] = reduce_mod_lattice(mat_vec(Bi, reps[h].translation))
    pg = _point_group_from_elements(elems)
    s = tuple(svals[h] for h in pg.elements)
    return CrystGroup(n, pg, s, freeze(B), name)


def norm_element(H: PointGroup, i: int) -> list[list[int]]:
    """N_h = 1 + h + ... + h^{k-1} for h = elements[i] of order k."""
    h = H.elements[i]
    n = H.dim
    acc = [[0] * n for _ in range(n)]
    p = identity(n)
    for _ in range(H.element_orders[i]):
        acc = mat_add(acc, p)
        p = mat_mul(h, p)
    return acc


def torsion_in_coset(G: CrystGroup, i: int) -> bool:
    """Whether the coset of h_i contains an element of finite order."""
    N = norm_element(G.point_group, i)
    target = mat_vec(N, G.s(i))
    image = IntLattice.from_generators(transpose(N), G.dim)
    return image.contains(target)


def is_bieberbach(G: CrystGroup) -> bool:
    return not any(torsion_in_coset(G, i) for i in range(1, G.point_group.order))


def fixed_subspace(G: CrystGroup) -> list[list[Fraction]]:
    """Basis of Fix(H) = {v : h v = v for all h}."""
    n = G.dim
    rows = []
    for i in G.point_group.generators:
        h = G.point_group.elements[i]
        rows += [[h[a][b] - (a == b) for b in range(n)] for a in range(n)]
    return nullspace(rows, n) if rows else [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]


def torus(n: int) -> CrystGroup:
    return normalize([AffineMap.translation_by([int(i == j) for j in range(n)]) for i in range(n)], name=f"torus{n}")
