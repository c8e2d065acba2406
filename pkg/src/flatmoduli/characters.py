"""Exact character tables of finite groups (Dixon-Schneider).

Class-sum matrices are diagonalized simultaneously over F_p, with p the
smallest prime such that p = 1 (mod exponent) and p > 2 sqrt(|H|).  The
resulting characters mod p are lifted to Z[zeta_e] by counting eigenvalue
multiplicities through the power maps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .crystallo import PointGroup
from .cyclotomic import Cyc, CyclotomicField
from .cyclotomic import field as cyclotomic_field
from .errors import InternalInconsistency, PrimeSearchFailed

PRIME_SEARCH_LIMIT = 10**6


def conjugacy_classes(H: PointGroup) -> list[tuple[int, ...]]:
    """Classes as sorted index tuples, ordered by smallest member (identity first)."""
    seen = set()
    classes = []
    for x in range(H.order):
        if x in seen:
            continue
        cls = sorted({H.conj(g, x) for g in range(H.order)})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p^2 > 4 |H|."""
    e = max(exponent, 1)
    p = 1
    while True:
        p += e
        if p > PRIME_SEARCH_LIMIT:
            raise PrimeSearchFailed(f"no prime = 1 mod {e} below {PRIME_SEARCH_LIMIT}")
        if p * p > 4 * order and sympy.isprime(p):
            return p


def _nullspace_mod(A: list[list[int]], p: int, ncols: int) -> list[list[int]]:
    A = [[x % p for x in row] for row in A]
    piv = []
    r = 0
    for c in range(ncols):
        q = next((i for i in range(r, len(A)) if A[i][c]), None)
        if q is None:
            continue
        A[r], A[q] = A[q], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == len(A):
            break
    basis = []
    for fcol in (c for c in range(ncols) if c not in piv):
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-A[i][fcol]) % p
        basis.append(v)
    return basis


def _solve_coords_mod(S: list[list[int]], v: list[int], p: int) -> list[int]:
    """Coordinates c with sum c_i S[i] = v (the S[i] independent)."""
    k = len(S)
    n = len(v)
    rows = [[S[i][j] for i in range(k)] + [v[j]] for j in range(n)]
    null = _nullspace_mod(rows, p, k + 1)
    for w in null:
        if w[k] % p:
            inv = pow(w[k], -1, p)
            return [(-x * inv) % p for x in w[:k]]
    raise InternalInconsistency("vector not in the invariant subspace")


@dataclass(frozen=True)
class CharacterTable:
    """Character table with exact values in Z[zeta_e].

    ``values[c][j]`` is the value of character c on class j.  Power maps are
    stored for every k coprime to e, ``galois[c][k]`` is the index of the
    character g -> chi(g^k).
    """

    exponent: int
    prime: int
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    power_maps: tuple[tuple[int, tuple[int, ...]], ...]
    values: tuple[tuple[Cyc, ...], ...]
    degrees: tuple[int, ...]
    indicators: tuple[int, ...]
    galois: tuple[tuple[tuple[int, int], ...], ...]
    orbits: tuple[tuple[int, ...], ...]
    group_order: int
    field_: CyclotomicField = field(compare=False, repr=False)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def conjugation(self) -> int:
        return self.field_.conjugation

    def power_map(self, k: int) -> tuple[int, ...]:
        k %= max(self.exponent, 1)
        for kk, m in self.power_maps:
            if kk % max(self.exponent, 1) == k:
                return m
        raise KeyError(k)

    def galois_image(self, c: int, k: int) -> int:
        return dict(self.galois[c])[k]

    def value(self, c: int, element: int) -> Cyc:
        return self.values[c][self.class_of[element]]

    def inner_product(self, a: list[Cyc], b: list[Cyc]) -> Fraction:
        """(1/|H|) sum_g a(g) conj(b(g)), which must be rational."""
        F = self.field_
        acc = F.zero
        for j, size in enumerate(self.class_sizes):
            acc = F.add(acc, F.scale(size, F.mul(a[j], F.conj(b[j]))))
        if not F.is_rational(acc):
            raise InternalInconsistency("irrational inner product")
        return F.rational(acc) / self.group_order

    def is_real(self, c: int) -> bool:
        return self.galois_image(c, self.conjugation) == c

    def orbit_of(self, c: int) -> tuple[int, ...]:
        return next(o for o in self.orbits if c in o)

    def stabilizer(self, c: int) -> tuple[int, ...]:
        return tuple(k for k, img in self.galois[c] if img == c)

    def to_complex(self, c: int) -> list[complex]:
        return [self.field_.to_complex(v) for v in self.values[c]]


def class_matrices(H: PointGroup, classes, class_of) -> list[list[list[int]]]:
    """M_j[k][l] = #{x in C_j : x^{-1} z_l in C_k}, z_l a fixed element of C_l."""
    r = len(classes)
    mats = []
    for Cj in classes:
        M = [[0] * r for _ in range(r)]
        for l, Cl in enumerate(classes):
            z = Cl[0]
            for x in Cj:
                y = H.table[H.inverse[x]][z]
                M[class_of[y]][l] += 1
        mats.append(M)
    return mats


def _common_eigenvectors(mats, p: int, rng: random.Random, r: int) -> list[list[int]]:
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    found = []
    stalls = 0
    while spaces:
        S = spaces.pop()
        if len(S) == 1:
            found.append(S[0])
            continue
        coeffs = [rng.randrange(p) for _ in mats]
        M = [[sum(c * m[a][b] for c, m in zip(coeffs, mats)) % p for b in range(r)] for a in range(r)]
        # restriction of M to span(S)
        images = [[sum(M[a][b] * v[b] for b in range(r)) % p for a in range(r)] for v in S]
        R = [_solve_coords_mod(S, w, p) for w in images]  # R[i] = coords of M S[i]
        k = len(S)
        pieces = []
        for lam in range(p):
            A = [[(R[i][j] - (lam if i == j else 0)) % p for i in range(k)] for j in range(k)]
            null = _nullspace_mod(A, p, k)
            if null:
                pieces.append(
                    [[sum(c[i] * S[i][a] for i in range(k)) % p for a in range(r)] for c in null]
                )
        if sum(len(x) for x in pieces) != k:
            raise InternalInconsistency("class matrices not diagonalizable mod p")
        if len(pieces) == 1:
            stalls += 1
            if stalls > 500:
                raise InternalInconsistency("could not separate characters mod p")
            spaces.append(S)
            continue
        spaces.extend(pieces)
    return found


def _primitive_root_of_unity(e: int, p: int) -> int:
    g = sympy.primitive_root(p)
    return pow(g, (p - 1) // e, p)


def character_table(H: PointGroup, seed: int = 0) -> CharacterTable:
    n = H.order
    e = H.exponent
    p = dixon_prime(n, e)
    classes = conjugacy_classes(H)
    r = len(classes)
    class_of = [0] * n
    for j, C in enumerate(classes):
        for x in C:
            class_of[x] = j
    sizes = [len(C) for C in classes]
    inv_class = [class_of[H.inverse[C[0]]] for C in classes]
    mats = class_matrices(H, classes, class_of)
    rng = random.Random(seed)
    vecs = _common_eigenvectors(mats, p, rng, r)
    if len(vecs) != r:
        raise InternalInconsistency("wrong number of characters")

    z = _primitive_root_of_unity(e, p)
    powers = [[class_of[H.power(C[0], t)] for t in range(e)] for C in classes]
    F = cyclotomic_field(e)
    einv = pow(e, -1, p)
    chars = []
    for w in vecs:
        inv0 = pow(w[0], -1, p)
        w = [x * inv0 % p for x in w]
        S = sum(w[j] * w[inv_class[j]] * pow(sizes[j], -1, p) for j in range(r)) % p
        d2 = n * pow(S, -1, p) % p
        d = next((d for d in range(1, isqrt(n) + 1) if d * d % p == d2), None)
        if d is None:
            raise InternalInconsistency("no admissible degree")
        chi = [w[j] * d * pow(sizes[j], -1, p) % p for j in range(r)]
        vals = []
        for j in range(r):
            counts = []
            for a in range(e):
                m = sum(chi[powers[j][t]] * pow(z, (-a * t) % e, p) for t in range(e)) * einv % p
                if m > d:
                    raise InternalInconsistency("eigenvalue multiplicity out of range")
                counts.append(m)
            if sum(counts) != d:
                raise InternalInconsistency("multiplicities do not add up to the degree")
            vals.append(F.from_exponent_counts(counts))
        chars.append((d, tuple(vals)))

    trivial = tuple(F.one for _ in range(r))
    chars.sort(key=lambda dv: (dv[0], dv[1] != trivial, dv[1]))
    degrees = tuple(d for d, _ in chars)
    values = tuple(v for _, v in chars)

    units = F.units
    power_maps = tuple((k, tuple(class_of[H.power(C[0], k)] for C in classes)) for k in units)
    index = {v: c for c, v in enumerate(values)}
    galois = []
    for c, v in enumerate(values):
        row = []
        for k, pm in power_maps:
            img = tuple(v[pm[j]] for j in range(r))
            if img not in index:
                raise InternalInconsistency("Galois image is not a character")
            row.append((k, index[img]))
        galois.append(tuple(row))
    orbits = []
    seen = set()
    for c in range(r):
        if c in seen:
            continue
        orb = tuple(sorted({img for _, img in galois[c]}))
        seen.update(orb)
        orbits.append(orb)

    sq = [class_of[H.table[C[0]][C[0]]] for C in classes]
    indicators = []
    for v in values:
        acc = F.sum(F.scale(sizes[j], v[sq[j]]) for j in range(r))
        if not F.is_rational(acc) or F.rational(acc) % n:
            raise InternalInconsistency("non-integral Frobenius-Schur indicator")
        indicators.append(int(F.rational(acc) / n))

    table = CharacterTable(
        exponent=e,
        prime=p,
        classes=tuple(classes),
        class_of=tuple(class_of),
        power_maps=power_maps,
        values=values,
        degrees=degrees,
        indicators=tuple(indicators),
        galois=tuple(galois),
        orbits=tuple(orbits),
        group_order=n,
        field_=F,
    )
    _check_orthogonality(table)
    return table


def _check_orthogonality(T: CharacterTable) -> None:
    r = T.num_classes
    for a in range(r):
        for b in range(a, r):
            ip = T.inner_product(list(T.values[a]), list(T.values[b]))
            if ip != (1 if a == b else 0):
                raise InternalInconsistency(f"characters {a}, {b} not orthonormal")
