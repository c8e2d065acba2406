"""Normalizer and mapping-class data.

Covers the centralizer ring End_H(Z^n), the affine centralizer of Gamma,
the translation normalizer {x : (h - 1) x in Z^n}, automorphisms of H that
are realized by conjugation in GL_n(Z), and the finite kernel
G = (N cap tau^{-1}(H)) / Gamma C of the mapping class group sequence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cohomology import class_of, h1, in_NGamma
from .config import DEFAULT_CONFIG, AnalysisConfig
from .crystallo import AffineMap, CrystGroup, PointGroup, fixed_subspace
from .errors import InternalInconsistency, LemmaViolation
from .lattice import IntLattice, LatticeQuotient, preimage_lattice, quotient_mod_subspace
from .linalg import (
    Matrix,
    freeze,
    identity,
    int_det,
    integer_kernel,
    mat_mul,
    mat_pow,
    mat_vec,
    nullspace,
    solve,
    solve_integer,
    transpose,
)

IntMat = tuple[tuple[int, ...], ...]

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


# ---------------------------------------------------------------------------
# commutants and rings


def intertwiner_lattice(left: Sequence[Matrix], right: Sequence[Matrix], n: int, m: int | None = None) -> list[IntMat]:
    """Integer matrices X (n x m) with left[i] X = X right[i] for all i."""
    m = n if m is None else m
    rows = []
    for A, B in zip(left, right):
        for a in range(n):
            for c in range(m):
                row = [0] * (n * m)
                for b in range(n):
                    row[b * m + c] += A[a][b]
                for b in range(m):
                    row[a * m + b] -= B[b][c]
                rows.append(row)
    basis = integer_kernel(rows, n * m) if rows else [
        [int(i == j) for j in range(n * m)] for i in range(n * m)
    ]
    return [tuple(tuple(v[a * m : (a + 1) * m]) for a in range(n)) for v in basis]


def integer_commutant(mats: Sequence[Matrix], n: int) -> list[IntMat]:
    return intertwiner_lattice(mats, mats, n)


@dataclass(frozen=True)
class MatrixRing:
    """A Z-order given by a basis of integer matrices, closed under products.

    ``structure[i][j]`` holds the coordinates of basis[i] @ basis[j].
    """

    n: int
    basis: tuple[IntMat, ...]
    structure: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)
    identity_coords: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, X: Matrix) -> list[Fraction] | None:
        A = [[B[a][b] for B in self.basis] for a in range(self.n) for b in range(self.n)]
        return solve(A, [X[a][b] for a in range(self.n) for b in range(self.n)])

    def element(self, coords: Sequence) -> list[list]:
        out = [[0] * self.n for _ in range(self.n)]
        for c, B in zip(coords, self.basis):
            if c:
                for a in range(self.n):
                    for b in range(self.n):
                        out[a][b] += c * B[a][b]
        return out


def ring_from_basis(basis: Sequence[IntMat], n: int) -> MatrixRing:
    basis = tuple(basis)
    probe = MatrixRing(n, basis, (), ())
    struct = []
    for X in basis:
        row = []
        for Y in basis:
            c = probe.coordinates(mat_mul(X, Y))
            if c is None or any(Fraction(v).denominator != 1 for v in c):
                raise InternalInconsistency("basis does not span a ring")
            row.append(tuple(int(v) for v in c))
        struct.append(tuple(row))
    ident = probe.coordinates(identity(n))
    if ident is None or any(Fraction(v).denominator != 1 for v in ident):
        raise InternalInconsistency("ring does not contain the identity")
    return MatrixRing(n, basis, tuple(struct), tuple(int(v) for v in ident))


@lru_cache(maxsize=256)
def centralizer_ring(G: CrystGroup) -> MatrixRing:
    """End_H(Z^n) with a Z-basis and structure constants."""
    H = G.point_group
    gens = [H.elements[i] for i in H.generators]
    return ring_from_basis(integer_commutant(gens, G.dim), G.dim)


# ---------------------------------------------------------------------------
# affine centralizer and translation normalizer


def centralizer_of_group_is_translations(G: CrystGroup) -> list[list[Fraction]]:
    """Solve for all affine (A, v) commuting with Gamma; return the v-space.

    Every solution must have A = I, and then v ranges over Fix(H).
    """
    n = G.dim
    nv = n * n + n  # unknowns: A row-major, then v
    rows, rhs = [], []

    def A_idx(a, b):
        return a * n + b

    for gen in G.generators():
        h, s = gen.linear, gen.translation
        # A h = h A
        for a in range(n):
            for c in range(n):
                row = [Fraction(0)] * nv
                for b in range(n):
                    row[A_idx(a, b)] += h[b][c]
                    row[A_idx(b, c)] -= h[a][b]
                rows.append(row)
                rhs.append(Fraction(0))
        # A s + v = h v + s
        for a in range(n):
            row = [Fraction(0)] * nv
            for b in range(n):
                row[A_idx(a, b)] += s[b]
                row[n * n + b] -= h[a][b]
            row[n * n + a] += 1
            rows.append(row)
            rhs.append(s[a])
    part = solve(rows, rhs)
    if part is None:
        raise InternalInconsistency("identity does not centralize Gamma")
    null = nullspace(rows, nv)
    ident = [Fraction(int(a == b)) for a in range(n) for b in range(n)]
    if part[: n * n] != ident or any(any(v[: n * n]) for v in null):
        raise LemmaViolation("centralizer contains a non-translation")
    vspace = [v[n * n :] for v in null]
    fix = fixed_subspace(G)
    if len(vspace) != len(fix):
        raise LemmaViolation("centralizer translations differ from Fix(H)")
    return vspace


@dataclass(frozen=True)
class TranslationNormalizer:
    """{x : (h - 1) x in Z^n for all h} = lattice + Fix(H), and its quotient
    by Z^n + Fix(H)."""

    lattice: IntLattice
    fixed: tuple
    quotient: LatticeQuotient

    @property
    def group(self):
        return self.quotient.group

    def contains(self, v) -> bool:
        try:
            self.quotient._part_coords(v)
        except ValueError:
            return False
        return True


@lru_cache(maxsize=256)
def translation_normalizer(G: CrystGroup) -> TranslationNormalizer:
    H = G.point_group
    n = G.dim
    A = []
    for i in H.generators:
        h = H.elements[i]
        A += [[h[a][b] - (a == b) for b in range(n)] for a in range(n)]
    if not A:
        A = [[0] * n]
    part, kernel = preimage_lattice(A, IntLattice.standard(len(A)))
    units = [[int(a == b) for b in range(n)] for a in range(n)]
    Q = quotient_mod_subspace(part, kernel, units)
    return TranslationNormalizer(part, tuple(tuple(k) for k in kernel), Q)


def normalizing_translation(g: Matrix, G: CrystGroup) -> list[Fraction] | None:
    """Some v with (g, v) Gamma (g, v)^{-1} = Gamma, or None.

    ``g`` must normalize H.  Solves (1 - h'') v = s(h'') - g s(h) mod Z^n
    with h'' = g h g^{-1} for the generators h of H.
    """
    H = G.point_group
    n = G.dim
    gi = [[int(x) for x in row] for row in _int_inverse(g)]
    A, c = [], []
    for i in H.generators:
        j = H.lookup(mat_mul(mat_mul(g, H.elements[i]), gi))
        if j is None:
            raise LemmaViolation("matrix does not normalize the point group")
        hj = H.elements[j]
        rhs = [a - b for a, b in zip(G.s(j), mat_vec(g, G.s(i)))]
        A += [[int(a == b) - hj[a][b] for b in range(n)] for a in range(n)]
        c += rhs
    if not A:
        return [Fraction(0)] * n
    left_null = nullspace(transpose(A))
    if left_null:
        Nc = mat_vec(left_null, c)
        lam = solve_integer(left_null, [-x for x in Nc])
        if lam is None:
            return None
    else:
        lam = [0] * len(c)
    v = solve(A, [a + b for a, b in zip(c, lam)])
    if v is None:
        raise InternalInconsistency("congruence system lost its solution")
    return v


def _int_inverse(g):
    from .linalg import int_inverse

    return int_inverse(g)


# ---------------------------------------------------------------------------
# automorphisms of H


@dataclass(frozen=True)
class AutomorphismRealization:
    """An automorphism of H (``images[i]`` is the image of element i) and a
    unimodular X with X h X^{-1} = alpha(h), if one was found."""

    images: tuple[int, ...]
    status: str  # "realized" or "none-up-to-bound"
    witness: IntMat | None
    inner: bool


def automorphisms(H: PointGroup) -> list[tuple[int, ...]]:
    """All automorphisms of H by brute force over generator images."""
    gens = H.generators
    if not gens:
        return [(0,)]
    orders = H.element_orders
    cands = [[x for x in range(H.order) if orders[x] == orders[g]] for g in gens]
    order = H.bfs_order()
    out = []
    for imgs in itertools.product(*cands):
        phi = [None] * H.order
        phi[0] = 0
        ok = True
        for h in order[1:]:
            j, p = H.words[h]
            phi[h] = H.table[imgs[j]][phi[p]]
        if len(set(phi)) != H.order:
            continue
        for j, g in enumerate(gens):
            for h in range(H.order):
                if phi[H.table[g][h]] != H.table[imgs[j]][phi[h]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(phi))
    out.sort()
    return out


def _shell(w: int, r: int):
    """Coefficient vectors with max-norm exactly r, lexicographic order."""
    if r == 0:
        yield (0,) * w
        return
    for c in itertools.product(range(-r, r + 1), repeat=w):
        if max(abs(x) for x in c) == r:
            yield c


def _chunks(it, size):
    buf = []
    for x in it:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def search_unimodular(basis: Sequence[IntMat], n: int, bound: int, collect: bool = False, max_rank: int | None = None):
    """Search Z-combinations of ``basis`` with coefficients in [-bound, bound]
    for matrices of determinant +-1, by increasing max-norm.

    Returns the first hit (or None), or with ``collect`` the list of all hits.
    """
    w = len(basis)
    if w == 0:
        return [] if collect else None
    if max_rank is not None and w > max_rank:
        return None
    Y = np.array([[x for row in B for x in row] for B in basis], dtype=np.int64)
    hits = []
    for r in range(bound + 1):
        for chunk in _chunks(_shell(w, r), 50000):
            C = np.array(chunk, dtype=np.int64)
            M = (C @ Y).reshape(-1, n, n)
            d = np.linalg.det(M.astype(float))
            idx = np.nonzero(np.abs(np.abs(d) - 1) < 1e-6)[0]
            for i in idx:
                X = M[i].tolist()
                if abs(int_det(X)) == 1:
                    X = tuple(tuple(int(v) for v in row) for row in X)
                    if not collect:
                        return X
                    hits.append((chunk[i], X))
    return hits if collect else None


@lru_cache(maxsize=64)
def realized_automorphisms(G: CrystGroup, bound: int = 10) -> tuple[AutomorphismRealization, ...]:
    H = G.point_group
    n = G.dim
    gens = H.generators
    inner = {}
    for x in range(H.order):
        inner.setdefault(tuple(H.conj(x, h) for h in range(H.order)), x)
    out = []
    for phi in automorphisms(H):
        if phi in inner:
            X = H.elements[inner[phi]]
            out.append(AutomorphismRealization(phi, "realized", X, True))
            continue
        left = [H.elements[phi[g]] for g in gens]
        right = [H.elements[g] for g in gens]
        basis = intertwiner_lattice(left, right, n)  # alpha(h) X = X h
        X = search_unimodular(basis, n, bound)
        if X is None:
            out.append(AutomorphismRealization(phi, "none-up-to-bound", None, False))
        else:
            out.append(AutomorphismRealization(phi, "realized", X, False))
    return tuple(out)


# ---------------------------------------------------------------------------
# finite kernel and report


@lru_cache(maxsize=256)
def mcg_finite_kernel(G: CrystGroup) -> tuple[int, tuple[AffineMap, ...]]:
    """Order of G = (N cap tau^{-1}(H)) / Gamma C and translation generators.

    For each h the solutions v of "(h, v) normalizes Gamma" form a coset of
    the translation normalizer; every class is moved to a pure translation
    by the element (h, s(h)) of Gamma and reduced modulo Z^n + Fix(H).
    """
    H = G.point_group
    TN = translation_normalizer(G)
    Q = TN.quotient
    reps = list(_quotient_elements(Q))
    classes = set()
    for h in range(H.order):
        v = normalizing_translation(H.elements[h], G)
        if v is None:
            raise InternalInconsistency("point group element outside the normalizer")
        diff = [a - b for a, b in zip(v, G.s(h))]
        if not TN.contains(diff):
            raise InternalInconsistency("s(h) is not a normalizing translation")
        hinv = G.point_group.elements[H.inverse[h]]
        for t in reps:
            w = [a + b for a, b in zip(v, t)]
            pure = mat_vec(hinv, [a - b for a, b in zip(w, G.s(h))])
            classes.add(Q.coordinates(pure))
    order = len(classes)
    if order != (Q.group.order or 0):
        raise InternalInconsistency("finite kernel order disagrees with the translation quotient")
    gens = tuple(AffineMap.translation_by(list(t)) for t in Q.generators)
    return order, gens


def _quotient_elements(Q: LatticeQuotient):
    if Q.group.free_rank:
        raise InternalInconsistency("infinite translation quotient")
    factors = [d for d in Q.diagonal if d != 1]
    n = Q.part.dim
    for combo in itertools.product(*[range(d) for d in factors]):
        v = [Fraction(0)] * n
        for c, g in zip(combo, Q.generators):
            v = [a + c * b for a, b in zip(v, g)]
        yield v


def finite_order(X: Matrix, limit: int = 120) -> int | None:
    """Order of an integer matrix if it divides ``limit``."""
    n = len(X)
    if mat_pow(X, limit) != identity(n):
        return None
    for d in sorted(d for d in range(1, limit + 1) if limit % d == 0):
        if mat_pow(X, d) == identity(n):
            return d
    return None


@dataclass(frozen=True)
class McgReport:
    holonomy_order: int
    finite_kernel_order: int
    finite_kernel_generators: tuple
    translation_quotient: tuple[int, ...]
    centralizer_rank: int
    centralizer_units: dict
    automorphism_count: int
    inner_count: int
    realized: tuple
    unrealized_count: int
    normalizer_generators: tuple
    class_orbit_lower_bound: int
    n_gamma: str
    statement: str

    def to_dict(self) -> dict:
        return {
            "holonomy_order": self.holonomy_order,
            "finite_kernel": {
                "order": self.finite_kernel_order,
                "generators": [_affine_json(g) for g in self.finite_kernel_generators],
                "translation_quotient": list(self.translation_quotient),
            },
            "centralizer_ring": {"rank": self.centralizer_rank, "units": self.centralizer_units},
            "automorphisms": {
                "order": self.automorphism_count,
                "inner": self.inner_count,
                "realized": len(self.realized),
                "none_up_to_bound": self.unrealized_count,
            },
            "normalizer_generators_in_N_Gamma": [_mat_json(X) for X in self.normalizer_generators],
            "class_orbit_lower_bound": self.class_orbit_lower_bound,
            "N_Gamma": self.n_gamma,
            "statement": self.statement,
        }


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _mat_json(X) -> list:
    return [[int(v) for v in row] for row in X]


def _affine_json(g: AffineMap) -> dict:
    return {"linear": [[_fmt(v) for v in row] for row in g.linear], "translation": [_fmt(v) for v in g.translation]}


def centralizer_units(G: CrystGroup, bound: int, max_rank: int = 4, listed: int = 8) -> dict:
    R = centralizer_ring(G)
    if R.rank > max_rank:
        return {"searched": False, "reason": f"rank {R.rank} > {max_rank}"}
    hits = search_unimodular(R.basis, G.dim, bound, collect=True)
    torsion = []
    for _, X in hits:
        o = finite_order(X)
        if o is not None:
            torsion.append((o, X))
    torsion.sort(key=lambda oX: (oX[0], oX[1]))
    return {
        "searched": True,
        "height_bound": bound,
        "count": len(hits),
        "finite_order_count": len(torsion),
        "finite_order_examples": [{"order": o, "matrix": _mat_json(X)} for o, X in torsion[:listed]],
    }


def _orbit_lower_bound(G: CrystGroup, mats) -> int:
    from .cohomology import act_on_vector, class_vector

    grp, space = h1(G)
    if grp.is_trivial or not mats:
        return 1
    from .linalg import int_inverse

    start = tuple(class_vector(G))
    orbit = {space.coordinates(list(start)): list(start)}
    frontier = [list(start)]
    pairs = [(list(map(list, X)), int_inverse(X)) for X in mats]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in pairs:
                y = act_on_vector(g, gi, G, space, x)
                c = space.coordinates(y)
                if c not in orbit:
                    orbit[c] = y
                    nxt.append(y)
        frontier = nxt
    return len(orbit)


def mcg_report(G: CrystGroup, config: AnalysisConfig = DEFAULT_CONFIG) -> McgReport:
    H = G.point_group
    n = G.dim
    order, gens = mcg_finite_kernel(G)
    TN = translation_normalizer(G)
    R = centralizer_ring(G)
    autos = realized_automorphisms(G, config.height_bound)
    realized = tuple(a for a in autos if a.status == "realized")
    witnesses = sorted({a.witness for a in realized if not a.inner})
    in_n = tuple(X for X in witnesses if in_NGamma(X, G))
    not_in = [X for X in witnesses if X not in in_n]
    grp, _ = h1(G)
    symmorphic = not any(class_of(G))
    gl = f"GL{str(n).translate(_SUB)}(ℤ)"
    if H.order == 1:
        n_gamma = gl
    elif grp.is_trivial or symmorphic:
        n_gamma = f"N_{gl}(H)"
    else:
        n_gamma = f"stabilizer of [s_Γ] in N_{gl}(H)"
    if H.order == 1:
        statement = f"MCG(O) = {gl}"
    elif order > 1:
        statement = "MCG(O)/G ≅ N_Γ/H"
    else:
        statement = "MCG(O) ≅ N_Γ/H"
    return McgReport(
        holonomy_order=H.order,
        finite_kernel_order=order,
        finite_kernel_generators=gens,
        translation_quotient=TN.group.invariant_factors,
        centralizer_rank=R.rank,
        centralizer_units=centralizer_units(G, config.height_bound),
        automorphism_count=len(autos),
        inner_count=sum(1 for a in autos if a.inner),
        realized=realized,
        unrealized_count=len(autos) - len(realized),
        normalizer_generators=in_n,
        class_orbit_lower_bound=_orbit_lower_bound(G, not_in + list(in_n)),
        n_gamma=n_gamma,
        statement=statement,
    )
