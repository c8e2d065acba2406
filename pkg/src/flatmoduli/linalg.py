"""Exact rational and integer linear algebra.

Matrices are plain nested sequences of ``int`` or ``Fraction``.  Functions
accept any such nesting and return lists of lists, callers freeze them into
tuples when they need hashability.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Number = int | Fraction
Vector = Sequence[Number]
Matrix = Sequence[Sequence[Number]]


# ---------------------------------------------------------------------------
# basic helpers


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def to_frac_matrix(M: Matrix) -> list[list[Fraction]]:
    return [[frac(x) for x in row] for row in M]


def freeze(M: Matrix) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in M)


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if len(M) else 0)


def transpose(M: Matrix) -> list[list]:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def mat_mul(A: Matrix, B: Matrix) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Matrix, v: Vector) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vec_mat(v: Vector, A: Matrix) -> list:
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(len(A[0]))]


def mat_add(A: Matrix, B: Matrix) -> list[list]:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> list[list]:
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(c: Number, A: Matrix) -> list[list]:
    return [[c * a for a in row] for row in A]


def is_integral(M) -> bool:
    if isinstance(M, (int, Fraction)):
        return Fraction(M).denominator == 1
    return all(is_integral(x) for x in M)


def as_int(M):
    """Convert an integral rational object (scalar, vector, matrix) to ints."""
    if isinstance(M, (int, Fraction)):
        f = Fraction(M)
        if f.denominator != 1:
            raise ValueError(f"{f} is not an integer")
        return int(f)
    return [as_int(x) for x in M]


def denominator_lcm(M) -> int:
    if isinstance(M, (int, Fraction)):
        return Fraction(M).denominator
    d = 1
    for x in M:
        d = lcm(d, denominator_lcm(x))
    return d


def mat_pow(A: Matrix, k: int) -> list[list]:
    n = len(A)
    result = identity(n)
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# field (rational) linear algebra


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = to_frac_matrix(M)
    rows, cols = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}, canonical (the basis itself is in RREF)."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(x)
    if basis:
        R2, piv2 = rref(basis)
        basis = R2[: len(piv2)]
    return basis


def solve(A: Matrix, b: Vector) -> list[Fraction] | None:
    """One rational solution of A x = b (free variables zero), or None."""
    rows = len(A)
    n = len(A[0]) if rows else 0
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def det(M: Matrix) -> Fraction:
    A = to_frac_matrix(M)
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def int_det(M: Matrix) -> int:
    """Determinant of an integer matrix (fraction-free Bareiss elimination)."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
        prev = A[c][c]
    return sign * A[n - 1][n - 1]


def inverse(M: Matrix) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(M[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def int_inverse(M: Matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    return as_int(inverse(M))


def is_unimodular(M: Matrix) -> bool:
    return is_integral(M) and abs(int_det(M)) == 1


def leading_minors_positive(M: Matrix) -> bool:
    """Exact positive-definiteness test for a symmetric rational matrix."""
    n = len(M)
    return all(det([row[:k] for row in M[:k]]) > 0 for k in range(1, n + 1))


def scale_to_integer(M: Matrix) -> tuple[list[list[int]], int]:
    d = denominator_lcm(M)
    return [[int(Fraction(x) * d) for x in row] for row in M], d


def primitive_vector(v: Vector) -> list[int]:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    d = denominator_lcm(v)
    w = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g else w


# ---------------------------------------------------------------------------
# integer normal forms


def _pick_min(A, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            x = A[i][j]
            if x != 0 and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                best = (i, j)
    return best


def hermite_normal_form(
    M: Matrix, transform: bool = True
) -> tuple[list[list[int]], list[list[int]] | None]:
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  Nonzero rows
    of ``H`` come first, pivots strictly move right, are positive, and the
    entries above each pivot lie in ``[0, pivot)``.  When several rows are
    candidates for the pivot, the one holding the entry of smallest absolute
    value is used (lowest row index on ties).  With ``transform=False`` the
    second return value is None and no transform is tracked.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    ncols = len(A[0]) if m else 0
    U = identity(m) if transform else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            best = _pick_min(A, range(r, m), [c])
            if best is None:
                break
            p = best[0]
            if p != r:
                A[r], A[p] = A[p], A[r]
                if U is not None:
                    U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if U is not None:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        piv = A[r][c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if U is not None:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def smith_normal_form(
    M: Matrix,
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``, zeros
    last.  Pivots are chosen as the nonzero entry of smallest absolute value,
    scanning rows first and then columns.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        best = _pick_min(A, range(t, m), range(t, n))
        if best is None:
            break
        while True:
            i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
            leftovers = [(i, t) for i in range(t + 1, m) if A[i][t]]
            leftovers += [(t, j) for j in range(t + 1, n) if A[t][j]]
            if leftovers:
                best = min(leftovers, key=lambda ij: abs(A[ij[0]][ij[1]]))
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
            best = (t, t)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def integer_kernel(A: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Basis of the lattice {x in Z^m : A x = 0} (rows in Hermite form)."""
    if not A:
        m = ncols or 0
        return identity(m)
    Ai, _ = scale_to_integer(A)
    m = len(Ai[0])
    H, U = hermite_normal_form(transpose(Ai))
    basis = [U[i] for i in range(m) if not any(H[i])]
    if basis:
        basis = [row for row in hermite_normal_form(basis)[0] if any(row)]
    return basis


def solve_integer(A: Matrix, b: Vector) -> list[int] | None:
    """An integer solution of ``A x = b`` (A rational, b rational) or None."""
    rows = len(A)
    if rows == 0:
        return []
    d = lcm(denominator_lcm(A), denominator_lcm(b))
    Ai = [[int(Fraction(x) * d) for x in row] for row in A]
    bi = [Fraction(x) * d for x in b]
    n = len(Ai[0])
    D, U, V = smith_normal_form(Ai)
    c = mat_vec(U, bi)
    y = [0] * n
    for i in range(rows):
        di = D[i][i] if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            q = Fraction(c[i]) / di
            if q.denominator != 1:
                return None
            y[i] = int(q)
    return mat_vec(V, y)
