"""Arithmetic in Q(zeta_e) = Q[x]/(Phi_e) in the power basis."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

from .poly import IntPoly, cyclotomic

Cyc = tuple  # coefficient tuple of length phi(e)


class CyclotomicField:
    """Elements are tuples of length ``degree``; entry i multiplies zeta^i."""

    def __init__(self, e: int):
        self.e = max(1, e)
        self.phi = cyclotomic(self.e)
        self.degree = self.phi.degree

    def __repr__(self) -> str:
        return f"CyclotomicField({self.e})"

    def _reduce(self, coeffs: list) -> Cyc:
        c = list(coeffs)
        d = self.degree
        ph = self.phi.coeffs  # monic
        for i in range(len(c) - 1, d - 1, -1):
            a = c[i]
            if a:
                c[i] = 0
                for j in range(d):
                    c[i - d + j] -= a * ph[j]
        c = c[:d] + [0] * max(0, d - len(c))
        return tuple(c)

    def from_int(self, a) -> Cyc:
        return self._reduce([a])

    @property
    def zero(self) -> Cyc:
        return (0,) * self.degree

    @property
    def one(self) -> Cyc:
        return self.from_int(1)

    @cached_property
    def _zeta_powers(self) -> tuple[Cyc, ...]:
        out = []
        for k in range(self.e):
            v = [0] * (k + 1)
            v[k] = 1
            out.append(self._reduce(v))
        return tuple(out)

    def zeta(self, k: int) -> Cyc:
        return self._zeta_powers[k % self.e]

    def from_exponent_counts(self, counts: Sequence[int]) -> Cyc:
        """sum_k counts[k] zeta^k."""
        acc = [0] * self.degree
        for k, m in enumerate(counts):
            if m:
                z = self.zeta(k)
                for i in range(self.degree):
                    acc[i] += m * z[i]
        return tuple(acc)

    def add(self, a: Cyc, b: Cyc) -> Cyc:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Cyc, b: Cyc) -> Cyc:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Cyc) -> Cyc:
        return tuple(-x for x in a)

    def scale(self, c, a: Cyc) -> Cyc:
        return tuple(c * x for x in a)

    def mul(self, a: Cyc, b: Cyc) -> Cyc:
        out = [0] * (2 * self.degree)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def sum(self, items) -> Cyc:
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def galois(self, a: Cyc, k: int) -> Cyc:
        """Image under zeta -> zeta^k (k coprime to e)."""
        acc = [0] * self.degree
        for i, x in enumerate(a):
            if x:
                z = self.zeta(i * k)
                for j in range(self.degree):
                    acc[j] += x * z[j]
        return tuple(acc)

    def conj(self, a: Cyc) -> Cyc:
        return self.galois(a, -1)

    def is_rational(self, a: Cyc) -> bool:
        return all(x == 0 for x in a[1:])

    def rational(self, a: Cyc) -> Fraction:
        if not self.is_rational(a):
            raise ValueError(f"{a} is not rational")
        return Fraction(a[0])

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.e + 1) if gcd(k, self.e) == 1 and k <= max(self.e - 1, 1))

    @property
    def conjugation(self) -> int:
        return self.e - 1 if self.e > 2 else 1

    def to_complex(self, a: Cyc, k: int = 1) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi * k / self.e)
        return sum(complex(x) * z**i for i, x in enumerate(a))

    def min_poly_of_conjugates(self, conjugates: Sequence[Cyc]) -> IntPoly:
        """prod (x - c) over the given conjugates; must have rational coefficients."""
        poly = [self.one]  # coefficients low -> high, entries in the field
        for c in conjugates:
            new = [self.zero] * (len(poly) + 1)
            for i, a in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], a)
                new[i] = self.sub(new[i], self.mul(a, c))
            poly = new
        return IntPoly.from_rational([self.rational(a) for a in poly])


@lru_cache(maxsize=None)
def field(e: int) -> CyclotomicField:
    return CyclotomicField(e)
