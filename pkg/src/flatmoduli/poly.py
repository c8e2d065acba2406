"""Integer polynomials and their factorization over Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import sympy

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[i]`` multiplies x^i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @classmethod
    def from_rational(cls, coeffs: Sequence) -> "IntPoly":
        """Primitive integer multiple of a rational polynomial, positive leading coefficient."""
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g == 0:
            return cls((0,))
        ints = [x // g for x in ints]
        while len(ints) > 1 and ints[-1] == 0:
            ints.pop()
        if ints[-1] < 0:
            ints = [-x for x in ints]
        return cls(tuple(ints))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)), _X, domain="ZZ")

    @classmethod
    def from_sympy(cls, p: sympy.Poly) -> "IntPoly":
        return cls(tuple(int(c) for c in reversed(p.all_coeffs())))

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def factor_rational_poly(p: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """Factor into content and primitive irreducible factors with multiplicity.

    Factors carry a positive leading coefficient and are sorted by
    (degree, coefficients).
    """
    if p.degree < 0:
        raise ValueError("cannot factor the zero polynomial")
    content, factors = p.to_sympy().factor_list()
    out = [(IntPoly.from_sympy(f), int(e)) for f, e in factors]
    fixed = []
    sign = 1
    for f, e in out:
        if f.leading < 0:
            f = IntPoly(tuple(-c for c in f.coeffs))
            sign *= (-1) ** e
        fixed.append((f, e))
    fixed.sort(key=lambda fe: (fe[0].degree, fe[0].coeffs, fe[1]))
    return int(content) * sign, fixed


def is_irreducible(p: IntPoly) -> bool:
    _, fs = factor_rational_poly(p)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree == p.degree


def is_squarefree(p: IntPoly) -> bool:
    _, fs = factor_rational_poly(p)
    return all(e == 1 for _, e in fs)


def cyclotomic(e: int) -> IntPoly:
    return IntPoly.from_sympy(sympy.Poly(sympy.cyclotomic_poly(e, _X), _X))


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n = s * square (sign kept)."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    s = 1
    for p, e in sympy.factorint(m).items():
        if e % 2:
            s *= p
    return sign * s
