from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from flatmoduli.poly import IntPoly, cyclotomic, factor_rational_poly, is_irreducible, squarefree_part


def test_formatting_and_normalization():
    p = IntPoly.from_rational([Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2)])
    assert str(p) == "x^2 + x - 1"
    assert str(cyclotomic(5)) == "x^4 + x^3 + x^2 + x + 1"


def test_cyclotomic_degrees():
    from sympy import totient

    for e in range(1, 40):
        assert cyclotomic(e).degree == totient(e)
        assert is_irreducible(cyclotomic(e))


def _roots_brute(p):
    """Rational roots by the rational root theorem, an independent check."""
    out = set()
    coeffs = list(p.coeffs)
    while coeffs[0] == 0:
        out.add(Fraction(0))
        coeffs.pop(0)
    a0, an = coeffs[0], coeffs[-1]
    for num in range(1, abs(a0) + 1):
        if a0 % num:
            continue
        for den in range(1, abs(an) + 1):
            if an % den:
                continue
            for s in (1, -1):
                r = Fraction(s * num, den)
                if p(r) == 0:
                    out.add(r)
    return out


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_factorization_reproduces_product(roots_num):
    p = IntPoly((1,))
    for r in roots_num:
        p = p * IntPoly((-r, 1))
    p = p * IntPoly((1, 0, 1))  # an irreducible quadratic factor
    content, fs = factor_rational_poly(p)
    q = IntPoly((content,))
    for f, e in fs:
        q = q * f**e
    assert q == p
    linear = {Fraction(-f.coeffs[0], f.coeffs[1]) for f, _ in fs if f.degree == 1}
    assert linear == _roots_brute(p) == set(map(Fraction, roots_num))


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-8) == -2
    assert squarefree_part(1) == 1
    for n, s in product(range(1, 30), [1, -1]):
        k = squarefree_part(s * n)
        m = s * n // k
        assert m > 0 and int(m**0.5) ** 2 == m
