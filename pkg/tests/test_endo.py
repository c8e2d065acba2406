from fractions import Fraction

import pytest
import sympy

from flatmoduli.crystallo import torus
from flatmoduli.decomposition import rational_isotypic_decomposition
from flatmoduli.endo import (
    algebra_from_matrices,
    center_and_field,
    component_algebras,
    division_structure,
    isotypic_endomorphism_algebra,
    quaternion_basis,
)
from flatmoduli.errors import NotAField, NotQuaternion, ZeroDivisorFound
from flatmoduli.groupio import load_catalog
from flatmoduli.poly import is_irreducible


def algebra(name, i=0):
    G = load_catalog(name) if isinstance(name, str) else name
    comp = rational_isotypic_decomposition(G)[i]
    return isotypic_endomorphism_algebra(G, comp), comp


def test_every_component_algebra(catalog_group):
    for ca in component_algebras(catalog_group):
        E = ca.algebra
        assert E.order_closed()
        assert is_irreducible(ca.center.polynomial)
        D = ca.division
        if D.kind != "undetermined":
            dim_D = ca.center.degree * (4 if D.kind == "quaternion" else 1)
            assert E.dim == ca.component.rational_multiplicity**2 * dim_D


def test_torus_algebra():
    E, comp = algebra(torus(2))
    assert E.dim == 4 and not E.is_commutative()
    C = center_and_field(E)
    assert str(C.polynomial) == "x - 1"
    assert division_structure(E, comp.rational_multiplicity).kind == "rational-field"
    with pytest.raises(ZeroDivisorFound) as info:
        quaternion_basis(E)
    x, y = info.value.witness
    assert any(x) and any(y) and not any(E.mul(x, y))


def test_gaussian_component():
    E, comp = algebra("p4")
    assert E.dim == 2 and E.is_commutative()
    assert str(center_and_field(E).polynomial) == "x^2 + 1"
    assert division_structure(E, 1).kind == "number-field"
    with pytest.raises(NotQuaternion):
        quaternion_basis(E)


def test_c5_component():
    E, _ = algebra("c5-z4")
    assert E.dim == 4 and E.is_commutative()
    p = center_and_field(E).polynomial
    assert p.degree == 4 and is_irreducible(p)
    # a root generates Q(zeta_5): the polynomial splits there
    z = sympy.exp(2 * sympy.pi * sympy.I / 5)
    assert len(sympy.factor_list(p.to_sympy().as_expr(), extension=z)[1]) == 4


def check_quaternion(E, q):
    l1, l2, l3 = q.lambdas
    one = E.identity_coords
    assert E.mul(l1, l1) == E.scale(q.a_rational, one)
    assert E.mul(l2, l2) == E.scale(q.b_rational, one)
    assert E.mul(l1, l2) == l3
    assert E.mul(l2, l1) == E.scale(-1, l3)
    for lam in q.lambdas:
        assert E.trace(lam) == 0


def test_hamilton_quaternions():
    E, comp = algebra("q8-z4")
    D = division_structure(E, comp.rational_multiplicity)
    assert D.kind == "quaternion"
    assert D.parameters == (Fraction(-1), Fraction(-1))
    check_quaternion(E, D.quaternion)


def test_dicyclic_quaternions():
    E, comp = algebra("dic12-z4")
    q = quaternion_basis(E)
    assert sorted((q.a_rational, q.b_rational)) == [-3, -1]
    check_quaternion(E, q)


def test_split_center_is_rejected():
    diag = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    E = algebra_from_matrices(diag)
    with pytest.raises(NotAField):
        center_and_field(E)


def test_center_degree_matches_character_field(catalog_group):
    for ca in component_algebras(catalog_group):
        c = ca.component
        assert ca.center.degree == c.field_degree * (2 if c.real_type == "C" else 1)
