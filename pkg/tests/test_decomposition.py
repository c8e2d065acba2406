from fractions import Fraction

import pytest

from flatmoduli.decomposition import (
    lattice_character,
    rational_isotypic_decomposition,
    real_isotypic_data,
)
from flatmoduli.characters import character_table
from flatmoduli.groupio import load_catalog
from flatmoduli.linalg import identity, mat_add, mat_mul


def test_projector_contracts(catalog_group):
    G = catalog_group
    comps = rational_isotypic_decomposition(G)
    n = G.dim
    total = [[Fraction(0)] * n for _ in range(n)]
    for a in comps:
        P = [list(r) for r in a.projector]
        assert mat_mul(P, P) == P
        for h in G.point_group.elements:
            assert mat_mul(h, P) == mat_mul(P, h)
        for b in comps:
            if b is not a:
                assert not any(any(r) for r in mat_mul(P, [list(r) for r in b.projector]))
        total = mat_add(total, P)
    assert total == identity(n)
    assert sum(c.rank for c in comps) == n


def test_dimension_bookkeeping(catalog_group):
    comps = rational_isotypic_decomposition(catalog_group)
    for c in comps:
        M, K, f = real_isotypic_data(c)
        assert len(c.orbit) == (2 * f if K == "C" else f)
        assert M == (c.multiplicity // 2 if K == "H" else c.multiplicity)
        assert c.rank == c.multiplicity * c.degree * len(c.orbit)


def test_q8_component():
    (c,) = rational_isotypic_decomposition(load_catalog("q8-z4"))
    assert (c.real_type, c.multiplicity, c.schur_flag) == ("H", 2, "suspect")
    assert real_isotypic_data(c) == (1, "H", 1)


def test_c5_component():
    (c,) = rational_isotypic_decomposition(load_catalog("c5-z4"))
    assert (c.real_type, c.field_degree) == ("C", 2)
    assert str(c.field_polynomial) == "x^2 + x - 1"
    assert c.schur_flag == "assumed"


def test_lattice_character_is_trace(catalog_group):
    G = catalog_group
    T = character_table(G.point_group)
    chi = lattice_character(G, T)
    for j, C in enumerate(T.classes):
        h = G.point_group.elements[C[0]]
        assert T.field_.rational(chi[j]) == sum(h[i][i] for i in range(G.dim))


@pytest.mark.parametrize("name,types", [("p4", ["C"]), ("G2", ["R", "R"]), ("p1", ["R"]), ("G6", ["R", "R", "R"])])
def test_real_types(name, types):
    comps = rational_isotypic_decomposition(load_catalog(name))
    assert sorted(c.real_type for c in comps) == sorted(types)
