from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CATALOG
from flatmoduli.crystallo import torus
from flatmoduli.errors import CatalogNotFound, NotInNormalizer, NotSPD
from flatmoduli.groupio import load_catalog
from flatmoduli.linalg import leading_minors_positive, mat_mul, transpose
from flatmoduli.moduli import (
    analyze,
    factor_dimension,
    fixset_convexity_check,
    invariant_inner_product,
    teichmuller_descriptor,
)
from flatmoduli.normalizer import realized_automorphisms
from flatmoduli.cohomology import in_NGamma
from oracles import invariant_forms_dimension

F = Fraction


def invariant(B, G):
    return all(mat_mul(mat_mul(transpose(h), B), h) == B for h in G.point_group.elements)


def test_averaging_examples():
    p4 = load_catalog("p4")
    assert invariant_inner_product(p4, [[1, 0], [0, 2]]) == [[F(3, 2), 0], [0, F(3, 2)]]
    assert invariant_inner_product(p4, [[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    seed = [[2, 1], [1, 3]]
    assert invariant_inner_product(torus(2), seed) == seed
    with pytest.raises(NotSPD):
        invariant_inner_product(p4, [[1, 2], [2, 1]])
    with pytest.raises(NotSPD):
        invariant_inner_product(p4, [[1, 1], [0, 1]])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_averaging_is_an_invariant_projection(name, data):
    G = load_catalog(name)
    n = G.dim
    A = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    S = mat_mul(transpose(A), A)
    S = [[S[i][j] + (i == j) for j in range(n)] for i in range(n)]
    B = invariant_inner_product(G, S)
    assert invariant(B, G)
    assert leading_minors_positive(B)
    assert invariant_inner_product(G, B) == B


def test_normalizer_acts_on_invariant_forms(catalog_group):
    G = catalog_group
    B = invariant_inner_product(G, [[(i + 1) * (i == j) for j in range(G.dim)] for i in range(G.dim)])
    for a in realized_automorphisms(G):
        if a.status != "realized":
            continue
        X = [list(r) for r in a.witness]
        if in_NGamma(X, G):
            C = mat_mul(mat_mul(transpose(X), B), X)
            assert invariant(C, G) and leading_minors_positive(C)


def test_convexity_examples():
    r = fixset_convexity_check(torus(2), [[[1, 0], [0, 1]]])
    assert r.passed and r.combinations == 32 * 5
    r = fixset_convexity_check(torus(2), [[[0, -1], [1, 0]]])
    assert r.passed and r.base_form == ((1, 0), (0, 1))
    assert fixset_convexity_check(load_catalog("pm"), [[[-1, 0], [0, -1]]]).passed
    with pytest.raises(NotInNormalizer):
        fixset_convexity_check(load_catalog("pg"), [[[0, 1], [1, 0]]])
    with pytest.raises(NotInNormalizer):
        fixset_convexity_check(load_catalog("pmg"), [[[0, 1], [1, 0]]])


def test_descriptor_dimension(catalog_group):
    G = catalog_group
    d = teichmuller_descriptor(G)
    assert d.dimension == sum(f * factor_dimension(M, K) for M, K, f in d.factors)
    assert d.dimension == invariant_forms_dimension(G.point_group.elements)
    assert d.dimension == G.expectations["teich_dim"]


@pytest.mark.parametrize(
    "name,text,dim",
    [
        ("p1", "GL₂(ℝ)/O(2)", 3),
        ("p4", "GL₁(ℂ)/U(1)", 1),
        ("q8-z4", "GL₁(ℍ)/Sp(1)", 1),
        ("c5-z4", "(GL₁(ℂ)/U(1))²", 2),
    ],
)
def test_descriptor_text(name, text, dim):
    d = teichmuller_descriptor(load_catalog(name))
    assert (d.text, d.dimension) == (text, dim)


def test_shapes():
    assert analyze(torus(2)).shape == "O(2)\\GL₂(ℝ)/GL₂(ℤ)"
    assert analyze("p4").shape == "U(1)\\GL₁(ℂ)/GL₁(ℤ[i])"
    r = analyze("c5-z4")
    assert r.shape_form == "general"
    assert "ℚ(√5)" in r.shape_notes[0]
    assert r.flags == ("schur:assumed",)
    assert analyze("q8-z4").flags == ("schur:suspect",)


def test_branch_rule(catalog_group):
    r = analyze(catalog_group)
    simple = all(c["field_degree"] == 1 for c in r.components)
    assert (r.shape_form == "simple") == simple
    suspect = any(c["indicator"] == -1 for c in r.components)
    assert ("schur:suspect" in r.flags) == suspect


def test_pipeline_examples():
    r = analyze("wallpaper/p1")
    assert r.teich.dimension == 3 and r.h1["group"] == "0" and r.mcg.statement == "MCG(O) = GL₂(ℤ)"
    r = analyze("wallpaper/pg")
    assert r.teich.dimension == 2 and r.h1["class"] == [1] and r.group["bieberbach"]
    with pytest.raises(CatalogNotFound):
        analyze("wallpaper/nothing")
    assert "Teichmüller space" in r.to_text()
