from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from conftest import SMALL
from flatmoduli.cohomology import in_NGamma
from flatmoduli.crystallo import AffineMap, torus
from flatmoduli.groupio import load_catalog
from flatmoduli.linalg import int_det, int_inverse, mat_mul
from flatmoduli.normalizer import (
    automorphisms,
    centralizer_of_group_is_translations,
    centralizer_ring,
    mcg_finite_kernel,
    mcg_report,
    normalizing_translation,
    realized_automorphisms,
    translation_normalizer,
)
from oracles import normalizing_subset, unimodular_matrices

F = Fraction


def conjugates_into(G, g: AffineMap) -> bool:
    gi = g.inverse()
    return all(G.contains(g * x * gi) for x in G.generators())


def test_centralizer_ring_contracts(catalog_group):
    G = catalog_group
    R = centralizer_ring(G)
    for B in R.basis:
        for h in G.point_group.elements:
            assert mat_mul(B, h) == mat_mul(h, B)
    for i, X in enumerate(R.basis):
        for j, Y in enumerate(R.basis):
            assert R.element(R.structure[i][j]) == mat_mul(X, Y)
    assert R.element(R.identity_coords) == [[int(a == b) for b in range(G.dim)] for a in range(G.dim)]


def test_centralizer_ring_examples():
    assert centralizer_ring(torus(2)).rank == 4
    R = centralizer_ring(load_catalog("p4"))
    assert R.rank == 2
    minus = [[-1, 0], [0, -1]]
    assert any(mat_mul(B, B) == minus for B in R.basis)
    assert centralizer_ring(load_catalog("q8-z4")).rank == 4


def test_affine_centralizer_is_translations(catalog_group):
    # raises if a nonidentity linear part solves the equations
    vs = centralizer_of_group_is_translations(catalog_group)
    for v in vs:
        for h in catalog_group.point_group.elements:
            assert [sum(h[a][b] * v[b] for b in range(len(v))) for a in range(len(v))] == list(v)


def test_affine_centralizer_examples():
    assert len(centralizer_of_group_is_translations(torus(2))) == 2
    vs = centralizer_of_group_is_translations(load_catalog("pg"))
    assert len(vs) == 1 and vs[0][1] == 0 and vs[0][0] != 0
    assert centralizer_of_group_is_translations(load_catalog("G6")) == []


def test_translation_normalizer_examples():
    assert translation_normalizer(torus(2)).group.is_trivial
    assert str(translation_normalizer(load_catalog("pm")).group) == "Z/2"
    assert str(translation_normalizer(load_catalog("G6")).group) == "Z/2 x Z/2 x Z/2"


@pytest.mark.parametrize("name", SMALL)
def test_translation_normalizer_box_count(name):
    # when Fix(H) = 0, count {x in (1/k)Z^n / Z^n : (h - 1) x in Z^n}
    G = load_catalog(name)
    TN = translation_normalizer(G)
    if TN.fixed:
        return
    k = G.point_group.order
    H = [np.array(h) for h in G.point_group.elements]
    count = 0
    for x in product(range(k), repeat=G.dim):
        x = np.array(x)
        if all(np.all(((h - np.eye(G.dim, dtype=int)) @ x) % k == 0) for h in H):
            count += 1
    assert count == TN.group.order


def test_automorphism_counts():
    assert len(automorphisms(load_catalog("p4").point_group)) == 2
    assert len(automorphisms(load_catalog("p6m").point_group)) == 12
    assert len(automorphisms(load_catalog("q8-z4").point_group)) == 24
    assert len(automorphisms(torus(2).point_group)) == 1


def test_realized_automorphisms_examples():
    (a,) = realized_automorphisms(torus(2))
    assert a.status == "realized" and a.witness == ((1, 0), (0, 1))
    for name in ("p4", "p3"):
        G = load_catalog(name)
        H = G.point_group
        autos = realized_automorphisms(G)
        inv = tuple(H.inverse)
        (a,) = [x for x in autos if x.images == inv]
        assert a.status == "realized"
        X = [list(r) for r in a.witness]
        g = H.generators[0]
        assert mat_mul(mat_mul(X, H.elements[g]), int_inverse(X)) == [list(r) for r in H.elements[H.inverse[g]]]


def test_realized_witnesses_and_subgroup(catalog_group):
    G = catalog_group
    H = G.point_group
    autos = realized_automorphisms(G)
    realized = {a.images for a in autos if a.status == "realized"}
    for a in autos:
        if a.status != "realized":
            continue
        X = [list(r) for r in a.witness]
        assert abs(int_det(X)) == 1
        Xi = int_inverse(X)
        for h in range(H.order):
            assert H.lookup(mat_mul(mat_mul(X, H.elements[h]), Xi)) == a.images[h]
    for p in realized:
        for q in realized:
            assert tuple(p[q[h]] for h in range(H.order)) in realized


@pytest.mark.parametrize("name", SMALL)
def test_normalizing_translation_agrees_with_membership(name):
    G = load_catalog(name)
    mats = normalizing_subset(unimodular_matrices(G.dim, 1), G)
    for g in mats[:200]:
        g = g.tolist()
        v = normalizing_translation(g, G)
        assert (v is not None) == in_NGamma(g, G)
        if v is not None:
            assert conjugates_into(G, AffineMap.make(g, v))


def test_finite_kernel_examples():
    assert mcg_finite_kernel(torus(2))[0] == 1
    order, gens = mcg_finite_kernel(load_catalog("pm"))
    assert order == 2
    assert gens[0] == AffineMap.translation_by([0, F(1, 2)])


def test_finite_kernel_generators(catalog_group):
    G = catalog_group
    order, gens = mcg_finite_kernel(G)
    TN = translation_normalizer(G)
    assert TN.group.order % order == 0
    zero = (0,) * len(TN.group.invariant_factors)
    for g in gens:
        assert conjugates_into(G, g)
        # not in Gamma C: nonzero modulo Z^n + Fix(H)
        assert TN.quotient.coordinates(list(g.translation)) != zero


def test_finite_kernel_g6_brute_force():
    # count normalizing (h, v) with v in (1/2)Z^3 / Z^3, divided by |H|
    G = load_catalog("G6")
    count = 0
    for h in range(G.point_group.order):
        for v in product((0, F(1, 2)), repeat=3):
            if conjugates_into(G, AffineMap.make(G.point_group.elements[h], list(v))):
                count += 1
    assert count // G.point_group.order == mcg_finite_kernel(G)[0] == 8


def test_reports():
    r = mcg_report(torus(2))
    assert r.statement == "MCG(O) = GL₂(ℤ)" and r.finite_kernel_order == 1
    r = mcg_report(load_catalog("pg"))
    assert r.holonomy_order == 2 and r.finite_kernel_order == 2
    r = mcg_report(load_catalog("q8-z4"))
    assert r.centralizer_units["searched"] and r.centralizer_units["finite_order_count"] >= 8
