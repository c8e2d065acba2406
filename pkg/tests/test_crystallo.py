import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from conftest import CATALOG, SMALL
from flatmoduli.crystallo import AffineMap, close_point_group, is_bieberbach, normalize, torus
from flatmoduli.errors import CatalogNotFound, DimensionMismatch, NotCocompact, OrderExceeded, ParseError
from flatmoduli.groupio import load_any, load_catalog, parse_group, resolve_catalog_name, serialize_group

F = Fraction


def torsion_box_search(G, box=2):
    """Look for a nontrivial element of finite order among (h, s(h) + l), l in a box."""
    H = G.point_group
    for i in range(1, H.order):
        h = np.array(H.elements[i], dtype=object)
        k = H.element_orders[i]
        N = sum(np.linalg.matrix_power(np.array(H.elements[i], dtype=np.int64), j) for j in range(k)).astype(object)
        s = np.array(G.s(i), dtype=object)
        for lam in product(range(-box, box + 1), repeat=G.dim):
            if not any(N.dot(s + np.array(lam, dtype=object))):
                return True
    return False


@pytest.mark.parametrize("name", SMALL)
def test_bieberbach_flag_matches_box_search(name):
    G = load_catalog(name)
    assert is_bieberbach(G) == (not torsion_box_search(G))
    assert is_bieberbach(G) == G.expectations["bieberbach"]


def test_normalization_from_other_basis():
    # p4 generated in a lattice scaled by 3 and rotated coordinates
    gens = [
        AffineMap.make([[0, -1], [1, 0]], [F(1, 3), F(1, 3)]),
        AffineMap.translation_by([3, 0]),
        AffineMap.translation_by([0, 3]),
    ]
    G = normalize(gens)
    assert G.point_group.order == 4
    B = [list(r) for r in G.basis_change]
    for g in gens:
        assert G.contains(g.conjugate_by(B))
    # translations of Gamma are exactly Z^2 in the new basis
    assert G.contains(AffineMap.translation_by([1, 0]))
    assert not G.contains(AffineMap.translation_by([F(1, 2), 0]))


def test_normalized_groups_are_closed(catalog_group):
    G = catalog_group
    H = G.point_group
    for i in range(H.order):
        for j in range(H.order):
            prod_ = G.element(i) * G.element(j)
            assert G.contains(prod_)
        assert G.contains(G.element(i).inverse())
    assert H.elements[0] == tuple(tuple(int(a == b) for b in range(G.dim)) for a in range(G.dim))


def test_torus():
    G = torus(3)
    assert G.point_group.order == 1 and is_bieberbach(G)


def test_not_cocompact():
    with pytest.raises(NotCocompact):
        normalize([AffineMap.translation_by([1, 0])])


def test_order_exceeded():
    with pytest.raises(OrderExceeded):
        close_point_group([[[0, -1], [1, 0]]], max_order=3)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_group("{not json")
    with pytest.raises(ParseError):
        parse_group({"dim": 2})
    with pytest.raises(DimensionMismatch):
        parse_group({"dim": 2, "generators": [{"linear": [[1, 0]]}]})
    with pytest.raises(ParseError):
        parse_group({"dim": 1, "generators": [{"linear": [["1"]], "translation": ["1/0"]}]})


def test_catalog_lookup():
    assert resolve_catalog_name("pg") == "wallpaper/pg"
    assert resolve_catalog_name("G6") == "bieberbach3/G6"
    with pytest.raises(CatalogNotFound):
        load_any("wallpaper/p7")
    assert len(CATALOG) == 26


def test_serialization_round_trip(catalog_group):
    G = catalog_group
    again = parse_group(serialize_group(G))
    assert again == G
    assert json.loads(serialize_group(again)) == json.loads(serialize_group(G))
