import random
from itertools import product
from math import gcd

import pytest
from gmpy2 import mpq

from focaljet.jet import SmoothJet
from focaljet.polygon import (PolygonError, Polygon, classify_corner, det, geometric_witness,
                              is_primitive, primitive, rep_affine_equivalent, rep_orbit_equal,
                              shear, validate_ingredient, zr_action_rep)
from polyfix import SQUARE, const_jet, two_node_reps, unit_square_rep

PRIMITIVE = [(a, b) for a, b in product(range(-3, 4), repeat=2) if gcd(a, b) == 1]


def test_unit_square_validates():
    assert validate_ingredient(unit_square_rep()) == []


def test_wrong_constant_term_is_reported():
    rep = unit_square_rep(extra=const_jet(4, 1))
    bad = validate_ingredient(rep)
    assert bad and "constant term" in bad[0]


def test_polygon_checks():
    with pytest.raises(PolygonError):
        Polygon(list(reversed(SQUARE)))
    with pytest.raises(PolygonError):
        Polygon([(0, 0), (1, 0), (2, 0), (0, 1)])
    sq = Polygon(SQUARE)
    assert sq == Polygon(SQUARE[1:] + SQUARE[:1])
    assert sq.contains_interior((mpq(1, 2), mpq(1, 2)))
    assert not sq.contains_interior((1, mpq(1, 2)))


def test_square_shear():
    moved = Polygon(SQUARE).transform(1, 0)
    assert moved == Polygon([(0, 0), (1, 1), (1, 2), (0, 1)])


def test_edge_vectors_convention():
    xi1, xi2 = Polygon(SQUARE).edge_vectors(0)
    assert xi1 == (1, 0) and xi2 == (0, 1)
    assert det(xi1, xi2) == 1


def test_primitive_vectors():
    assert primitive((mpq(2, 3), mpq(4, 3))) == (1, 2)
    assert is_primitive((3, -2)) and not is_primitive((2, 4))
    with pytest.raises(PolygonError):
        classify_corner((2, 0), (0, 1), 0)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_corner_classification_grid(s):
    for xi1, xi2 in product(PRIMITIVE, repeat=2):
        d0 = xi1[0] * xi2[1] - xi1[1] * xi2[0]
        t = (xi2[0], s * xi2[0] + xi2[1])
        ds = xi1[0] * t[1] - xi1[1] * t[0]
        want = ([] if abs(d0) != 1 else ["delzant"]) + \
            (["fake"] if ds == 0 else ["hidden"] if abs(ds) == 1 else [])
        assert classify_corner(xi1, xi2, s) == want
        assert shear(xi2, s) == t


def test_fake_corner_under_ray():
    # vertex above a marked point: cut-and-shear corner with s = 1
    from focaljet.label import generate
    from focaljet.polygon import IngredientRep, MarkedPoint
    poly = Polygon([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)])
    xi1, xi2 = poly.edge_vectors(3)
    assert "fake" in classify_corner(xi1, xi2, 1)
    lab = generate(1, [], const_jet(3, 1), 3)
    rep = IngredientRep(poly, [MarkedPoint((1, 1), 1)], [lab])
    assert validate_ingredient(rep) == []


@pytest.mark.parametrize("seed", range(10))
def test_planted_witness(seed):
    rng = random.Random(seed)
    rep = unit_square_rep()
    k, b = rng.randint(-3, 3), mpq(rng.randint(-9, 9), rng.randint(1, 4))
    moved = zr_action_rep(rep, k, b)
    assert validate_ingredient(moved) == []
    assert rep_orbit_equal(rep, moved) == (k, b)
    # the action composes additively
    k2 = rng.randint(-2, 2)
    assert zr_action_rep(moved, k2, 1) == zr_action_rep(rep, k + k2, b + 1)


def test_orbit_rejects_different_shapes():
    tri = unit_square_rep()
    tri.polygon = Polygon([(0, 0), (1, 0), (0, 1)])
    assert geometric_witness(unit_square_rep(), tri) is None
    other = unit_square_rep(extra=SmoothJet(4, "XY", {(0, 2): 1}))
    assert rep_orbit_equal(unit_square_rep(), other) is None


def test_rep_affine_equivalence():
    rep, rep2, Gs = two_node_reps(4)
    assert validate_ingredient(rep) == [] and validate_ingredient(rep2) == []
    ok, certs = rep_affine_equivalent(rep, rep2, Gs)
    assert ok and len(certs) == 2
    rep, rep3, Gs = two_node_reps(4, perturb=SmoothJet(4, "XY", {(1, 1): 1}))
    ok, certs = rep_affine_equivalent(rep, rep3, Gs)
    assert not ok and not certs[0].verdict
    with pytest.raises(PolygonError):
        rep_affine_equivalent(rep, rep2, Gs[:1])
