"""Triangulated surfaces, their quivers, and compatible commutation matrices."""
from __future__ import annotations

import pytest

from qcluster.errors import InvalidSurface, NoCompatibleLambda
from qcluster.surface import (
    b_matrix,
    build_quiver,
    bundled_surface_names,
    check_gentle,
    find_lambda,
    load_surface,
    neighborhood,
    pair_from_surface,
)
from qcluster.torus import check_compatible

from conftest import WHEEL3


def test_bundled_names_cover_the_corpus():
    names = bundled_surface_names()
    for name in ("annulus", "pentagon", "hexagon", "square"):
        assert name in names


def test_annulus_counts(annulus):
    assert annulus.n == 2
    assert annulus.m == 4
    assert annulus.is_internal(1) and annulus.is_internal(2)
    assert not annulus.is_internal(3)


def test_b_matrix_annulus(annulus):
    assert b_matrix(annulus) == [[0, -2], [2, 0], [-1, 1], [-1, 1]]


def test_b_matrix_pentagon(pentagon):
    assert b_matrix(pentagon) == [
        [0, 1],
        [-1, 0],
        [1, 0],
        [-1, 0],
        [1, -1],
        [0, 1],
        [0, -1],
    ]


def test_b_matrix_hexagon(hexagon):
    assert b_matrix(hexagon) == [
        [0, -1, 0],
        [1, 0, 1],
        [0, -1, 0],
        [1, 0, 0],
        [-1, 0, 0],
        [0, 1, -1],
        [0, 0, 1],
        [0, 0, -1],
        [-1, 1, 0],
    ]


def test_b_matrix_square(square):
    assert b_matrix(square) == [[0], [1], [-1], [1], [-1]]


def test_annulus_quiver_has_a_double_arrow_and_no_relations(quivers):
    q = quivers["annulus"]
    assert [(a.name, a.source, a.target) for a in q.arrows] == [
        ("a", 1, 2),
        ("b", 1, 2),
    ]
    assert q.relations == frozenset()


def test_pentagon_quiver_is_a_single_arrow(quivers):
    q = quivers["pentagon"]
    assert [(a.name, a.source, a.target) for a in q.arrows] == [("a", 2, 1)]


def test_hexagon_quiver_arrows(quivers):
    q = quivers["hexagon"]
    assert [(a.name, a.source, a.target) for a in q.arrows] == [
        ("a", 1, 2),
        ("b", 3, 2),
    ]
    assert q.relations == frozenset()


def test_internal_triangle_produces_relations():
    q = build_quiver(load_surface(WHEEL3))
    assert [(a.name, a.source, a.target) for a in q.arrows] == [
        ("a", 1, 2),
        ("b", 2, 3),
        ("c", 3, 1),
    ]
    assert q.relations == frozenset({("a", "b"), ("b", "c"), ("c", "a")})


def test_corpus_quivers_are_gentle(quivers):
    for q in quivers.values():
        check_gentle(q)
    check_gentle(build_quiver(load_surface(WHEEL3)))


def test_arrow_named_raises_on_unknown_name(quivers):
    with pytest.raises(KeyError):
        quivers["annulus"].arrow_named("z")


def test_neighborhood_lists_both_triangles(pentagon):
    nb = neighborhood(pentagon, 1)
    assert nb.arc == 1
    t1 = pentagon.triangles[nb.triangle1]
    t2 = pentagon.triangles[nb.triangle2]
    assert 1 in t1 and 1 in t2
    assert {nb.a1, nb.a2} == set(t1) - {1}
    assert {nb.a3, nb.a4} == set(t2) - {1}


def test_flanks_read_the_cyclic_order(pentagon):
    # triangle (3, 4, 1): walking counterclockwise from 1 meets 3 first
    assert pentagon.ccw_flank(0, 1) == 3
    assert pentagon.cw_flank(0, 1) == 4


def test_find_lambda_on_the_double_arrow_matrix():
    assert find_lambda([[0, 2], [-2, 0]]) == [[0, 1], [-1, 0]]


def test_find_lambda_pads_a_single_column():
    assert find_lambda([[0], [1]]) == [[0, -1], [1, 0]]


def test_find_lambda_reports_unreachable_case():
    with pytest.raises(NoCompatibleLambda):
        find_lambda([[0]])


def test_find_lambda_results_are_certified():
    for b in ([[0, 2], [-2, 0]], [[0], [1]], [[0, -2], [2, 0], [-1, 1], [-1, 1]]):
        lam = find_lambda(b)
        check_compatible(b, lam)


def test_pair_from_surface_annulus_is_frozen(annulus):
    pair = pair_from_surface(annulus)
    assert pair.b_tilde == ((0, -2), (2, 0), (-1, 1), (-1, 1))
    assert pair.lam == ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
    assert pair.d == (2, 2)


def test_pair_from_surface_diagonals(surfaces):
    assert pair_from_surface(surfaces["pentagon"]).d == (1, 1)
    assert pair_from_surface(surfaces["hexagon"]).d == (1, 1, 1)
    assert pair_from_surface(surfaces["square"]).d == (1,)


def test_pentagon_lambda_couples_the_two_internal_arcs(surfaces):
    pair = pair_from_surface(surfaces["pentagon"])
    assert pair.lam[0][1] == 1
    assert pair.lam[1][0] == -1


def test_load_surface_accepts_a_dict():
    t = load_surface(WHEEL3)
    assert t.n == 3
    assert t.m == 9


def test_load_surface_rejects_unknown_arcs_in_triangles():
    with pytest.raises(InvalidSurface):
        load_surface(
            {
                "name": "x",
                "arcs": [{"id": 1, "kind": "internal"}],
                "triangles": [[1, 2, 3]],
            }
        )


def test_load_surface_rejects_repeated_arcs_in_a_triangle():
    with pytest.raises(InvalidSurface):
        load_surface(
            {
                "name": "x",
                "arcs": [
                    {"id": 1, "kind": "internal"},
                    {"id": 2, "kind": "boundary"},
                    {"id": 3, "kind": "boundary"},
                ],
                "triangles": [[1, 1, 2], [1, 3, 2]],
            }
        )


def test_load_surface_rejects_internal_arc_on_one_triangle():
    with pytest.raises(InvalidSurface):
        load_surface(
            {
                "name": "x",
                "arcs": [
                    {"id": 1, "kind": "internal"},
                    {"id": 2, "kind": "boundary"},
                    {"id": 3, "kind": "boundary"},
                ],
                "triangles": [[1, 2, 3]],
            }
        )
