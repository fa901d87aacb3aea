import itertools

from fractions import Fraction

import pytest

from atfkit.hull import (
    boundary_hull,
    disc_classes,
    distinguish,
    edge_affine_lengths,
    inward_normals,
    superpotential_monomials,
)
from atfkit.lattice import LatticePolygon, UnimodularMap, Vec2
from atfkit.markov import MarkovTriple, enumerate_triples
from atfkit.polytope import build_polytope

# frozen from the facet data of the moment triangles
HULL_ORACLE = {
    (1, 1, 1): [(-1, 1), (0, -1), (1, 0)],
    (1, 1, 2): [(-4, 1), (0, -1), (1, 0)],
    (1, 2, 5): [(-6, 1), (-1, -4), (1, 0)],
    (2, 5, 29): [(-33, 4), (-4, -25), (1, 0)],
}


@pytest.mark.parametrize("entries,verts", sorted(HULL_ORACLE.items()))
def test_hull_vertices_oracle(entries, verts):
    h = boundary_hull(MarkovTriple(*entries))
    assert [(v.x, v.y) for v in h.hull.vertices] == verts


def test_inward_normals_unit_square():
    sq = LatticePolygon((Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)))
    assert set(v.as_tuple() for v in inward_normals(sq)) == {
        (0, 1), (-1, 0), (0, -1), (1, 0),
    }


def test_disc_classes_point_inward():
    p = build_polytope(MarkovTriple(1, 2, 5))
    classes = disc_classes(p)
    center = Vec2(Fraction(4, 3), Fraction(-26, 3))  # vertex centroid
    anchors = (p.vertices[0], p.vertices[1], p.vertices[2])
    for n, v in zip(classes, anchors):
        assert n.dot(center - v) > 0


@pytest.mark.parametrize("t", enumerate_triples(10_000), ids=str)
def test_lengths_and_area(t):
    h = boundary_hull(t)
    a, b, c = t.entries()
    assert edge_affine_lengths(h) == (a, b, c)
    assert h.hull.area() == Fraction(3 * a * b * c, 2)
    assert h.hull.contains(Vec2(0, 0), strict=True)


def test_superpotential_monomials_span_hull():
    classes = superpotential_monomials(MarkovTriple(1, 1, 2))
    assert LatticePolygon(classes).vertices == boundary_hull(
        MarkovTriple(1, 1, 2)
    ).hull.vertices


def test_distinguish_figure_trio():
    clifford = MarkovTriple(1, 1, 1)
    chekanov = MarkovTriple(1, 1, 2)
    third = MarkovTriple(1, 2, 5)
    for t1, t2 in itertools.combinations([clifford, chekanov, third], 2):
        distinct, cert = distinguish(t1, t2)
        assert distinct
        assert cert == (
            tuple(sorted(t1.entries())),
            tuple(sorted(t2.entries())),
        )


def test_distinguish_same_triple():
    distinct, cert = distinguish(MarkovTriple(1, 2, 5), MarkovTriple(5, 2, 1))
    assert not distinct
    assert isinstance(cert, UnimodularMap)


@pytest.mark.parametrize("pair", list(itertools.combinations(enumerate_triples(1000), 2)),
                         ids=lambda p: f"{p[0]}-{p[1]}")
def test_pairwise_distinct_up_to_1000(pair):
    assert distinguish(*pair)[0]
