"""Convex-hull invariant of the central torus of a mutated diagram.

The three facet normals of the moment triangle, read as loops on the
torus, span a lattice triangle whose edge affine lengths recover the
Markov triple itself.  Affine length is preserved by every unimodular
map, so triangles coming from different triples can never be identified:
that is the distinguishing test implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import VerificationFailed
from .lattice import (
    LatticePolygon,
    UnimodularMap,
    Vec2,
    equivalent,
    is_primitive,
    primitive_part,
)
from .markov import MarkovTriple
from .polytope import WeightedPolytope, build_polytope

__all__ = [
    "BoundaryHull",
    "disc_classes",
    "inward_normals",
    "boundary_hull",
    "edge_affine_lengths",
    "superpotential_monomials",
    "distinguish",
]


def inward_normals(poly: LatticePolygon) -> tuple[Vec2, ...]:
    """Primitive inward normal of every edge (CCW polygon: rotate left)."""
    out = []
    for e in poly.edges():
        n = Vec2(-e.y, e.x)
        out.append(primitive_part(n)[0])
    return tuple(out)


def disc_classes(p: WeightedPolytope) -> tuple[Vec2, Vec2, Vec2]:
    """Primitive inward facet normals, in the edge order a^2u1, b^2u2, c^2u3."""
    normals = []
    interior = _centroid(p.vertices)
    for u in (p.u1, p.u2, p.u3):
        n = Vec2(-u.y, u.x)
        n = primitive_part(n)[0]
        # orient toward the interior
        v_on_edge = p.vertices[0] if u is p.u1 else (p.vertices[1] if u is p.u2 else p.vertices[2])
        if n.dot(interior - v_on_edge) < 0:
            n = -n
        normals.append(n)
    return tuple(normals)


def _centroid(points) -> Vec2:
    n = len(points)
    sx = sum(Fraction(p.x) for p in points)
    sy = sum(Fraction(p.y) for p in points)
    return Vec2(sx / n, sy / n)


@dataclass(frozen=True)
class BoundaryHull:
    """Three primitive loop classes, their hull and its edge lengths."""

    classes: tuple[Vec2, Vec2, Vec2]
    hull: LatticePolygon
    lengths: tuple[int, int, int]
    provenance: MarkovTriple

    def verify(self) -> dict:
        a, b, c = self.provenance.entries()
        checks = {
            "classes_primitive": all(is_primitive(v) for v in self.classes),
            "origin_interior": self.hull.contains(Vec2(0, 0), strict=True),
            "lengths_match_edges": tuple(sorted(self.lengths))
            == tuple(int(x) for x in self.hull.edge_affine_lengths()),
            "lengths_are_triple": tuple(sorted(self.lengths)) == (a, b, c),
            "area": self.hull.area() == Fraction(3 * a * b * c, 2),
        }
        checks["all"] = all(checks.values())
        return checks


def boundary_hull(t: MarkovTriple) -> BoundaryHull:
    st = t.sorted()
    p = build_polytope(st)
    classes = disc_classes(p)
    hull = LatticePolygon(classes)
    lengths = edge_lengths_of(hull)
    h = BoundaryHull(classes=classes, hull=hull, lengths=lengths, provenance=st)
    report = h.verify()
    if not report["all"]:
        bad = [k for k, v in report.items() if not v]
        raise VerificationFailed(f"hull invariants failed for {st}: {bad}")
    return h


def edge_lengths_of(poly: LatticePolygon) -> tuple[int, ...]:
    lengths = poly.edge_affine_lengths()
    if any(l.denominator != 1 for l in lengths):
        raise VerificationFailed("integer polygon produced fractional edge lengths")
    return tuple(int(l) for l in lengths)


def edge_affine_lengths(h: BoundaryHull) -> tuple[int, int, int]:
    """Edge affine lengths; must equal the provenance triple."""
    lengths = edge_lengths_of(h.hull)
    if lengths != h.provenance.sorted().entries():
        raise VerificationFailed(
            f"hull lengths {lengths} differ from triple {h.provenance}"
        )
    return lengths


def superpotential_monomials(t: MarkovTriple) -> tuple[Vec2, Vec2, Vec2]:
    """The disc classes as Laurent exponents; their Newton polytope is the hull."""
    h = boundary_hull(t)
    newton = LatticePolygon(h.classes)
    if newton.vertices != h.hull.vertices:
        raise VerificationFailed("Newton polytope differs from the hull")
    return h.classes


Certificate = Union[
    tuple[tuple[int, ...], tuple[int, ...]],  # differing length multisets
    UnimodularMap,  # equivalence witness
]


def distinguish(t1: MarkovTriple, t2: MarkovTriple) -> tuple[bool, Optional[Certificate]]:
    """True iff the hulls are inequivalent; certificate either way.

    The affine-length multisets are the primary certificate; a full
    normal-form comparison backs them up so the test stays sound even if
    the multisets agree.
    """
    h1, h2 = boundary_hull(t1), boundary_hull(t2)
    l1, l2 = tuple(sorted(h1.lengths)), tuple(sorted(h2.lengths))
    if l1 != l2:
        return True, (l1, l2)
    eq, witness = equivalent(h1.hull, h2.hull)
    if not eq:
        return True, (l1, l2)
    return False, witness
