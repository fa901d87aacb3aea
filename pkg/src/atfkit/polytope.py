"""Moment triangle of the weighted projective plane with weights a^2, b^2, c^2.

For a sorted Markov triple (a, b, c) the triangle has oriented edges
a^2 u1, b^2 u2, c^2 u3 with

    u1 = (b^2, -m1),  u2 = -(a^2, m2),  u3 = (0, 1),

where a^2 m1 + b^2 m2 = c^2, m1 = b l1 - 1, m2 = a l2 - 1 and
3c = b l2 + a l1.  The cut directions w1 = -(a, l2), w2 = (-b, l1) and
w3 = -(a w1 + b w2)/c all meet at the weighted barycenter, where the
monotone fiber sits.  Each vertex carries a cyclic-quotient corner of
order the opposite edge weight, recorded as an (order, parameter) pair
with parameter of the form k*l - 1 reduced modulo the order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistency, NotMarkov
from .lattice import LatticePolygon, Vec2, is_primitive, primitive_part
from .markov import MarkovTriple, is_markov

__all__ = [
    "WeightedPolytope",
    "solve_mi",
    "build_polytope",
    "cut_vectors",
    "barycenter",
    "lens_labels",
]


def solve_mi(t: MarkovTriple) -> tuple[int, int, int, int]:
    """The canonical (m1, m2, l1, l2) of a sorted triple.

    m1 is the minimal nonnegative residue of c^2 * (a^2)^-1 mod b^2; the
    other values follow.  Divisibility and the identity 3c = b*l2 + a*l1
    are re-checked and cannot fail for a genuine Markov triple.
    """
    a, b, c = t.sorted().entries()
    if not is_markov(a, b, c):
        raise NotMarkov(str(t))
    a2, b2, c2 = a * a, b * b, c * c
    m1 = (c2 * pow(a2, -1, b2)) % b2 if b2 > 1 else 0
    if (c2 - a2 * m1) % b2 != 0:
        raise InternalInconsistency("m1 residue does not divide out")
    m2 = (c2 - a2 * m1) // b2
    if m2 < 0:
        raise InternalInconsistency("m2 negative")
    if (m1 + 1) % b != 0 or (m2 + 1) % a != 0:
        raise InternalInconsistency("m_i + 1 not divisible by the expected entry")
    l1 = (m1 + 1) // b
    l2 = (m2 + 1) // a
    if 3 * c != b * l2 + a * l1:
        raise InternalInconsistency("3c != b*l2 + a*l1")
    return m1, m2, l1, l2


def _l3(a: int, b: int, c: int) -> tuple[int, int]:
    """(q3, l3) for the corner opposite the (0, 1)-edge.

    Computed by re-solving the defining congruence in the frame where the
    second edge is sent to (0, 1): the roles become (c, a, b) and the
    parameter is the resulting m2-analogue, reduced modulo c^2.
    """
    a2, b2, c2 = a * a, b * b, c * c
    m1f = (b2 * pow(c2, -1, a2)) % a2 if a2 > 1 else 0
    if (b2 - c2 * m1f) % a2 != 0:
        raise InternalInconsistency("transformed frame residue does not divide out")
    m2f = (b2 - c2 * m1f) // a2
    q3 = m2f % c2
    if (q3 + 1) % c != 0:
        raise InternalInconsistency("corner parameter not of the form c*l3 - 1")
    return q3, (q3 + 1) // c


@dataclass(frozen=True)
class WeightedPolytope:
    """Moment triangle plus all combinatorial corner data."""

    triple: MarkovTriple
    m1: int
    m2: int
    l1: int
    l2: int
    l3: int
    u1: Vec2
    u2: Vec2
    u3: Vec2
    w1: Vec2
    w2: Vec2
    w3: Vec2
    vertices: tuple[Vec2, Vec2, Vec2]  # V0, V1, V2 walking the boundary
    lens: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]  # keyed V0, V1, V2
    scale: Fraction = Fraction(1)

    def polygon(self) -> LatticePolygon:
        poly = LatticePolygon(self.vertices)
        if self.scale != 1:
            poly = poly.scaled(self.scale)
        return poly

    def vertex_opposite(self, slot: int) -> Vec2:
        """Vertex opposite the edge carrying the slot entry (0 -> a, ...)."""
        v0, v1, v2 = self.vertices
        return (v2, v0, v1)[slot]

    def cut_vector(self, slot: int) -> Vec2:
        return (self.w1, self.w2, self.w3)[slot]

    def verify(self) -> dict:
        """Re-check every structural invariant; returns a report dict."""
        a, b, c = self.triple.entries()
        a2, b2, c2 = a * a, b * b, c * c
        checks = {
            "markov": is_markov(a, b, c),
            "edge_closure": (a2 * self.u1 + b2 * self.u2 + c2 * self.u3).is_zero(),
            "m_identity": a2 * self.m1 + b2 * self.m2 == c2,
            "m_plus_one_identity": a2 * (self.m1 + 1) + b2 * (self.m2 + 1) == 3 * a * b * c,
            "l_forms": self.m1 == b * self.l1 - 1 and self.m2 == a * self.l2 - 1,
            "three_c": 3 * c == b * self.l2 + a * self.l1,
            "cut_w1_w2": self.w1 == -Vec2(a, self.l2) and self.w2 == Vec2(-b, self.l1),
            "cut_closure": (a * self.w1 + b * self.w2 + c * self.w3).is_zero(),
            "w_primitive": all(is_primitive(w) for w in (self.w1, self.w2, self.w3)),
            "det_u1_u2": self.u1.cross(self.u2) == -c2,
            "area": LatticePolygon(self.vertices).area() == Fraction(a2 * b2 * c2, 2),
            "lens_orders": tuple(k for k, _ in self.lens) == (b2, c2, a2),
            "lens_parameters": all(
                (q + 1) % math.isqrt(k) == 0 and 0 <= q < k for k, q in self.lens
            ),
            "barycenter_identities": _barycenter_identities_hold(self),
            "barycenter_on_cut_lines": _barycenter_on_cut_lines(self),
            "smooth_corners_match": _smooth_corners_match(self),
        }
        checks["all"] = all(checks.values())
        return checks


def _barycenter_identities_hold(p: WeightedPolytope) -> bool:
    a, b, c = p.triple.entries()
    a2, b2, c2 = a * a, b * b, c * c
    id1 = a * c * p.w2 - b * c * p.w1 == 3 * c2 * p.u3
    id2 = b * c * p.w1 - a * b * p.w3 == 3 * b2 * p.u2
    id3 = a * b * p.w3 - a * c * p.w2 == 3 * a2 * p.u1
    weighted = (a2 * b * c) * p.w1 + (b2 * a * c) * p.w2 + (c2 * a * b) * p.w3
    return id1 and id2 and id3 and weighted.is_zero()


def _barycenter_on_cut_lines(p: WeightedPolytope) -> bool:
    center = barycenter(p)
    for slot in range(3):
        v = p.vertex_opposite(slot)
        if p.cut_vector(slot).cross(center - v) != 0:
            return False
    return True


def _smooth_corners_match(p: WeightedPolytope) -> bool:
    # a corner is unimodular exactly when its lens order is 1
    v0, v1, v2 = p.vertices
    rays = {
        0: (v1 - v0, v2 - v0),
        1: (v0 - v1, v2 - v1),
        2: (v0 - v2, v1 - v2),
    }
    for i, (r1, r2) in rays.items():
        p1 = primitive_part(r1)[0]
        p2 = primitive_part(r2)[0]
        det = abs(p1.cross(p2))
        order = p.lens[i][0]
        if det != order or (det == 1) != (order == 1):
            return False
    return True


def build_polytope(t: MarkovTriple) -> WeightedPolytope:
    """Construct the moment triangle and all derived data."""
    st = t.sorted()
    a, b, c = st.entries()
    a2, b2, c2 = a * a, b * b, c * c
    m1, m2, l1, l2 = solve_mi(st)
    u1 = Vec2(b2, -m1)
    u2 = -Vec2(a2, m2)
    u3 = Vec2(0, 1)
    v0 = Vec2(0, 0)
    v1 = v0 + a2 * u1
    v2 = v1 + b2 * u2
    if not (v2 + c2 * u3) == v0:
        raise InternalInconsistency("edges do not close up")
    w1 = -Vec2(a, l2)
    w2 = Vec2(-b, l1)
    s = a * w1 + b * w2
    if s.x % c != 0 or s.y % c != 0:
        raise InternalInconsistency("w3 is not integral")
    w3 = Vec2(-(s.x // c), -(s.y // c))
    if not is_primitive(w3):
        raise InternalInconsistency("w3 is not primitive")
    q3, l3 = _l3(a, b, c)
    lens = (
        (b2, m1),  # V0, opposite b^2 u2
        (c2, q3),  # V1, opposite c^2 u3
        (a2, m2 % a2),  # V2, opposite a^2 u1
    )
    poly = WeightedPolytope(
        triple=st,
        m1=m1, m2=m2, l1=l1, l2=l2, l3=l3,
        u1=u1, u2=u2, u3=u3,
        w1=w1, w2=w2, w3=w3,
        vertices=(v0, v1, v2),
        lens=lens,
    )
    report = poly.verify()
    if not report["all"]:
        bad = [k for k, v in report.items() if not v]
        raise InternalInconsistency(f"polytope invariants failed: {bad}")
    return poly


def cut_vectors(p: WeightedPolytope) -> tuple[Vec2, Vec2, Vec2]:
    if not _barycenter_identities_hold(p):
        raise InternalInconsistency("barycenter identities fail")
    return p.w1, p.w2, p.w3


def barycenter(p: WeightedPolytope) -> Vec2:
    """Center of mass with weights a^2, b^2, c^2 on the opposite vertices."""
    a, b, c = p.triple.entries()
    a2, b2, c2 = a * a, b * b, c * c
    total = a2 + b2 + c2
    num = a2 * p.vertex_opposite(0) + b2 * p.vertex_opposite(1) + c2 * p.vertex_opposite(2)
    return Vec2(Fraction(num.x, total), Fraction(num.y, total))


def lens_labels(p: WeightedPolytope) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
    """(order, parameter) per vertex, in V0, V1, V2 order."""
    return p.lens
