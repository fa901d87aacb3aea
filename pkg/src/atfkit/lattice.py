"""Exact 2D lattice geometry.

Vectors carry integer or exact rational components.  Unimodular maps are
2x2 integer matrices of determinant +-1 together with a rational
translation.  Polygons are strictly convex, counterclockwise, with a
deterministic vertex order (lexicographically smallest vertex first).

Equivalence of integer polygons under GL(2,Z) plus translations is decided
through a canonical normal form: translate a vertex to the origin, send its
outgoing primitive edge direction to (1, 0), pin the residual shear with
the second edge, and take the lexicographically smallest result over all
vertex and reflection choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    DegenerateGeometry,
    NoIntegralSolution,
    NonPrimitiveVector,
    NotConvex,
    NotUnimodular,
    ZeroVector,
)

Scalar = Union[int, Fraction]

__all__ = [
    "Vec2",
    "UnimodularMap",
    "LatticePolygon",
    "primitive_part",
    "affine_length",
    "is_primitive",
    "transvection",
    "monodromy_from_constraints",
    "normal_form",
    "normal_form_with_map",
    "equivalent",
]


def _norm(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class Vec2:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", _norm(self.x))
        object.__setattr__(self, "y", _norm(self.y))

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __rmul__(self, s: Scalar) -> "Vec2":
        return Vec2(s * self.x, s * self.y)

    def cross(self, o: "Vec2") -> Scalar:
        return self.x * o.y - self.y * o.x

    def dot(self, o: "Vec2") -> Scalar:
        return self.x * o.x + self.y * o.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return isinstance(self.x, int) and isinstance(self.y, int)

    def as_tuple(self) -> tuple[Scalar, Scalar]:
        return (self.x, self.y)

    def __str__(self):
        return f"({self.x},{self.y})"


ZERO = Vec2(0, 0)


def primitive_part(v: Vec2) -> tuple[Vec2, Fraction]:
    """Write v = lam * p with p a primitive integer vector and lam > 0."""
    if v.is_zero():
        raise ZeroVector("the zero vector has affine length 0 and no direction")
    fx, fy = Fraction(v.x), Fraction(v.y)
    den = math.lcm(fx.denominator, fy.denominator)
    nx, ny = int(fx * den), int(fy * den)
    g = math.gcd(nx, ny)
    lam = Fraction(g, den)
    return Vec2(nx // g, ny // g), lam


def affine_length(v: Vec2) -> Fraction:
    if v.is_zero():
        return Fraction(0)
    return primitive_part(v)[1]


def is_primitive(v: Vec2) -> bool:
    return v.is_integral() and not v.is_zero() and math.gcd(v.x, v.y) == 1


@dataclass(frozen=True)
class UnimodularMap:
    """x -> M x + t with M = [[a, b], [c, d]] integral, det M = +-1."""

    a: int
    b: int
    c: int
    d: int
    t: Vec2 = ZERO

    def __post_init__(self):
        if self.det() not in (1, -1):
            raise NotUnimodular(f"determinant {self.det()} is not +-1")

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t: Vec2) -> "UnimodularMap":
        return cls(1, 0, 0, 1, t)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply_vec(self, v: Vec2) -> Vec2:
        """Linear part only (tangent vectors ignore the translation)."""
        return Vec2(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)

    def apply_point(self, p: Vec2) -> Vec2:
        return self.apply_vec(p) + self.t

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """self after other."""
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.apply_vec(other.t) + self.t,
        )

    def inverse(self) -> "UnimodularMap":
        s = self.det()
        ia, ib, ic, id_ = s * self.d, -s * self.b, -s * self.c, s * self.a
        inv_lin = UnimodularMap(ia, ib, ic, id_)
        return UnimodularMap(ia, ib, ic, id_, -inv_lin.apply_vec(self.t))

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))


def transvection(w: Vec2, k: int) -> UnimodularMap:
    """The shear v -> v + k * det(w, v) * w; fixes the line through w."""
    if not is_primitive(w):
        raise NonPrimitiveVector(f"{w} is not primitive")
    p, q = w.x, w.y
    return UnimodularMap(1 - k * p * q, k * p * p, -k * q * q, 1 + k * p * q)


def monodromy_from_constraints(fix: Vec2, frm: Vec2, to: Vec2) -> UnimodularMap:
    """The unique linear map sending fix -> fix and frm -> to.

    Raises NoIntegralSolution / NotUnimodular if the solution is not an
    integral matrix of determinant 1.  When it is, the result is
    automatically a transvection along fix.
    """
    if not is_primitive(fix):
        raise NonPrimitiveVector(f"{fix} is not primitive")
    den = fix.cross(frm)
    if den == 0:
        raise DegenerateGeometry("fix and frm are linearly dependent")
    # M = [fix | to] * [fix | frm]^-1, solved with rational arithmetic
    entries = []
    for rf, rt in ((fix.x, to.x), (fix.y, to.y)):
        # row of M: (rf, rt) * inverse of columns [fix frm]
        m0 = Fraction(rf * frm.y - rt * fix.y, den)
        m1 = Fraction(rt * fix.x - rf * frm.x, den)
        entries.extend([m0, m1])
    if any(e.denominator != 1 for e in entries):
        raise NoIntegralSolution(f"no integral map fixes {fix} and sends {frm} to {to}")
    a, b, c, d = (int(e) for e in entries)
    if a * d - b * c != 1:
        raise NotUnimodular(f"constrained map has determinant {a * d - b * c}")
    m = UnimodularMap(a, b, c, d)
    # unipotent + fixed primitive vector forces a transvection along fix
    for probe in (Vec2(1, 0), Vec2(0, 1)):
        delta = m.apply_vec(probe) - probe
        if fix.cross(delta) != 0:
            raise NotUnimodular(f"map is not a transvection along {fix}")
    return m


def _orient_ccw(vertices: list[Vec2]) -> list[Vec2]:
    n = len(vertices)
    twice_area = sum(vertices[i].cross(vertices[(i + 1) % n]) for i in range(n))
    if twice_area == 0:
        raise DegenerateGeometry("polygon has zero area")
    return vertices if twice_area > 0 else list(reversed(vertices))


def _merge_collinear(vertices: list[Vec2]) -> list[Vec2]:
    out = []
    n = len(vertices)
    for i in range(n):
        prev, cur, nxt = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        if (cur - prev).cross(nxt - cur) != 0:
            out.append(cur)
    return out


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex polygon with exact rational vertices, CCW."""

    vertices: tuple[Vec2, ...]

    def __post_init__(self):
        verts = list(self.vertices)
        if len(verts) < 3:
            raise DegenerateGeometry("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise DegenerateGeometry("repeated vertex")
        verts = _orient_ccw(verts)
        verts = _merge_collinear(verts)
        if len(verts) < 3:
            raise DegenerateGeometry("polygon degenerates after merging collinear vertices")
        n = len(verts)
        for i in range(n):
            e0 = verts[(i + 1) % n] - verts[i]
            e1 = verts[(i + 2) % n] - verts[(i + 1) % n]
            if e0.cross(e1) <= 0:
                raise NotConvex("vertices are not in convex position")
        start = min(range(n), key=lambda i: verts[i].as_tuple())
        verts = verts[start:] + verts[:start]
        object.__setattr__(self, "vertices", tuple(verts))

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> tuple[Vec2, ...]:
        n = len(self.vertices)
        return tuple(self.vertices[(i + 1) % n] - self.vertices[i] for i in range(n))

    def area(self) -> Fraction:
        n = len(self.vertices)
        tw = sum(self.vertices[i].cross(self.vertices[(i + 1) % n]) for i in range(n))
        return Fraction(tw, 2)

    def contains(self, p: Vec2, strict: bool = True) -> bool:
        n = len(self.vertices)
        for i in range(n):
            s = (self.vertices[(i + 1) % n] - self.vertices[i]).cross(p - self.vertices[i])
            if s < 0 or (strict and s == 0):
                return False
        return True

    def index_of(self, p: Vec2) -> int:
        for i, v in enumerate(self.vertices):
            if v == p:
                return i
        raise ValueError(f"{p} is not a vertex")

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.vertices)

    def edge_affine_lengths(self) -> tuple[Fraction, ...]:
        return tuple(sorted(affine_length(e) for e in self.edges()))

    def translate(self, t: Vec2) -> "LatticePolygon":
        return LatticePolygon(tuple(v + t for v in self.vertices))

    def apply(self, m: UnimodularMap) -> "LatticePolygon":
        return LatticePolygon(tuple(m.apply_point(v) for v in self.vertices))

    def scaled(self, s: Scalar) -> "LatticePolygon":
        return LatticePolygon(tuple(Vec2(s * v.x, s * v.y) for v in self.vertices))


def _ext_gcd_row(p: int, q: int) -> tuple[int, int]:
    """(g1, g2) with g1*p + g2*q = 1 for coprime p, q."""
    g, g1, g2 = math.gcd(p, q), 0, 0
    # extended euclid
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == g == 1
    return old_s, old_t


def _normal_candidates(p: LatticePolygon) -> Iterable[tuple[tuple, LatticePolygon, UnimodularMap]]:
    swap = UnimodularMap(0, 1, 1, 0)
    for reflected in (False, True):
        base_map = swap if reflected else UnimodularMap.identity()
        pts = [base_map.apply_point(v) for v in p.vertices]
        poly = LatticePolygon(tuple(pts))
        n = len(poly)
        for i in range(n):
            v = poly.vertices[i]
            trans = UnimodularMap.translation(-v)
            e_out = poly.vertices[(i + 1) % n] - v
            prim, _ = primitive_part(e_out)
            g1, g2 = _ext_gcd_row(prim.x, prim.y)
            u0 = UnimodularMap(g1, g2, -prim.y, prim.x)
            partial = u0.compose(trans)
            # pin the shear with the second edge direction
            e2 = partial.apply_vec(poly.vertices[(i + 2) % n] - poly.vertices[(i + 1) % n])
            p2, _ = primitive_part(e2)
            assert p2.y > 0
            shift = -(p2.x // p2.y)
            shear = UnimodularMap(1, shift, 0, 1)
            full = shear.compose(partial).compose(base_map)
            cand = p.apply(full)
            key = tuple(v.as_tuple() for v in cand.vertices)
            yield key, cand, full


def normal_form_with_map(p: LatticePolygon) -> tuple[LatticePolygon, UnimodularMap]:
    """Canonical GL(2,Z) x translation orbit representative plus a witness."""
    if not p.is_integral():
        raise DegenerateGeometry("normal form requires integer vertices")
    best = min(_normal_candidates(p), key=lambda kcm: kcm[0])
    return best[1], best[2]


def normal_form(p: LatticePolygon) -> LatticePolygon:
    return normal_form_with_map(p)[0]


def _common_denominator(polys: Iterable[LatticePolygon]) -> int:
    den = 1
    for poly in polys:
        for v in poly.vertices:
            den = math.lcm(den, Fraction(v.x).denominator, Fraction(v.y).denominator)
    return den


def equivalent(p: LatticePolygon, q: LatticePolygon) -> tuple[bool, Optional[UnimodularMap]]:
    """Decide q = M p + t for unimodular M; returns a witness when true.

    Rational polygons are handled by clearing denominators with a common
    factor, which commutes with every candidate map.
    """
    den = _common_denominator((p, q))
    ps, qs = p.scaled(den), q.scaled(den)
    nf_p, m_p = normal_form_with_map(ps)
    nf_q, m_q = normal_form_with_map(qs)
    if nf_p.vertices != nf_q.vertices:
        return False, None
    m = m_q.inverse().compose(m_p)
    witness = UnimodularMap(m.a, m.b, m.c, m.d, Vec2(Fraction(m.t.x, den), Fraction(m.t.y, den)))
    assert p.apply(witness).vertices == q.vertices
    return True, witness
