"""Almost toric base diagrams and their surgeries.

A diagram is a convex polygon with marked nodes, each sitting on a cut ray
that leaves a polygon vertex in a primitive eigendirection, plus a marked
fiber point (the image of the monotone torus).  Surgeries:

* nodal trade    - replace a unimodular corner by a node with a cut;
* nodal slide    - move a node along its eigenray;
* transfer_cut   - reglue one side of a node's eigenline by the node
                   monodromy, flipping the cut to the other eigenray.

Transferring the cut across the diagram built from a Markov triple
realizes the Vieta mutation on the edge affine lengths; mutate_diagram
performs it and re-verifies that fact exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import (
    AlreadyTraded,
    CutDoesNotSeparate,
    InvalidDiagram,
    NotSmoothCorner,
    SlideOutOfBounds,
    SlideThroughFiber,
    VerificationFailed,
)
from .lattice import (
    LatticePolygon,
    Vec2,
    is_primitive,
    monodromy_from_constraints,
    primitive_part,
)
from .markov import MarkovTriple, mutate, reduce_to_root
from .polytope import barycenter, build_polytope

__all__ = [
    "Node",
    "BaseDiagram",
    "rational_blowdown_diagram",
    "nodal_trade",
    "nodal_slide",
    "transfer_cut",
    "mutate_diagram",
    "mutation_chain",
]

DEFAULT_CUT_FRACTION = Fraction(1, 4)


@dataclass(frozen=True)
class Node:
    """A nodal fiber: anchor vertex index, inward primitive eigendirection
    and the affine distance of the node from the anchor along it."""

    anchor: int
    eigen: Vec2
    cut_length: Fraction

    def __post_init__(self):
        if not is_primitive(self.eigen):
            raise InvalidDiagram(f"eigen {self.eigen} is not primitive")
        if self.cut_length <= 0:
            raise InvalidDiagram("cut_length must be positive")


def _segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    """Exact test: do closed segments ab and cd share a point?"""

    def orient(p, q, r):
        s = (q - p).cross(r - p)
        return (s > 0) - (s < 0)

    def on_seg(p, q, r):
        # r collinear with pq assumed
        return min(p.x, q.x) <= r.x <= max(p.x, q.x) and min(p.y, q.y) <= r.y <= max(p.y, q.y)

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    for p, q, r in ((a, b, c), (a, b, d), (c, d, a), (c, d, b)):
        if orient(p, q, r) == 0 and on_seg(p, q, r):
            return True
    return False


def _point_on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool:
    if (b - a).cross(p - a) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


@dataclass(frozen=True)
class BaseDiagram:
    polygon: LatticePolygon
    nodes: tuple[Node, ...]
    fiber: Vec2
    scale: Fraction = Fraction(1)
    provenance: Optional[MarkovTriple] = None

    def __post_init__(self):
        if not self.polygon.contains(self.fiber, strict=True):
            raise InvalidDiagram("fiber point must lie strictly inside the polygon")
        anchors = [n.anchor for n in self.nodes]
        if len(set(anchors)) != len(anchors):
            raise InvalidDiagram("two nodes anchored at the same vertex")
        pts = [self.node_point(i) for i in range(len(self.nodes))]
        for i, p in enumerate(pts):
            if not self.polygon.contains(p, strict=True):
                raise InvalidDiagram(f"node {i} lies outside the polygon")
        segs = [(self.anchor_point(i), pts[i]) for i in range(len(self.nodes))]
        for i in range(len(segs)):
            if _point_on_segment(*segs[i], self.fiber):
                raise InvalidDiagram(f"cut ray {i} hits the fiber point")
            for j in range(i + 1, len(segs)):
                if _segments_cross(*segs[i], *segs[j]):
                    raise InvalidDiagram(f"cut rays {i} and {j} intersect")

    def anchor_point(self, node_index: int) -> Vec2:
        return self.polygon.vertices[self.nodes[node_index].anchor]

    def node_point(self, node_index: int) -> Vec2:
        n = self.nodes[node_index]
        return self.anchor_point(node_index) + n.cut_length * n.eigen

    def node_at_vertex(self, vertex_point: Vec2) -> int:
        for i in range(len(self.nodes)):
            if self.anchor_point(i) == vertex_point:
                return i
        raise InvalidDiagram(f"no node anchored at {vertex_point}")


def _ray_exit(poly: LatticePolygon, origin: Vec2, direction: Vec2) -> tuple[Vec2, Fraction]:
    """Where the ray origin + t*direction (t > 0) leaves the polygon."""
    best = None
    n = len(poly.vertices)
    for i in range(n):
        a, b = poly.vertices[i], poly.vertices[(i + 1) % n]
        e = b - a
        den = direction.cross(e)
        if den == 0:
            continue
        t = (a - origin).cross(e) / Fraction(den)
        if t <= 0:
            continue
        u = (a - origin).cross(direction) / Fraction(den)
        if 0 <= u <= 1:
            if best is None or t < best[1]:
                best = (origin + t * direction, t)
    if best is None:
        raise CutDoesNotSeparate("eigenray does not cross the boundary again")
    return best


def rational_blowdown_diagram(
    t: MarkovTriple, cut_fraction: Fraction = DEFAULT_CUT_FRACTION
) -> BaseDiagram:
    """One node per corner of the moment triangle, cuts through the
    weighted barycenter, fiber at the barycenter."""
    if not 0 < cut_fraction < 1:
        raise InvalidDiagram("cut_fraction must be in (0, 1)")
    wp = build_polytope(t)
    poly = LatticePolygon(wp.vertices)
    fiber = barycenter(wp)
    nodes = []
    for slot in range(3):
        vertex = wp.vertex_opposite(slot)
        eigen = -wp.cut_vector(slot)  # cut vectors point outward; nodes look inward
        diff = fiber - vertex
        # fiber lies on the eigenray; its affine parameter fixes the scale
        t_fiber = Fraction(diff.x, eigen.x) if eigen.x != 0 else Fraction(diff.y, eigen.y)
        if t_fiber <= 0 or eigen.cross(diff) != 0:
            raise VerificationFailed("barycenter not on the cut ray")
        nodes.append(Node(poly.index_of(vertex), eigen, cut_fraction * t_fiber))
    nodes.sort(key=lambda n: n.anchor)
    return BaseDiagram(polygon=poly, nodes=tuple(nodes), fiber=fiber, provenance=t.sorted())


def nodal_trade(
    d: BaseDiagram, vertex: int, cut_fraction: Fraction = DEFAULT_CUT_FRACTION
) -> BaseDiagram:
    """Trade a unimodular corner for a node with eigendirection e1 + e2."""
    n = len(d.polygon.vertices)
    if not 0 <= vertex < n:
        raise InvalidDiagram(f"vertex index {vertex} out of range")
    v = d.polygon.vertices[vertex]
    e1 = primitive_part(d.polygon.vertices[(vertex + 1) % n] - v)[0]
    e2 = primitive_part(d.polygon.vertices[(vertex - 1) % n] - v)[0]
    if abs(e1.cross(e2)) != 1:
        raise NotSmoothCorner(f"corner at {v} has determinant {abs(e1.cross(e2))}")
    if any(node.anchor == vertex for node in d.nodes):
        raise AlreadyTraded(f"vertex {vertex} already carries a node")
    eigen = e1 + e2
    diff = d.fiber - v
    if eigen.cross(diff) == 0 and eigen.dot(diff) > 0:
        t_ref = Fraction(diff.x, eigen.x) if eigen.x != 0 else Fraction(diff.y, eigen.y)
    else:
        t_ref = _ray_exit(d.polygon, v, eigen)[1]
    node = Node(vertex, eigen, cut_fraction * t_ref)
    return replace(d, nodes=tuple(sorted(d.nodes + (node,), key=lambda x: x.anchor)))


def nodal_slide(d: BaseDiagram, node: int, new_length: Fraction) -> BaseDiagram:
    """Move a node along its eigenray; only the cut length changes."""
    if not 0 <= node < len(d.nodes):
        raise InvalidDiagram(f"node index {node} out of range")
    if new_length <= 0:
        raise SlideOutOfBounds("cut length must stay positive")
    nd = d.nodes[node]
    anchor = d.anchor_point(node)
    new_point = anchor + new_length * nd.eigen
    if not d.polygon.contains(new_point, strict=True):
        raise SlideOutOfBounds(f"node would land at {new_point}, outside the polygon")
    if _point_on_segment(anchor, new_point, d.fiber):
        raise SlideThroughFiber("cut would hit the fiber point")
    nodes = list(d.nodes)
    nodes[node] = replace(nd, cut_length=new_length)
    return replace(d, nodes=tuple(nodes))


def _side_sign(e: Vec2, base: Vec2, p: Vec2) -> int:
    s = e.cross(p - base)
    return (s > 0) - (s < 0)


def transfer_cut(d: BaseDiagram, node: int, side: str) -> BaseDiagram:
    """Reglue one side of the node's eigenline by the node monodromy.

    "left" is the side where det(eigen, x - anchor) > 0.  The moved side
    is straightened at the anchor, the exit point of the eigenline becomes
    the new anchor, and the node's eigenray flips to the opposite ray.
    """
    if side not in ("left", "right"):
        raise InvalidDiagram(f"side must be 'left' or 'right', got {side!r}")
    if not 0 <= node < len(d.nodes):
        raise InvalidDiagram(f"node index {node} out of range")
    nd = d.nodes[node]
    anchor = d.anchor_point(node)
    e = nd.eigen
    npoint = d.node_point(node)

    verts = list(d.polygon.vertices)
    count = len(verts)
    signs = {v: _side_sign(e, anchor, v) for v in verts}
    if not any(s > 0 for s in signs.values()) or not any(s < 0 for s in signs.values()):
        raise CutDoesNotSeparate("eigenline supports the polygon")

    exit_point, t_exit = _ray_exit(d.polygon, anchor, e)
    if t_exit <= nd.cut_length:
        raise CutDoesNotSeparate("node sits outside the polygon along its ray")

    # split the boundary cycle at anchor and exit point
    ai = verts.index(anchor)
    cycle = verts[ai:] + verts[:ai]  # starts at anchor
    if exit_point in cycle:
        k = cycle.index(exit_point)
        chain_a = cycle[1:k]  # strictly after anchor, before exit (CCW)
        chain_b = cycle[k + 1:]  # strictly after exit, before anchor
    else:
        j = None
        for i in range(count):
            if _point_on_segment(cycle[i], cycle[(i + 1) % count], exit_point):
                j = i
                break
        if j is None:
            raise CutDoesNotSeparate("exit point not found on the boundary")
        chain_a = cycle[1:j + 1]
        chain_b = cycle[j + 1:]
    if not chain_a or not chain_b:
        raise CutDoesNotSeparate("eigenline does not split the boundary")
    sign_a = signs[chain_a[0]]
    if sign_a == 0 or signs[chain_b[0]] == 0:
        raise CutDoesNotSeparate("boundary chain starts on the eigenline")

    move_left = side == "left"
    moving, staying = (chain_a, chain_b) if (sign_a > 0) == move_left else (chain_b, chain_a)
    if not moving or not staying:
        raise CutDoesNotSeparate("one side of the eigenline is empty")

    # monodromy: straighten the moved side's edge at the anchor onto the
    # continuation of the other side's edge
    nxt_dir = primitive_part(cycle[1] - anchor)[0]
    prv_dir = primitive_part(cycle[-1] - anchor)[0]
    e_moving, e_staying = (nxt_dir, prv_dir) if moving is chain_a else (prv_dir, nxt_dir)
    m = monodromy_from_constraints(e, e_moving, -e_staying)

    def push(p: Vec2) -> Vec2:
        return npoint + m.apply_vec(p - npoint)

    if moving is chain_a:
        new_cycle = [anchor] + [push(v) for v in chain_a] + [exit_point] + chain_b
    else:
        new_cycle = [anchor] + chain_a + [exit_point] + [push(v) for v in chain_b]
    new_poly = LatticePolygon(tuple(new_cycle))
    if new_poly.area() != d.polygon.area():
        raise VerificationFailed("transfer changed the polygon area")

    moved_set = set(moving)
    new_nodes = []
    for i, other in enumerate(d.nodes):
        if i == node:
            continue
        ap = d.anchor_point(i)
        if ap in moved_set:
            new_nodes.append(Node(new_poly.index_of(push(ap)), m.apply_vec(other.eigen), other.cut_length))
        else:
            new_nodes.append(Node(new_poly.index_of(ap), other.eigen, other.cut_length))
    new_fiber = d.fiber
    fs = _side_sign(e, anchor, d.fiber)
    if fs != 0 and fs == signs[moving[0]]:
        new_fiber = push(d.fiber)

    # flipped node; if its cut would sweep through the fiber (the fiber sits
    # on the eigenline between node and exit), compose with a nodal slide
    # back to the default fraction of the new anchor-to-fiber distance
    new_length = t_exit - nd.cut_length
    if _point_on_segment(exit_point, exit_point + new_length * (-e), new_fiber):
        diff = new_fiber - exit_point
        s = Fraction(diff.x, -e.x) if e.x != 0 else Fraction(diff.y, -e.y)
        new_length = DEFAULT_CUT_FRACTION * s
    new_nodes.append(Node(new_poly.index_of(exit_point), -e, new_length))

    new_nodes.sort(key=lambda x: x.anchor)
    return replace(d, polygon=new_poly, nodes=tuple(new_nodes), fiber=new_fiber)


def mutate_diagram(t: MarkovTriple, slot: int, side: str = "left") -> tuple[BaseDiagram, MarkovTriple]:
    """Transfer the cut opposite the slot's edge; verifies the edge affine
    lengths become a common rational multiple of the mutated squares."""
    st = t.sorted()
    wp = build_polytope(st)
    d = rational_blowdown_diagram(st)
    node = d.node_at_vertex(wp.vertex_opposite(slot))
    d2 = transfer_cut(d, node, side)
    mutated = mutate(st, slot).sorted()
    x, y, z = mutated.entries()
    expected = sorted(Fraction(v * v) for v in (x, y, z))
    got = sorted(d2.polygon.edge_affine_lengths())
    if len(got) != 3:
        raise VerificationFailed(f"mutated diagram has {len(got)} edges")
    ratios = {g / e for g, e in zip(got, expected)}
    if len(ratios) != 1:
        raise VerificationFailed(
            f"edge lengths {got} are not a common multiple of {expected}"
        )
    return replace(d2, provenance=mutated), mutated


def mutation_chain(target: MarkovTriple) -> tuple[list[BaseDiagram], list[MarkovTriple]]:
    """Diagrams along the mutation path from (1,1,1) up to the target.

    The descent path of the target is replayed in reverse; each step is a
    diagram mutation whose provenance is checked against the replay."""
    descent = reduce_to_root(target.sorted())
    triples = [t.sorted() for t in reversed(descent.replay())]
    diagrams = [rational_blowdown_diagram(triples[0])]
    for prev, nxt in zip(triples, triples[1:]):
        slot = next(
            s for s in range(3) if mutate(prev, s).sorted() == nxt
        )
        d, m = mutate_diagram(prev, slot)
        if m != nxt:
            raise VerificationFailed(f"replay produced {m}, expected {nxt}")
        diagrams.append(d)
    return diagrams, triples
