"""JSON encoding shared by the service, the CLI and the file formats.

Integers travel as decimal strings so arbitrary-precision values survive
any JSON parser.  Rationals are ["num", "den"] pairs; integral values
collapse to a plain decimal string.  Vectors and points are two-element
arrays, polygons are {"vertices": [...]}.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import BaseDiagram, Node
from .errors import DomainError
from .hull import BoundaryHull
from .lattice import LatticePolygon, Vec2
from .markov import MarkovTriple, MutationPath
from .polytope import WeightedPolytope

__all__ = [
    "encode_scalar", "decode_scalar",
    "encode_vec", "decode_vec",
    "encode_triple", "decode_triple",
    "encode_path", "decode_path",
    "encode_polygon", "decode_polygon",
    "encode_polytope",
    "encode_diagram", "decode_diagram",
    "encode_hull",
]


def encode_scalar(x) -> object:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return [str(f.numerator), str(f.denominator)]


def decode_scalar(obj):
    try:
        if isinstance(obj, list):
            num, den = obj
            return Fraction(int(str(num)), int(str(den)))
        return int(str(obj))
    except (TypeError, ValueError) as exc:
        raise DomainError(f"bad scalar {obj!r}") from exc


def encode_vec(v: Vec2) -> list:
    return [encode_scalar(v.x), encode_scalar(v.y)]


def decode_vec(obj) -> Vec2:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise DomainError(f"bad vector {obj!r}")
    return Vec2(decode_scalar(obj[0]), decode_scalar(obj[1]))


def encode_triple(t: MarkovTriple) -> dict:
    return {"triple": [str(t.a), str(t.b), str(t.c)]}


def decode_triple(obj) -> MarkovTriple:
    if not isinstance(obj, dict) or "triple" not in obj:
        raise DomainError(f"bad triple object {obj!r}")
    entries = obj["triple"]
    if len(entries) != 3:
        raise DomainError("triple must have three entries")
    return MarkovTriple(*(int(str(e)) for e in entries))


def parse_triple_arg(text: str) -> MarkovTriple:
    """Comma-joined decimal form used on the command line: "1,2,5"."""
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected a,b,c but got {text!r}")
    try:
        return MarkovTriple(*(int(p) for p in parts))
    except ValueError as exc:
        raise DomainError(f"non-integer entry in {text!r}") from exc


def encode_path(p: MutationPath) -> dict:
    return {"start": encode_triple(p.start), "steps": list(p.steps)}


def decode_path(obj) -> MutationPath:
    return MutationPath(start=decode_triple(obj["start"]), steps=tuple(obj["steps"]))


def encode_polygon(p: LatticePolygon) -> dict:
    return {"vertices": [encode_vec(v) for v in p.vertices]}


def decode_polygon(obj) -> LatticePolygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise DomainError(f"bad polygon object {obj!r}")
    return LatticePolygon(tuple(decode_vec(v) for v in obj["vertices"]))


def encode_polytope(p: WeightedPolytope) -> dict:
    return {
        "triple": encode_triple(p.triple)["triple"],
        "m1": str(p.m1), "m2": str(p.m2),
        "l1": str(p.l1), "l2": str(p.l2), "l3": str(p.l3),
        "u1": encode_vec(p.u1), "u2": encode_vec(p.u2), "u3": encode_vec(p.u3),
        "w1": encode_vec(p.w1), "w2": encode_vec(p.w2), "w3": encode_vec(p.w3),
        "vertices": [encode_vec(v) for v in p.vertices],
        "lens": [[str(k), str(q)] for k, q in p.lens],
        "scale": encode_scalar(p.scale),
    }


def encode_diagram(d: BaseDiagram) -> dict:
    out = {
        "polygon": encode_polygon(d.polygon),
        "nodes": [
            {
                "anchor": n.anchor,
                "eigen": encode_vec(n.eigen),
                "length": encode_scalar(n.cut_length),
            }
            for n in d.nodes
        ],
        "fiber": encode_vec(d.fiber),
        "scale": encode_scalar(d.scale),
    }
    if d.provenance is not None:
        out["provenance"] = encode_triple(d.provenance)
    return out


def decode_diagram(obj) -> BaseDiagram:
    if not isinstance(obj, dict) or "polygon" not in obj:
        raise DomainError(f"bad diagram object {obj!r}")
    nodes = tuple(
        Node(
            anchor=int(n["anchor"]),
            eigen=decode_vec(n["eigen"]),
            cut_length=Fraction(decode_scalar(n["length"])),
        )
        for n in obj.get("nodes", [])
    )
    provenance = decode_triple(obj["provenance"]) if "provenance" in obj else None
    return BaseDiagram(
        polygon=decode_polygon(obj["polygon"]),
        nodes=nodes,
        fiber=decode_vec(obj["fiber"]),
        scale=Fraction(decode_scalar(obj.get("scale", "1"))),
        provenance=provenance,
    )


def encode_hull(h: BoundaryHull) -> dict:
    return {
        "classes": [encode_vec(v) for v in h.classes],
        "hull": encode_polygon(h.hull),
        "lengths": [str(x) for x in h.lengths],
        "provenance": encode_triple(h.provenance),
    }
