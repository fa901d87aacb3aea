"""Exact-arithmetic toolkit for Markov triples, their moment polytopes,
almost toric surgeries and the boundary convex-hull invariant."""

__version__ = "0.1.0"

from .diagram import (
    BaseDiagram,
    Node,
    mutate_diagram,
    nodal_slide,
    nodal_trade,
    rational_blowdown_diagram,
    transfer_cut,
)
from .errors import DomainError, InternalInconsistency, VerificationFailed
from .hull import BoundaryHull, boundary_hull, distinguish, superpotential_monomials
from .lattice import LatticePolygon, UnimodularMap, Vec2, equivalent, normal_form
from .markov import (
    MarkovTriple,
    MutationPath,
    enumerate_triples,
    is_markov,
    mutate,
    reduce_to_root,
)
from .polytope import WeightedPolytope, build_polytope

__all__ = [
    "__version__",
    "BaseDiagram",
    "BoundaryHull",
    "DomainError",
    "InternalInconsistency",
    "LatticePolygon",
    "MarkovTriple",
    "MutationPath",
    "Node",
    "UnimodularMap",
    "Vec2",
    "VerificationFailed",
    "WeightedPolytope",
    "boundary_hull",
    "build_polytope",
    "distinguish",
    "enumerate_triples",
    "equivalent",
    "is_markov",
    "mutate",
    "mutate_diagram",
    "nodal_slide",
    "nodal_trade",
    "normal_form",
    "rational_blowdown_diagram",
    "reduce_to_root",
    "superpotential_monomials",
    "transfer_cut",
]
