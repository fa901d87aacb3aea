"""Exception hierarchy.

DomainError covers bad user input (CLI exit code 1, HTTP 400).
InternalInconsistency marks violated mathematical invariants: these indicate
a bug and are never caught by the CLI or the service.
"""


class DomainError(Exception):
    """Base for errors caused by user input."""

    code = "domain_error"


class NotMarkov(DomainError):
    code = "not_markov"


class ZeroVector(DomainError):
    code = "zero_vector"


class NonPrimitiveVector(DomainError):
    code = "non_primitive_vector"


class NoIntegralSolution(DomainError):
    code = "no_integral_solution"


class NotUnimodular(DomainError):
    code = "not_unimodular"


class DegenerateGeometry(DomainError):
    code = "degenerate_geometry"


class NotConvex(DomainError):
    code = "not_convex"


class NotSmoothCorner(DomainError):
    code = "not_smooth_corner"


class AlreadyTraded(DomainError):
    code = "already_traded"


class SlideOutOfBounds(DomainError):
    code = "slide_out_of_bounds"


class SlideThroughFiber(DomainError):
    code = "slide_through_fiber"


class CutDoesNotSeparate(DomainError):
    code = "cut_does_not_separate"


class InvalidDiagram(DomainError):
    code = "invalid_diagram"


class InternalInconsistency(RuntimeError):
    """A checked mathematical identity failed.  Always a bug."""


class VerificationFailed(InternalInconsistency):
    """A theorem-backed consistency check failed.  Always a bug."""
