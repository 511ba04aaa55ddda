"""Domain error hierarchy.

Every failure mode raised by this package derives from KnitFramesError, so
callers can catch one base class. Errors that carry a witness (the first
violating element, triple, or deviation) expose it as attributes.
"""
from __future__ import annotations

__all__ = [
    "KnitFramesError",
    "MalformedTable",
    "NotAssociative",
    "NoIdentity",
    "NotInvertible",
    "NotAGroup",
    "NotSubgroup",
    "NontrivialIntersection",
    "FactorizationNotUnique",
    "KnitAxiomViolation",
    "NotUnitary",
    "NotHomomorphism",
    "IdentityMismatch",
    "DependentOrbit",
    "NotInSubspace",
    "SubgroupNotAbelian",
    "StructureViolation",
    "ShapeMismatch",
    "RankDeficient",
    "NotLeftInverse",
    "IndexResolutionFailure",
    "VerificationFailure",
    "NotSquareCase",
    "NotReconstructing",
    "ConfigParse",
    "ValidationFailure",
]


class KnitFramesError(Exception):
    """Base class for all errors raised by knitframes."""


# ------------------------------------------------------------ group tables
class MalformedTable(KnitFramesError):
    """Multiplication table is not a well-formed Latin square of indices."""


class NotAssociative(KnitFramesError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"associativity fails at triple ({a}, {b}, {c})")


class NoIdentity(KnitFramesError):
    """No two-sided identity element exists."""


class NotInvertible(KnitFramesError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAGroup(KnitFramesError):
    """A constructed multiplication table failed the group axioms."""


class NotSubgroup(KnitFramesError):
    def __init__(self, which: str, detail: str):
        self.which = which
        super().__init__(f"{which} is not a subgroup: {detail}")


class NontrivialIntersection(KnitFramesError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(
            f"factors share the non-identity element {element}"
        )


class FactorizationNotUnique(KnitFramesError):
    """The pairwise products of the factors do not enumerate the group once."""


class KnitAxiomViolation(KnitFramesError):
    """One of the three knit-product axioms fails.

    property_id is 1, 2 or 3; witness is the tuple of indices at which the
    axiom first fails (see group_core.knit_external for the scan order).
    """

    def __init__(self, property_id: int, witness: tuple, detail: str = ""):
        self.property_id = property_id
        self.witness = witness
        msg = f"knit axiom {property_id} fails at {witness}"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


# --------------------------------------------------------- representations
class NotUnitary(KnitFramesError):
    def __init__(self, element: int, deviation: float):
        self.element = element
        self.deviation = deviation
        super().__init__(
            f"matrix for element {element} is not unitary "
            f"(max deviation {deviation:.3e})"
        )


class NotHomomorphism(KnitFramesError):
    def __init__(self, g: int, g2: int, deviation: float):
        self.pair = (g, g2)
        self.deviation = deviation
        super().__init__(
            f"U({g})U({g2}) != U({g}{g2} product) "
            f"(max deviation {deviation:.3e})"
        )


class IdentityMismatch(KnitFramesError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(
            f"matrix at the identity is not I (max deviation {deviation:.3e})"
        )


class DependentOrbit(KnitFramesError):
    """The orbit vectors are linearly dependent; the subspace has no basis."""


class NotInSubspace(KnitFramesError):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(
            f"vector is not in the sampling subspace (residual {residual:.3e})"
        )


# ------------------------------------------------------------- covariances
class SubgroupNotAbelian(KnitFramesError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"indexing subgroup {which} is not Abelian")


class StructureViolation(KnitFramesError):
    """An assembled matrix violates its structural invariant (internal bug)."""


class ShapeMismatch(KnitFramesError):
    """An array does not have the shape the operation requires."""


# ---------------------------------------------------------- left inverses
class RankDeficient(KnitFramesError):
    def __init__(self, rank: int, required: int):
        self.rank = rank
        self.required = required
        super().__init__(f"rank {rank} < {required}: no left inverse exists")


class NotLeftInverse(KnitFramesError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(
            f"matrix is not a left inverse (max deviation {deviation:.3e})"
        )


class IndexResolutionFailure(KnitFramesError):
    """A subgroup product fell outside the subgroup (closure bug)."""


class VerificationFailure(KnitFramesError):
    """A constructed object failed its own invariant check."""


# --------------------------------------------------------------- sampling
class NotSquareCase(KnitFramesError):
    """Interpolation needs a square invertible sample matrix."""


class NotReconstructing(KnitFramesError):
    """The scheme is rank deficient; no reconstruction vectors exist."""


# -------------------------------------------------------------------- cli
class ConfigParse(KnitFramesError):
    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(f"{path}: {detail}")


class ValidationFailure(KnitFramesError):
    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(f"{path}: {detail}")
