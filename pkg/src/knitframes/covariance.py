"""Cross-covariance functions and the block sample matrix.

The sample of a subspace member f = sum_g alpha(g) U(g) a against a channel
vector b at a point p is <f, U(p) b>, which expands to a correlation of
alpha with the scalar function g -> <U(g) a, b>. Collecting those
correlations over all channels and all points of one factor subgroup, with
the columns in coset order, gives a matrix whose rows within each channel
block are cyclic shifts of each other whenever the point subgroup is
enumerated by the powers of a single generator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, StructureViolation, SubgroupNotAbelian
from .group_core import FiniteGroup, KnitFactorization, is_abelian_subset
from .representation import SamplingSubspace, UnitaryRepresentation

__all__ = [
    "CrossCovariance",
    "CrossCovarianceMatrix",
    "cross_covariance",
    "sample_vector",
    "build_cross_cov_matrix",
    "check_h_circulant",
]

STRUCTURE_TOL = 1e-9
EXACT_TOL = 1e-12


@dataclass(frozen=True)
class CrossCovariance:
    """Scalar correlation g -> <U(g) a, b>, tabulated over the group."""

    group: FiniteGroup
    values: np.ndarray

    def at(self, g: int) -> complex:
        return complex(self.values[g])


@dataclass(frozen=True)
class CrossCovarianceMatrix:
    """Stacked sample matrix of one scheme, with its block view.

    Rows are channel-major: row k * n_points + i holds the samples of the
    orbit columns against channel k at the i-th point of the indexing
    subgroup. Columns follow column_order, the coset enumeration of the
    group by the indexing subgroup. blocks[i, r] is the (kappa, inner)
    sub-matrix pairing point i with coset r; it depends on i and r only
    through the quotient of the two subgroup elements.
    """

    indexing: str
    kappa: int
    blocks: np.ndarray
    stacked: np.ndarray
    column_order: np.ndarray
    fact: KnitFactorization
    subspace: SamplingSubspace

    @property
    def points(self) -> np.ndarray:
        """Sampling points: the elements of the indexing subgroup."""
        return self.fact.indexing_elements(self.indexing)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def inner_order(self) -> int:
        return self.fact.group.order // self.n_points


def cross_covariance(
    rep: UnitaryRepresentation, a: np.ndarray, b: np.ndarray
) -> CrossCovariance:
    """Tabulate g -> <U(g) a, b> over the whole group."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (rep.dim,) or b.shape != (rep.dim,):
        raise ShapeMismatch(
            f"vectors must have shape ({rep.dim},), got {a.shape} and {b.shape}"
        )
    values = (rep.matrices @ a) @ b.conj()
    values.setflags(write=False)
    return CrossCovariance(group=rep.group, values=values)


def sample_vector(
    rep: UnitaryRepresentation, b: np.ndarray, f: np.ndarray, points
) -> np.ndarray:
    """Samples <f, U(p) b> of a vector at the given group elements."""
    b = np.asarray(b, dtype=complex)
    f = np.asarray(f, dtype=complex)
    if b.shape != (rep.dim,) or f.shape != (rep.dim,):
        raise ShapeMismatch(
            f"vectors must have shape ({rep.dim},), got {b.shape} and {f.shape}"
        )
    pts = np.asarray(points, dtype=int)
    return (rep.matrices[pts] @ b).conj() @ f


def build_cross_cov_matrix(
    subspace: SamplingSubspace,
    fact: KnitFactorization,
    channels,
    indexing: str = "N",
) -> CrossCovarianceMatrix:
    """Assemble the stacked sample matrix for one set of channels.

    channels is a (kappa, dim) array of channel vectors. The indexing
    subgroup supplies both the sampling points and the outer coset order of
    the columns; it must be Abelian. Entry (k * n_points + i, r * inner + j)
    is the cross covariance of the generator with channel k evaluated at
    p_i^-1 * c_{r,j} where c_{r,j} is the column element of coset r.
    """
    rep = subspace.rep
    group = fact.group
    if fact.group is not subspace.rep.group:
        raise ShapeMismatch("factorization and subspace use different groups")
    outer = fact.indexing_elements(indexing)
    if not is_abelian_subset(group, outer):
        raise SubgroupNotAbelian(indexing)
    C = np.asarray(channels, dtype=complex)
    if C.ndim != 2 or C.shape[1] != rep.dim:
        raise ShapeMismatch(
            f"channels must be (kappa, {rep.dim}), got shape {C.shape}"
        )
    kappa = C.shape[0]
    n_points = len(outer)
    inner = group.order // n_points
    cols = fact.coset_columns(indexing)

    T = group.cayley
    stacked = np.empty((kappa * n_points, group.order), dtype=complex)
    for k in range(kappa):
        rv = cross_covariance(rep, subspace.a, C[k]).values
        for i, p in enumerate(outer):
            stacked[k * n_points + i] = rv[T[group.inv(int(p)), cols]]

    blocks = stacked.reshape(kappa, n_points, n_points, inner).transpose(1, 2, 0, 3)
    stacked.setflags(write=False)
    blocks.setflags(write=False)

    if kappa > 0 and _is_geometric(group, outer):
        tol = EXACT_TOL if _is_zero_one(rep.matrices) else STRUCTURE_TOL
        if not check_h_circulant(stacked, n_points, inner, kappa, tol=tol):
            raise StructureViolation(
                "sample matrix is not block-circulant for a cyclic point order"
            )

    return CrossCovarianceMatrix(
        indexing=indexing,
        kappa=kappa,
        blocks=blocks,
        stacked=stacked,
        column_order=cols,
        fact=fact,
        subspace=subspace,
    )


def check_h_circulant(
    C: np.ndarray, n_points: int, inner: int, kappa: int, tol: float = STRUCTURE_TOL
) -> bool:
    """Whether each channel block advances by `inner` columns per row.

    A (kappa * n_points, n_points * inner) matrix passes when, inside every
    channel block, each row equals the previous row rotated right by
    `inner`, cyclically over the whole row and over the block rows.
    """
    C = np.asarray(C)
    if C.shape != (kappa * n_points, n_points * inner):
        raise ShapeMismatch(
            f"expected shape {(kappa * n_points, n_points * inner)}, got {C.shape}"
        )
    for k in range(kappa):
        B = C[k * n_points : (k + 1) * n_points]
        for i in range(n_points):
            if np.abs(B[i] - np.roll(B[(i - 1) % n_points], inner)).max() > tol:
                return False
    return True


def _is_geometric(group: FiniteGroup, elements: np.ndarray) -> bool:
    # the listing is e, c, c^2, ... for a single generator c, wrapping back
    # to e; order 1 listings count as geometric
    n = len(elements)
    if n == 1:
        return elements[0] == group.identity
    if elements[0] != group.identity:
        return False
    c = int(elements[1])
    return all(
        group.mul(c, int(elements[i])) == int(elements[(i + 1) % n]) for i in range(n)
    )


def _is_zero_one(matrices: np.ndarray) -> bool:
    return bool(np.all((matrices == 0) | (matrices == 1)))
