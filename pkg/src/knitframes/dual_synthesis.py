"""Left inverses of the sample matrix and their group-compatible form.

A full-column-rank sample matrix R has a whole affine family of left
inverses, anchored at the pseudoinverse. Out of any one left inverse a
structured one can be rebuilt from its first rows alone: the rows of the
rebuilt matrix for coset i are the seed rows with their point index shifted
by the subgroup quotient, which turns the corresponding reconstruction
columns into translates of kappa base columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .covariance import CrossCovarianceMatrix
from .errors import (
    IndexResolutionFailure,
    NotLeftInverse,
    RankDeficient,
    ShapeMismatch,
    VerificationFailure,
)
from .group_core import resolve_subgroup_position
from .representation import left_translate

__all__ = [
    "LeftInverseFamily",
    "GroupCompatibleInverse",
    "pseudoinverse",
    "left_inverse_member",
    "extract_seed_rows",
    "build_compatible_inverse",
    "verify_shift_structure",
]

INVERSE_TOL = 1e-9


@dataclass(frozen=True)
class LeftInverseFamily:
    """All left inverses of a full-column-rank sample matrix.

    Every member has the form pinv + free (I - sample_matrix pinv); the
    anchor member stored here is the pseudoinverse itself (free = 0).
    """

    sample_matrix: np.ndarray
    pinv: np.ndarray
    free_parameter: np.ndarray  # of the anchor member, zeros by default


@dataclass(frozen=True)
class GroupCompatibleInverse:
    """Left inverse whose reconstruction columns are subgroup translates.

    seed holds the rows of the identity coset; matrix is the full left
    inverse in coset row order; dual_coefficients re-sorts the matrix rows
    into element order, so its column (k, i) is the coefficient vector of
    the reconstruction vector for channel k at point i; synthesis_columns
    are the kappa base reconstruction vectors, one per channel, whose
    subgroup translates give all the others.
    """

    cov: CrossCovarianceMatrix
    seed: np.ndarray
    matrix: np.ndarray
    dual_coefficients: np.ndarray
    synthesis_columns: np.ndarray


def pseudoinverse(R: np.ndarray, rcond: Optional[float] = None) -> LeftInverseFamily:
    """Anchor the left-inverse family of R at its pseudoinverse.

    Raises RankDeficient when R has no left inverse at the given cutoff.
    """
    R = np.asarray(R, dtype=complex)
    if R.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {R.shape}")
    if rcond is None:
        rcond = max(R.shape) * np.finfo(float).eps
    rank = int(np.linalg.matrix_rank(R, tol=None))
    if rank < R.shape[1]:
        raise RankDeficient(rank, R.shape[1])
    P = np.linalg.pinv(R, rcond=rcond)
    return LeftInverseFamily(
        sample_matrix=R,
        pinv=P,
        free_parameter=np.zeros((R.shape[1], R.shape[0]), dtype=complex),
    )


def left_inverse_member(
    family: LeftInverseFamily, free: Optional[np.ndarray] = None
) -> np.ndarray:
    """The member pinv + free (I - sample_matrix pinv) of the family."""
    if free is None:
        free = family.free_parameter
    free = np.asarray(free, dtype=complex)
    rows, cols = family.sample_matrix.shape
    if free.shape != (cols, rows):
        raise ShapeMismatch(f"free parameter must be {(cols, rows)}, got {free.shape}")
    residual_proj = np.eye(rows) - family.sample_matrix @ family.pinv
    return family.pinv + free @ residual_proj


def extract_seed_rows(M: np.ndarray, inner: int) -> np.ndarray:
    """First rows of a left inverse: the block belonging to the identity coset."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or not 0 < inner <= M.shape[0]:
        raise ShapeMismatch(
            f"cannot take {inner} seed rows from a matrix of shape {M.shape}"
        )
    return M[:inner].copy()


def build_compatible_inverse(
    seed: np.ndarray, cov: CrossCovarianceMatrix, tol: float = INVERSE_TOL
) -> GroupCompatibleInverse:
    """Expand seed rows into the full group-compatible left inverse.

    The seed must satisfy seed @ R = (I | 0): identity on the identity
    coset, zero elsewhere. The row block for coset i then re-reads the seed
    with the point index n replaced by m, where the m-th subgroup element is
    the quotient of the i-th into the n-th. The result is verified to be a
    left inverse of R before reconstruction columns are derived.
    """
    group = cov.fact.group
    outer = cov.points
    n_points, inner = cov.n_points, cov.inner_order
    kappa = cov.kappa
    R = cov.stacked
    seed = np.asarray(seed, dtype=complex)
    if seed.shape != (inner, kappa * n_points):
        raise ShapeMismatch(
            f"seed must be {(inner, kappa * n_points)}, got {seed.shape}"
        )
    target = np.zeros((inner, group.order))
    target[:, :inner] = np.eye(inner)
    dev = float(np.abs(seed @ R - target).max())
    if dev > tol:
        raise NotLeftInverse(dev)

    M = np.empty((group.order, kappa * n_points), dtype=complex)
    for i in range(n_points):
        for n in range(n_points):
            quot = group.mul(group.inv(int(outer[i])), int(outer[n]))
            m = resolve_subgroup_position(outer, quot)
            for k in range(kappa):
                M[i * inner : (i + 1) * inner, k * n_points + n] = seed[
                    :, k * n_points + m
                ]
    dev = float(np.abs(M @ R - np.eye(group.order)).max())
    if dev > tol:
        raise NotLeftInverse(dev)

    dual = np.empty_like(M)
    dual[cov.column_order] = M
    synth = cov.subspace.synthesis_matrix
    base = np.stack(
        [synth @ dual[:, k * n_points] for k in range(kappa)]
    ) if kappa else np.zeros((0, cov.subspace.rep.dim), dtype=complex)
    for a in (M, dual, base):
        a.setflags(write=False)
    return GroupCompatibleInverse(
        cov=cov,
        seed=seed.copy(),
        matrix=M,
        dual_coefficients=dual,
        synthesis_columns=base,
    )


def verify_shift_structure(inverse: GroupCompatibleInverse, tol: float = 0.0) -> None:
    """Check every reconstruction column is the translate of its channel base.

    The construction copies seed columns verbatim, so the default tolerance
    is exact equality. Raises VerificationFailure with the worst deviation.
    """
    cov = inverse.cov
    group = cov.fact.group
    outer = cov.points
    n_points = cov.n_points
    worst = 0.0
    where = None
    for k in range(cov.kappa):
        base = inverse.dual_coefficients[:, k * n_points]
        for n in range(n_points):
            shifted = left_translate(group, int(outer[n]), base)
            dev = float(
                np.abs(shifted - inverse.dual_coefficients[:, k * n_points + n]).max()
            )
            if dev > worst:
                worst, where = dev, (k, n)
    if worst > tol:
        raise VerificationFailure(
            f"reconstruction column (channel {where[0]}, point {where[1]}) is not "
            f"the translate of its base column (deviation {worst:.3e})"
        )
