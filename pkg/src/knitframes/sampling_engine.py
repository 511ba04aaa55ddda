"""End-to-end sampling schemes: take samples, certify, reconstruct.

A scheme fixes a subspace, a factorization, a channel set, and which factor
subgroup indexes the samples. When the stacked sample matrix has full
column rank the scheme reconstructs every subspace member exactly through
the group-compatible left inverse; otherwise the rank and frame bounds
report how far it falls short.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .covariance import CrossCovarianceMatrix, build_cross_cov_matrix, sample_vector
from .dual_synthesis import (
    GroupCompatibleInverse,
    LeftInverseFamily,
    build_compatible_inverse,
    extract_seed_rows,
    pseudoinverse,
)
from .errors import NotReconstructing, NotSquareCase, ShapeMismatch
from .group_core import KnitFactorization
from .representation import SamplingSubspace

__all__ = [
    "SamplingScheme",
    "SampleSet",
    "FrameBounds",
    "InterpolationCheck",
    "build_scheme",
    "take_samples",
    "reconstruct",
    "verify_frame",
    "check_interpolation",
    "dual_expansion_check",
]

ILL_CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class SamplingScheme:
    """One sampling configuration with its derived matrices."""

    subspace: SamplingSubspace
    fact: KnitFactorization
    indexing: str
    channels: np.ndarray
    cov: CrossCovarianceMatrix
    rank: int
    reconstructing: bool
    family: Optional[LeftInverseFamily]
    inverse: Optional[GroupCompatibleInverse]

    @property
    def points(self) -> np.ndarray:
        return self.cov.points

    @property
    def kappa(self) -> int:
        return self.cov.kappa


@dataclass(frozen=True)
class SampleSet:
    """Generalized samples of one vector, channel-major like the matrix rows."""

    values: np.ndarray
    kappa: int
    n_points: int

    def of_channel(self, k: int) -> np.ndarray:
        return self.values[k * self.n_points : (k + 1) * self.n_points]


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    is_frame: bool
    condition: float
    ill_conditioned: bool


@dataclass(frozen=True)
class InterpolationCheck:
    sample_deviation: float
    inverse_deviation: float
    holds: bool


def build_scheme(
    subspace: SamplingSubspace,
    fact: KnitFactorization,
    channels,
    indexing: str = "N",
    rank_tol: Optional[float] = None,
) -> SamplingScheme:
    """Assemble everything derivable from the configuration in one pass.

    Rank decides whether the scheme reconstructs; the left-inverse family
    and the compatible inverse are built only in that case. rank_tol, when
    given, is the absolute singular value cutoff for that decision.
    """
    cov = build_cross_cov_matrix(subspace, fact, channels, indexing)
    rank = int(np.linalg.matrix_rank(cov.stacked, tol=rank_tol)) if cov.kappa else 0
    reconstructing = rank == fact.group.order
    family = inverse = None
    if reconstructing:
        family = pseudoinverse(cov.stacked)
        seed = extract_seed_rows(family.pinv, cov.inner_order)
        inverse = build_compatible_inverse(seed, cov)
    return SamplingScheme(
        subspace=subspace,
        fact=fact,
        indexing=indexing,
        channels=np.asarray(channels, dtype=complex),
        cov=cov,
        rank=rank,
        reconstructing=reconstructing,
        family=family,
        inverse=inverse,
    )


def take_samples(scheme: SamplingScheme, f: np.ndarray) -> SampleSet:
    """Measure <f, U(p) b_k> over all channels k and points p."""
    rep = scheme.subspace.rep
    f = np.asarray(f, dtype=complex)
    if f.shape != (rep.dim,):
        raise ShapeMismatch(f"expected a vector of shape ({rep.dim},), got {f.shape}")
    pts = scheme.points
    rows = [sample_vector(rep, b, f, pts) for b in scheme.channels]
    values = (
        np.concatenate(rows) if rows else np.zeros(0, dtype=complex)
    )
    return SampleSet(values=values, kappa=scheme.kappa, n_points=len(pts))


def reconstruct(
    scheme: SamplingScheme, samples: Union[SampleSet, np.ndarray]
) -> np.ndarray:
    """Rebuild the sampled vector; exact on the subspace for frame schemes."""
    if not scheme.reconstructing or scheme.inverse is None:
        raise NotReconstructing()
    values = samples.values if isinstance(samples, SampleSet) else np.asarray(samples)
    expected = scheme.kappa * scheme.cov.n_points
    if values.shape != (expected,):
        raise ShapeMismatch(f"expected {expected} samples, got shape {values.shape}")
    coset_coeffs = scheme.inverse.matrix @ values.astype(complex)
    synth = scheme.subspace.synthesis_matrix
    return synth[:, scheme.cov.column_order] @ coset_coeffs


def verify_frame(scheme: SamplingScheme) -> FrameBounds:
    """Extreme squared singular values of the sample map on the subspace.

    Singular values are padded with zeros up to the group order, so a
    scheme with too few rows reports a zero lower bound. The condition
    number is of the stacked matrix itself, not its square.
    """
    g = scheme.fact.group.order
    if scheme.kappa == 0:
        return FrameBounds(
            lower=0.0, upper=0.0, is_frame=False, condition=float("inf"),
            ill_conditioned=True,
        )
    sv = np.linalg.svd(scheme.cov.stacked, compute_uv=False)
    padded = np.zeros(g)
    padded[: len(sv)] = sv
    lower = float(padded.min() ** 2)
    upper = float(padded.max() ** 2)
    condition = float(padded.max() / padded.min()) if lower > 0 else float("inf")
    return FrameBounds(
        lower=lower,
        upper=upper,
        is_frame=scheme.rank == g,
        condition=condition,
        ill_conditioned=condition > ILL_CONDITION_LIMIT,
    )


def check_interpolation(scheme: SamplingScheme, tol: float = 1e-9) -> InterpolationCheck:
    """For square frame schemes: duals interpolate and the inverse is exact.

    Sampling the k-th base reconstruction vector must give 1 at (channel k,
    identity point) and 0 everywhere else, and the compatible inverse must
    coincide with the plain matrix inverse.
    """
    R = scheme.cov.stacked
    if R.shape[0] != R.shape[1]:
        raise NotSquareCase(f"sample matrix is {R.shape[0]}x{R.shape[1]}")
    if not scheme.reconstructing or scheme.inverse is None:
        raise NotReconstructing()
    inverse_deviation = float(
        np.abs(scheme.inverse.matrix - np.linalg.inv(R)).max()
    )
    n = scheme.cov.n_points
    sample_deviation = 0.0
    for k in range(scheme.kappa):
        got = take_samples(scheme, scheme.inverse.synthesis_columns[k]).values
        want = np.zeros(scheme.kappa * n, dtype=complex)
        want[k * n] = 1.0
        sample_deviation = max(sample_deviation, float(np.abs(got - want).max()))
    return InterpolationCheck(
        sample_deviation=sample_deviation,
        inverse_deviation=inverse_deviation,
        holds=sample_deviation <= tol and inverse_deviation <= tol,
    )


def dual_expansion_check(scheme: SamplingScheme, f: np.ndarray) -> float:
    """Relative error of re-expanding f through the dual vectors.

    Frame schemes use the structured expansion: samples weight the subgroup
    translates of the kappa base reconstruction vectors. Rank-deficient
    schemes fall back to the pseudoinverse coefficients, so the returned
    error measures how much of f the samples fail to determine.
    """
    rep = scheme.subspace.rep
    f = np.asarray(f, dtype=complex)
    samples = take_samples(scheme, f)
    n = scheme.cov.n_points
    if scheme.reconstructing and scheme.inverse is not None:
        f_hat = np.zeros(rep.dim, dtype=complex)
        pts = scheme.points
        for k in range(scheme.kappa):
            translates = rep.matrices[pts] @ scheme.inverse.synthesis_columns[k]
            f_hat += translates.T @ samples.of_channel(k)
    else:
        coeffs = np.linalg.pinv(scheme.cov.stacked) @ samples.values
        synth = scheme.subspace.synthesis_matrix
        f_hat = synth[:, scheme.cov.column_order] @ coeffs
    return float(np.linalg.norm(f_hat - f) / max(1.0, np.linalg.norm(f)))
