"""Unitary representations, coefficient vectors, and sampling subspaces.

The sampling subspace of a representation U and a generating vector a is the
range of the synthesis map alpha -> sum_g alpha(g) U(g) a. When the orbit
{U(g) a} is linearly independent that map is a bijection onto the subspace
and every member has a unique coefficient vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DependentOrbit,
    IdentityMismatch,
    NotHomomorphism,
    NotInSubspace,
    NotUnitary,
    ShapeMismatch,
)
from .group_core import FiniteGroup

__all__ = [
    "UnitaryRepresentation",
    "CoefficientVector",
    "SamplingSubspace",
    "AnalysisResult",
    "validate_representation",
    "left_regular",
    "left_translate",
    "build_subspace",
    "synthesize",
    "analyze",
]

REP_TOL = 1e-9


@dataclass(frozen=True)
class UnitaryRepresentation:
    """Group homomorphism into d x d unitary matrices, stored densely."""

    group: FiniteGroup
    dim: int
    matrices: np.ndarray  # (order, dim, dim) complex

    def of(self, g: int) -> np.ndarray:
        return self.matrices[g]


@dataclass(frozen=True)
class CoefficientVector:
    """Complex coefficients indexed by group elements in table order."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.group.order,):
            raise ShapeMismatch(
                f"expected {self.group.order} coefficients, got shape "
                f"{self.values.shape}"
            )


@dataclass(frozen=True)
class SamplingSubspace:
    """Range of the synthesis map for one representation and generator.

    synthesis_matrix has the orbit vectors U(g) a as columns, in element
    order; gram is its conjugate-transpose product; independent records
    whether the orbit is a basis of its span (full column rank).
    """

    rep: UnitaryRepresentation
    a: np.ndarray
    synthesis_matrix: np.ndarray
    gram: np.ndarray
    independent: bool


@dataclass(frozen=True)
class AnalysisResult:
    coefficients: np.ndarray
    residual: float
    in_subspace: bool


def validate_representation(rep: UnitaryRepresentation, tol: float = REP_TOL) -> None:
    """Check identity, unitarity, and the homomorphism law, in that order."""
    group, d = rep.group, rep.dim
    M = rep.matrices
    if M.shape != (group.order, d, d):
        raise ShapeMismatch(
            f"expected matrices of shape {(group.order, d, d)}, got {M.shape}"
        )
    eye = np.eye(d)
    dev = float(np.max(np.abs(M[group.identity] - eye)))
    if dev > tol:
        raise IdentityMismatch(dev)
    for g in range(group.order):
        dev = float(np.max(np.abs(M[g].conj().T @ M[g] - eye)))
        if dev > tol:
            raise NotUnitary(g, dev)
    T = group.cayley
    for g1 in range(group.order):
        prods = M[g1] @ M  # (order, d, d)
        dev_all = np.abs(prods - M[T[g1]]).reshape(group.order, -1).max(axis=1)
        worst = int(np.argmax(dev_all))
        if dev_all[worst] > tol:
            raise NotHomomorphism(g1, worst, float(dev_all[worst]))


def left_regular(group: FiniteGroup) -> UnitaryRepresentation:
    """Permutation representation of the group acting on itself from the left."""
    g = group.order
    M = np.zeros((g, g, g), dtype=complex)
    T = group.cayley
    cols = np.arange(g)
    for a in range(g):
        M[a, T[a], cols] = 1.0
    M.setflags(write=False)
    return UnitaryRepresentation(group=group, dim=g, matrices=M)


def left_translate(group: FiniteGroup, s: int, values: np.ndarray) -> np.ndarray:
    """Shift a coefficient vector: the result at g is the input at s^-1 g."""
    values = np.asarray(values)
    if values.shape != (group.order,):
        raise ShapeMismatch(
            f"expected {group.order} coefficients, got shape {values.shape}"
        )
    return values[group.cayley[group.inv(s)]]


def build_subspace(rep: UnitaryRepresentation, a: np.ndarray) -> SamplingSubspace:
    """Assemble the orbit of a generating vector into a sampling subspace."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (rep.dim,):
        raise ShapeMismatch(f"generator must have shape ({rep.dim},), got {a.shape}")
    # column g is U(g) a
    S = (rep.matrices @ a).T.copy()
    gram = S.conj().T @ S
    independent = np.linalg.matrix_rank(S) == rep.group.order
    S.setflags(write=False)
    gram.setflags(write=False)
    return SamplingSubspace(
        rep=rep,
        a=a.copy(),
        synthesis_matrix=S,
        gram=gram,
        independent=bool(independent),
    )


def synthesize(subspace: SamplingSubspace, alpha: CoefficientVector | np.ndarray) -> np.ndarray:
    """Map coefficients to the subspace member sum_g alpha(g) U(g) a."""
    values = alpha.values if isinstance(alpha, CoefficientVector) else np.asarray(alpha)
    if values.shape != (subspace.rep.group.order,):
        raise ShapeMismatch(
            f"expected {subspace.rep.group.order} coefficients, got shape "
            f"{values.shape}"
        )
    return subspace.synthesis_matrix @ values.astype(complex)


def analyze(
    subspace: SamplingSubspace,
    f: np.ndarray,
    tol: float = REP_TOL,
    strict: bool = False,
    diagnostics: bool = False,
):
    """Recover coefficients of a vector from the subspace.

    Always computes the minimum-norm least-squares solution. With strict
    set, a dependent orbit or a vector outside the subspace raises instead
    of being reported; with diagnostics set, the residual and membership
    flag come back alongside the coefficients.
    """
    f = np.asarray(f, dtype=complex)
    if f.shape != (subspace.rep.dim,):
        raise ShapeMismatch(f"expected a vector of shape ({subspace.rep.dim},), got {f.shape}")
    if strict and not subspace.independent:
        raise DependentOrbit()
    coeffs, *_ = np.linalg.lstsq(subspace.synthesis_matrix, f, rcond=None)
    residual = float(np.linalg.norm(subspace.synthesis_matrix @ coeffs - f))
    in_subspace = residual <= tol * max(1.0, float(np.linalg.norm(f)))
    if strict and not in_subspace:
        raise NotInSubspace(residual)
    result = AnalysisResult(coefficients=coeffs, residual=residual, in_subspace=in_subspace)
    return result if diagnostics else coeffs


def _orbit_member(subspace: SamplingSubspace, g: int) -> np.ndarray:
    return subspace.synthesis_matrix[:, g]
