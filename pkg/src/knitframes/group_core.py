"""Finite groups, knit-product factorizations, and coset decompositions.

A group is stored as a dense Cayley table of 0-based element indices. A knit
factorization splits a group into two subgroups N and H with trivial
intersection and unique products g = n*h; the mutual actions are kept as
dense lookup tables so they can be verified exhaustively and serialized.

All indexing downstream of this module (representation matrices, coefficient
vectors, matrix columns) refers to the element order fixed here.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    FactorizationNotUnique,
    IndexResolutionFailure,
    KnitAxiomViolation,
    MalformedTable,
    NoIdentity,
    NontrivialIntersection,
    NotAGroup,
    NotAssociative,
    NotInvertible,
    NotSubgroup,
)

__all__ = [
    "FiniteGroup",
    "KnitFactorization",
    "from_cayley_table",
    "build_dihedral",
    "knit_external",
    "factor_internal",
    "coset_decomposition",
    "coset_representative",
    "is_abelian_subset",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group over element indices 0..order-1."""

    order: int
    cayley: np.ndarray  # (order, order) int, cayley[a, b] = index of a*b
    identity: int
    inverse: np.ndarray  # (order,) int
    labels: Optional[tuple[str, ...]] = None

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def label_of(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    def __len__(self) -> int:
        return self.order


@dataclass(frozen=True)
class KnitFactorization:
    """Group split G = N*H with unique factorization and mutual actions.

    n_elements and h_elements list the subgroup members as group element
    indices, identity first. alpha[j, i] is the position in n_elements of
    alpha_{tau_j}(nu_i); beta[i, j] is the position in h_elements of
    beta_{nu_i}(tau_j); they satisfy tau_j * nu_i = alpha_{tau_j}(nu_i) *
    beta_{nu_i}(tau_j). nh_split[g] = (i, j) with g = nu_i * tau_j and
    hn_split[g] = (j, i) with g = tau_j * nu_i.
    """

    group: FiniteGroup
    n_elements: np.ndarray
    h_elements: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    nh_split: np.ndarray
    hn_split: np.ndarray

    @property
    def n_order(self) -> int:
        return len(self.n_elements)

    @property
    def h_order(self) -> int:
        return len(self.h_elements)

    def indexing_elements(self, indexing: str) -> np.ndarray:
        """Subgroup lists by the indexing tag: 'N' or 'H'."""
        _check_indexing(indexing)
        return self.n_elements if indexing == "N" else self.h_elements

    def coset_columns(self, indexing: str) -> np.ndarray:
        """Canonical coset enumeration of G as a column order.

        For 'N' the column at position r*h_order + j is the element
        nu_r * tau_j; for 'H' the column at r*n_order + j is tau_r * nu_j.
        """
        _check_indexing(indexing)
        T = self.group.cayley
        if indexing == "N":
            outer, inner = self.n_elements, self.h_elements
        else:
            outer, inner = self.h_elements, self.n_elements
        cols = [int(T[a, b]) for a in outer for b in inner]
        return _frozen(np.array(cols, dtype=int))


def _check_indexing(indexing: str) -> None:
    if indexing not in ("N", "H"):
        raise ValueError(f"indexing must be 'N' or 'H', got {indexing!r}")


def is_abelian_subset(group: FiniteGroup, elements: Sequence[int]) -> bool:
    T = group.cayley
    return all(T[a, b] == T[b, a] for a in elements for b in elements)


# --------------------------------------------------------------------------
# construction and validation
# --------------------------------------------------------------------------
def from_cayley_table(table, labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    The table must be a square array of indices whose rows and columns are
    permutations, with a two-sided identity, full associativity, and a
    two-sided inverse for every element. The first violation found is
    reported in the raised error.
    """
    T = np.asarray(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.size == 0:
        raise MalformedTable(f"expected a non-empty square table, got shape {T.shape}")
    if not np.issubdtype(T.dtype, np.integer):
        if np.issubdtype(T.dtype, np.floating) and np.all(T == np.floor(T)):
            T = T.astype(int)
        else:
            raise MalformedTable("table entries must be integers")
    T = T.astype(int)
    g = T.shape[0]
    if T.min() < 0 or T.max() >= g:
        bad = np.argwhere((T < 0) | (T >= g))[0]
        raise MalformedTable(
            f"entry at ({bad[0]}, {bad[1]}) = {T[bad[0], bad[1]]} out of range 0..{g - 1}"
        )
    full = np.arange(g)
    for i in range(g):
        if not np.array_equal(np.sort(T[i]), full):
            raise MalformedTable(f"row {i} is not a permutation of 0..{g - 1}")
        if not np.array_equal(np.sort(T[:, i]), full):
            raise MalformedTable(f"column {i} is not a permutation of 0..{g - 1}")
    if labels is not None and len(labels) != g:
        raise MalformedTable(f"got {len(labels)} labels for {g} elements")

    identity = None
    for e in range(g):
        if np.array_equal(T[e], full) and np.array_equal(T[:, e], full):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")

    # associativity, vectorized: T[T[a,b],c] vs T[a,T[b,c]]
    left = T[T][:, :, :]  # left[a,b,c] = T[T[a,b], c]
    right = T[:, T]  # right[a,b,c] = T[a, T[b,c]]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        raise NotAssociative((int(a), int(b), int(c)))

    inverse = np.empty(g, dtype=int)
    for a in range(g):
        xs = np.where(T[a] == identity)[0]
        if len(xs) != 1 or T[xs[0], a] != identity:
            raise NotInvertible(a)
        inverse[a] = xs[0]

    return FiniteGroup(
        order=g,
        cayley=_frozen(T),
        identity=identity,
        inverse=_frozen(inverse),
        labels=tuple(labels) if labels is not None else None,
    )


def build_dihedral(N: int) -> tuple[FiniteGroup, KnitFactorization]:
    """Symmetry group of the regular N-gon, with its rotation/reflection split.

    Elements 0..N-1 are the rotations r^0..r^(N-1); elements N..2N-1 are
    s*r^0..s*r^(N-1) where s is a reflection, so s*r^i*s = r^(N-i). The
    returned factorization has the rotations as N (in generator-power order)
    and {e, s} as H; the backward action is the identity, i.e. the product
    is an internal semidirect product.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    # element b*N + a stands for s^b r^a
    table = np.empty((2 * N, 2 * N), dtype=int)
    for b1 in (0, 1):
        for a1 in range(N):
            for b2 in (0, 1):
                for a2 in range(N):
                    b = (b1 + b2) % 2
                    a = (a2 + (a1 if b2 == 0 else -a1)) % N
                    table[b1 * N + a1, b2 * N + a2] = b * N + a
    labels = [_rot_label(a) for a in range(N)]
    labels += ["s" + (_rot_label(a) if a else "") for a in range(N)]
    group = from_cayley_table(table, labels)
    fact = factor_internal(group, list(range(N)), [0, N])
    return group, fact


def _rot_label(a: int) -> str:
    if a == 0:
        return "e"
    return "r" if a == 1 else f"r{a}"


def knit_external(
    n_group: FiniteGroup,
    h_group: FiniteGroup,
    alpha,
    beta,
) -> tuple[FiniteGroup, KnitFactorization]:
    """Build the knit product of two groups from their mutual actions.

    alpha is an (h_order, n_order) table with alpha[h, n] the image of n
    under the action of h; beta is (n_order, h_order) with beta[n, h] the
    image of h under the back-action of n. The three knit axioms are checked
    exhaustively before the product table is assembled; the product law on
    pairs is (n1, h1)(n2, h2) = (n1 * alpha_{h1}(n2), beta_{n2}(h1) * h2)
    and the pair (n, h) becomes element index n * h_order + h.

    Both factors must carry their identity at index 0 so that the product's
    canonical (n, h) row-major order starts at the identity.
    """
    TN, TH = n_group.cayley, h_group.cayley
    nn, nh = n_group.order, h_group.order
    if n_group.identity != 0 or h_group.identity != 0:
        raise MalformedTable("factor groups must have identity at index 0")
    A = np.asarray(alpha, dtype=int)
    B = np.asarray(beta, dtype=int)
    if A.shape != (nh, nn):
        raise MalformedTable(f"alpha must be {nh}x{nn}, got {A.shape}")
    if B.shape != (nn, nh):
        raise MalformedTable(f"beta must be {nn}x{nh}, got {B.shape}")
    if A.min() < 0 or A.max() >= nn or B.min() < 0 or B.max() >= nh:
        raise MalformedTable("alpha/beta entries out of range")
    _verify_knit_axioms(TN, TH, A, B)

    table = np.empty((nn * nh, nn * nh), dtype=int)
    for n1 in range(nn):
        for h1 in range(nh):
            for n2 in range(nn):
                for h2 in range(nh):
                    n = TN[n1, A[h1, n2]]
                    h = TH[B[n2, h1], h2]
                    table[n1 * nh + h1, n2 * nh + h2] = n * nh + h
    labels = None
    if n_group.labels is not None and h_group.labels is not None:
        labels = [
            _pair_label(n_group.labels[n], h_group.labels[h], n == 0, h == 0)
            for n in range(nn)
            for h in range(nh)
        ]
    try:
        group = from_cayley_table(table, labels)
    except (MalformedTable, NoIdentity, NotAssociative, NotInvertible) as exc:
        raise NotAGroup(f"knit product table fails group axioms: {exc}") from exc

    _check_pair_inverse_formula(group, TN, TH, A, B, nn, nh)

    n_elements = np.array([n * nh for n in range(nn)], dtype=int)
    h_elements = np.arange(nh, dtype=int)
    nh_split = np.empty((nn * nh, 2), dtype=int)
    hn_split = np.empty((nn * nh, 2), dtype=int)
    for n in range(nn):
        for h in range(nh):
            nh_split[n * nh + h] = (n, h)
            # tau_h * nu_n = (alpha_h(n), beta_n(h))
            hn_split[A[h, n] * nh + B[n, h]] = (h, n)
    fact = KnitFactorization(
        group=group,
        n_elements=_frozen(n_elements),
        h_elements=_frozen(h_elements),
        alpha=_frozen(A.copy()),
        beta=_frozen(B.copy()),
        nh_split=_frozen(nh_split),
        hn_split=_frozen(hn_split),
    )
    return group, fact


def _pair_label(nl: str, hl: str, n_is_id: bool, h_is_id: bool) -> str:
    if n_is_id and h_is_id:
        return nl
    if n_is_id:
        return hl
    if h_is_id:
        return nl
    return f"{nl}.{hl}"


def _verify_knit_axioms(TN, TH, A, B) -> None:
    """Exhaustive scan of the three knit axioms, first witness wins.

    Property 1 collects the action laws: the identity of one factor acts
    trivially, every action fixes the other factor's identity, alpha is a
    homomorphism in its subscript, and beta reverses products in its
    subscript. Property 2 and 3 are the two mixed product rules.
    """
    nn, nh = TN.shape[0], TH.shape[0]
    for n in range(nn):
        if A[0, n] != n:
            raise KnitAxiomViolation(1, (0, n), "alpha at the identity is not id")
    for h in range(nh):
        if B[0, h] != h:
            raise KnitAxiomViolation(1, (0, h), "beta at the identity is not id")
    for h in range(nh):
        if A[h, 0] != 0:
            raise KnitAxiomViolation(1, (h, 0), "alpha_h does not fix the identity")
    for n in range(nn):
        if B[n, 0] != 0:
            raise KnitAxiomViolation(1, (n, 0), "beta_n does not fix the identity")
    for h1 in range(nh):
        for h2 in range(nh):
            for n in range(nn):
                if A[TH[h1, h2], n] != A[h1, A[h2, n]]:
                    raise KnitAxiomViolation(
                        1, (h1, h2, n), "alpha is not a homomorphism"
                    )
    for n1 in range(nn):
        for n2 in range(nn):
            for h in range(nh):
                if B[TN[n1, n2], h] != B[n2, B[n1, h]]:
                    raise KnitAxiomViolation(
                        1, (n1, n2, h), "beta is not an anti-homomorphism"
                    )
    for h in range(nh):
        for n1 in range(nn):
            for n2 in range(nn):
                if A[h, TN[n1, n2]] != TN[A[h, n1], A[B[n1, h], n2]]:
                    raise KnitAxiomViolation(2, (h, n1, n2))
    for n in range(nn):
        for h1 in range(nh):
            for h2 in range(nh):
                if B[n, TH[h1, h2]] != TH[B[A[h2, n], h1], B[n, h2]]:
                    raise KnitAxiomViolation(3, (n, h1, h2))


def _check_pair_inverse_formula(group, TN, TH, A, B, nn, nh) -> None:
    # (n, h)^{-1} should be (alpha_{h^-1}(n^-1), beta_{n^-1}(h^-1)); compare
    # against the table inverse and warn on disagreement instead of trusting
    # the closed form.
    inv_n = np.array([int(np.where(TN[n] == 0)[0][0]) for n in range(nn)])
    inv_h = np.array([int(np.where(TH[h] == 0)[0][0]) for h in range(nh)])
    for n in range(nn):
        for h in range(nh):
            formula = A[inv_h[h], inv_n[n]] * nh + B[inv_n[n], inv_h[h]]
            actual = group.inverse[n * nh + h]
            if formula != actual:
                warnings.warn(
                    f"pair inverse formula disagrees with the table at "
                    f"(n={n}, h={h}): formula {formula}, table {actual}",
                    RuntimeWarning,
                    stacklevel=3,
                )
                return


def _validate_subgroup(group: FiniteGroup, subset: Sequence[int], which: str) -> list[int]:
    elems = [int(x) for x in subset]
    if len(set(elems)) != len(elems):
        raise NotSubgroup(which, "repeated elements")
    if any(x < 0 or x >= group.order for x in elems):
        raise NotSubgroup(which, "element index out of range")
    if group.identity not in elems:
        raise NotSubgroup(which, "does not contain the identity")
    s = set(elems)
    for a in elems:
        if group.inv(a) not in s:
            raise NotSubgroup(which, f"element {a} has no inverse in the subset")
        for b in elems:
            if group.mul(a, b) not in s:
                raise NotSubgroup(which, f"not closed: {a}*{b} falls outside")
    # identity first, otherwise keep the caller's order
    elems.remove(group.identity)
    return [group.identity] + elems


def factor_internal(
    group: FiniteGroup,
    n_subset: Sequence[int],
    h_subset: Sequence[int],
) -> KnitFactorization:
    """Split a group over two given subgroups with unique products n*h.

    Verifies both subsets are subgroups meeting only at the identity and
    that (n, h) -> n*h hits every element exactly once, then derives the
    mutual action tables from the products tau*nu.
    """
    n_elems = _validate_subgroup(group, n_subset, "n_subset")
    h_elems = _validate_subgroup(group, h_subset, "h_subset")
    shared = set(n_elems) & set(h_elems)
    shared.discard(group.identity)
    if shared:
        raise NontrivialIntersection(min(shared))
    nn, nh = len(n_elems), len(h_elems)
    if nn * nh != group.order:
        raise FactorizationNotUnique(
            f"|N| * |H| = {nn * nh} != group order {group.order}"
        )

    nh_split = np.full((group.order, 2), -1, dtype=int)
    for i, nu in enumerate(n_elems):
        for j, tau in enumerate(h_elems):
            p = group.mul(nu, tau)
            if nh_split[p, 0] != -1:
                raise FactorizationNotUnique(
                    f"element {p} factors as both "
                    f"({n_elems[nh_split[p, 0]]}, {h_elems[nh_split[p, 1]]}) "
                    f"and ({nu}, {tau})"
                )
            nh_split[p] = (i, j)

    n_pos = {nu: i for i, nu in enumerate(n_elems)}
    h_pos = {tau: j for j, tau in enumerate(h_elems)}
    alpha = np.empty((nh, nn), dtype=int)
    beta = np.empty((nn, nh), dtype=int)
    hn_split = np.empty((group.order, 2), dtype=int)
    for j, tau in enumerate(h_elems):
        for i, nu in enumerate(n_elems):
            p = group.mul(tau, nu)
            m, l = nh_split[p]
            alpha[j, i] = m
            beta[i, j] = l
            hn_split[p] = (j, i)

    return KnitFactorization(
        group=group,
        n_elements=_frozen(np.array(n_elems, dtype=int)),
        h_elements=_frozen(np.array(h_elems, dtype=int)),
        alpha=_frozen(alpha),
        beta=_frozen(beta),
        nh_split=_frozen(nh_split),
        hn_split=_frozen(hn_split),
    )


def coset_decomposition(fact: KnitFactorization, quotient_by: str) -> list[int]:
    """Ordered coset representatives: n_elements for G/H, h_elements for G/N."""
    if quotient_by == "H":
        return [int(x) for x in fact.n_elements]
    if quotient_by == "N":
        return [int(x) for x in fact.h_elements]
    raise ValueError(f"quotient_by must be 'H' or 'N', got {quotient_by!r}")


def coset_representative(fact: KnitFactorization, g: int, quotient_by: str) -> int:
    """Representative of the coset of g: its N part for G/H, H part for G/N."""
    if quotient_by == "H":
        return int(fact.n_elements[fact.nh_split[g, 0]])
    if quotient_by == "N":
        return int(fact.h_elements[fact.hn_split[g, 0]])
    raise ValueError(f"quotient_by must be 'H' or 'N', got {quotient_by!r}")


def resolve_subgroup_position(elements: np.ndarray, element: int) -> int:
    """Position of a group element inside a subgroup listing."""
    hits = np.where(elements == element)[0]
    if len(hits) != 1:
        raise IndexResolutionFailure(
            f"element {element} not uniquely in the subgroup listing"
        )
    return int(hits[0])
