from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import knitframes as kf

# frozen by hand from the geometric model: s^b r^a at index b*3 + a
D6_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 5, 3, 4],
    [2, 0, 1, 4, 5, 3],
    [3, 4, 5, 0, 1, 2],
    [4, 5, 3, 2, 0, 1],
    [5, 3, 4, 1, 2, 0],
]
D6_INVERSE = [0, 2, 1, 3, 4, 5]

# order-5 loop: Latin, two-sided identity, not associative
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]

NO_IDENTITY3 = [[0, 2, 1], [1, 0, 2], [2, 1, 0]]  # subtraction mod 3

Z2 = [[0, 1], [1, 0]]
Z3 = [[(i + j) % 3 for j in range(3)] for i in range(3)]
Z4 = [[(i + j) % 4 for j in range(4)] for i in range(4)]


def test_dihedral_matches_frozen_table():
    group, fact = kf.build_dihedral(3)
    assert group.cayley.tolist() == D6_TABLE
    assert group.inverse.tolist() == D6_INVERSE
    assert group.identity == 0
    assert group.labels == ("e", "r", "r2", "s", "sr", "sr2")
    # s.r == r2.s
    assert group.mul(3, 1) == group.mul(2, 3) == 4


def test_dihedral_factorization_is_semidirect():
    for N in (1, 2, 3, 4, 6, 8):
        group, fact = kf.build_dihedral(N)
        assert group.order == 2 * N
        assert fact.n_elements.tolist() == list(range(N))
        assert fact.h_elements.tolist() == [0, N]
        # backward action trivial: the rotations are normal
        assert np.array_equal(fact.beta, np.tile([0, 1], (N, 1)))
        # forward action of the reflection inverts rotations
        assert fact.alpha[0].tolist() == list(range(N))
        assert fact.alpha[1].tolist() == [(-i) % N for i in range(N)]


def test_dihedral_coset_columns_frozen():
    _, fact = kf.build_dihedral(3)
    assert fact.coset_columns("N").tolist() == [0, 3, 1, 5, 2, 4]
    assert fact.coset_columns("H").tolist() == [0, 1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        fact.coset_columns("X")


def test_split_tables_round_trip():
    group, fact = kf.build_dihedral(4)
    for g in range(group.order):
        i, j = fact.nh_split[g]
        assert group.mul(int(fact.n_elements[i]), int(fact.h_elements[j])) == g
        j2, i2 = fact.hn_split[g]
        assert group.mul(int(fact.h_elements[j2]), int(fact.n_elements[i2])) == g


def test_from_cayley_table_rejects_malformed():
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table([[0, 1], [1, 0], [0, 1]])
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table([[0, 5], [1, 0]])
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table([[0, 0], [1, 1]])
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table(np.zeros((0, 0), dtype=int))
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table(Z2, labels=["only-one"])


def test_from_cayley_table_no_identity():
    with pytest.raises(kf.NoIdentity):
        kf.from_cayley_table(NO_IDENTITY3)


def test_from_cayley_table_not_associative_witness():
    with pytest.raises(kf.NotAssociative) as info:
        kf.from_cayley_table(LOOP5)
    assert info.value.triple == (1, 1, 2)
    a, b, c = info.value.triple
    T = np.array(LOOP5)
    assert T[T[a, b], c] != T[a, T[b, c]]


def test_from_cayley_table_accepts_float_integers():
    group = kf.from_cayley_table(np.array(Z3, dtype=float))
    assert group.order == 3
    with pytest.raises(kf.MalformedTable):
        kf.from_cayley_table(np.array(Z3, dtype=float) + 0.5)


def test_factor_internal_rejects_non_subgroups(d6):
    group, _ = d6
    with pytest.raises(kf.NotSubgroup):
        kf.factor_internal(group, [0, 1], [0, 3])  # rotations not closed
    with pytest.raises(kf.NotSubgroup):
        kf.factor_internal(group, [1, 2], [0, 3])  # no identity
    with pytest.raises(kf.NotSubgroup):
        kf.factor_internal(group, [0, 1, 1, 2], [0, 3])
    with pytest.raises(kf.NotSubgroup):
        kf.factor_internal(group, [0, 1, 9], [0, 3])


def test_factor_internal_klein_pair_shares_rotation(d8):
    group, _ = d8
    with pytest.raises(kf.NontrivialIntersection) as info:
        kf.factor_internal(group, [0, 2, 4, 6], [0, 2, 5, 7])
    assert info.value.element == 2


def test_factor_internal_wrong_sizes(d6):
    group, _ = d6
    with pytest.raises(kf.FactorizationNotUnique):
        kf.factor_internal(group, [0, 1, 2], [0])


def test_factor_internal_identity_rotated_first(d6):
    group, _ = d6
    fact = kf.factor_internal(group, [2, 1, 0], [3, 0])
    assert fact.n_elements[0] == 0
    assert fact.h_elements[0] == 0
    assert set(fact.n_elements.tolist()) == {0, 1, 2}


def test_factor_internal_swapped_roles_has_nontrivial_beta(d6):
    group, _ = d6
    fact = kf.factor_internal(group, [0, 3], [0, 1, 2])
    assert fact.alpha.tolist() == [[0, 1], [0, 1], [0, 1]]
    assert fact.beta.tolist() == [[0, 1, 2], [0, 2, 1]]


def test_knit_external_direct_product():
    g2 = kf.from_cayley_table(Z2)
    alpha = [[0, 1], [0, 1]]
    beta = [[0, 1], [0, 1]]
    group, fact = kf.knit_external(g2, g2, alpha, beta)
    assert group.order == 4
    assert kf.is_abelian_subset(group, range(4))
    assert all(group.mul(g, g) == 0 for g in range(4))  # Klein group


def test_knit_external_builds_dihedral():
    g3 = kf.from_cayley_table(Z3)
    g2 = kf.from_cayley_table(Z2)
    group, fact = kf.knit_external(g3, g2, [[0, 1, 2], [0, 2, 1]], [[0, 1]] * 3)
    d6, _ = kf.build_dihedral(3)
    # frozen isomorphism: pair (n, h) -> h*3 + (n if h == 0 else (3 - n) % 3)
    phi = {n * 2 + h: h * 3 + (n if h == 0 else (3 - n) % 3)
           for n in range(3) for h in range(2)}
    for x in range(6):
        for y in range(6):
            assert phi[group.mul(x, y)] == d6.mul(phi[x], phi[y])


def test_knit_external_rejects_swapped_cyclic_action():
    g2 = kf.from_cayley_table(Z2)
    g4 = kf.from_cayley_table(Z4)
    alpha = [[0, 1]] * 4
    beta = [[0, 1, 2, 3], [0, 2, 1, 3]]  # swaps the two generators of Z4
    with pytest.raises(kf.KnitAxiomViolation) as info:
        kf.knit_external(g2, g4, alpha, beta)
    assert info.value.property_id == 3
    assert info.value.witness == (1, 1, 1)


def test_knit_external_rejects_broken_property_one():
    g2 = kf.from_cayley_table(Z2)
    with pytest.raises(kf.KnitAxiomViolation) as info:
        kf.knit_external(g2, g2, [[0, 1], [1, 0]], [[0, 1], [0, 1]])
    assert info.value.property_id == 1
    with pytest.raises(kf.KnitAxiomViolation) as info:
        kf.knit_external(g2, g2, [[0, 1], [0, 1]], [[0, 1], [1, 0]])
    assert info.value.property_id == 1


def test_knit_external_shape_and_identity_requirements():
    g2 = kf.from_cayley_table(Z2)
    shifted = kf.from_cayley_table([[1, 0], [0, 1]])  # identity at index 1
    with pytest.raises(kf.MalformedTable):
        kf.knit_external(shifted, g2, [[0, 1], [0, 1]], [[0, 1], [0, 1]])
    with pytest.raises(kf.MalformedTable):
        kf.knit_external(g2, g2, [[0, 1]], [[0, 1], [0, 1]])
    with pytest.raises(kf.MalformedTable):
        kf.knit_external(g2, g2, [[0, 7], [0, 1]], [[0, 1], [0, 1]])


def test_knit_external_round_trips_internal_factorization(d6):
    group, fact = kf.build_dihedral(3)
    # restrict the group law to each factor, re-knit, compare tables
    n_table = [[fact.nh_split[group.mul(int(a), int(b)), 0] for b in fact.n_elements]
               for a in fact.n_elements]
    h_table = [[fact.nh_split[group.mul(int(a), int(b)), 1] for b in fact.h_elements]
               for a in fact.h_elements]
    gN = kf.from_cayley_table(n_table)
    gH = kf.from_cayley_table(h_table)
    product, pfact = kf.knit_external(gN, gH, fact.alpha, fact.beta)
    phi = [group.mul(int(fact.n_elements[n]), int(fact.h_elements[h]))
           for n in range(3) for h in range(2)]
    for x in range(6):
        for y in range(6):
            assert phi[product.mul(x, y)] == group.mul(phi[x], phi[y])


def test_coset_decomposition_and_representatives(d6):
    group, fact = kf.build_dihedral(3)
    assert kf.coset_decomposition(fact, "H") == [0, 1, 2]
    assert kf.coset_decomposition(fact, "N") == [0, 3]
    for g in range(6):
        rep_h = kf.coset_representative(fact, g, "H")
        # g and its representative differ by an H element on the right
        assert group.mul(group.inv(rep_h), g) in set(fact.h_elements.tolist())
        rep_n = kf.coset_representative(fact, g, "N")
        assert group.mul(group.inv(rep_n), g) in set(fact.n_elements.tolist())
    with pytest.raises(ValueError):
        kf.coset_decomposition(fact, "G")


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=10))
def test_dihedral_group_axioms_hold(N):
    group, fact = kf.build_dihedral(N)
    T = group.cayley
    assert np.array_equal(np.sort(T, axis=1), np.tile(np.arange(2 * N), (2 * N, 1)))
    for g in range(2 * N):
        assert group.mul(g, group.inv(g)) == 0
    assert fact.coset_columns("N").tolist() != fact.coset_columns("H").tolist() or N == 1
    assert sorted(fact.coset_columns("N").tolist()) == list(range(2 * N))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=2, max_value=8), st.data())
def test_factor_order_invariance(N, data):
    group, _ = kf.build_dihedral(N)
    perm = data.draw(st.permutations(list(range(1, N))))
    fact = kf.factor_internal(group, [0] + list(perm), [0, N])
    assert fact.n_elements[0] == 0
    assert sorted(fact.coset_columns("N").tolist()) == list(range(2 * N))
    for g in range(2 * N):
        i, j = fact.nh_split[g]
        assert group.mul(int(fact.n_elements[i]), int(fact.h_elements[j])) == g
