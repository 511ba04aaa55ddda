from __future__ import annotations

import numpy as np
import pytest

import knitframes as kf

from conftest import make_rng, random_complex


@pytest.fixture(scope="module")
def d6_scheme(d6_world):
    sub, fact, channels = d6_world
    return kf.build_scheme(sub, fact, channels, "N")


@pytest.fixture(scope="module")
def d6_world():
    group, fact = kf.build_dihedral(3)
    rep = kf.left_regular(group)
    sub = kf.build_subspace(rep, np.eye(6)[0])
    channels = random_complex(make_rng(20), 3, 6)
    return sub, fact, channels


def test_build_scheme_wiring(d6_scheme):
    scheme = d6_scheme
    assert scheme.rank == 6
    assert scheme.reconstructing
    assert scheme.family is not None and scheme.inverse is not None
    assert scheme.kappa == 3
    assert scheme.points.tolist() == [0, 1, 2]


def test_build_scheme_deficient(d6_world):
    sub, fact, channels = d6_world
    scheme = kf.build_scheme(sub, fact, channels[:1], "N")
    assert scheme.rank == 3
    assert not scheme.reconstructing
    assert scheme.family is None and scheme.inverse is None
    with pytest.raises(kf.NotReconstructing):
        kf.reconstruct(scheme, np.zeros(3, dtype=complex))


def test_take_samples_matches_definition(d6_scheme):
    scheme = d6_scheme
    rng = make_rng(21)
    f = random_complex(rng, 6)
    samples = kf.take_samples(scheme, f)
    assert samples.kappa == 3 and samples.n_points == 3
    rep = scheme.subspace.rep
    for k in range(3):
        per = samples.of_channel(k)
        for i, p in enumerate(scheme.points):
            direct = np.vdot(rep.of(int(p)) @ scheme.channels[k], f)
            assert abs(per[i] - direct) < 1e-12
    with pytest.raises(kf.ShapeMismatch):
        kf.take_samples(scheme, np.zeros(5))


def test_reconstruct_exact_on_subspace(d6_scheme):
    scheme = d6_scheme
    rng = make_rng(22)
    for _ in range(20):
        alpha = random_complex(rng, 6)
        f = kf.synthesize(scheme.subspace, alpha)
        f_hat = kf.reconstruct(scheme, kf.take_samples(scheme, f))
        assert np.linalg.norm(f_hat - f) < 1e-9
    with pytest.raises(kf.ShapeMismatch):
        kf.reconstruct(scheme, np.zeros(4, dtype=complex))


def test_verify_frame_values(d6_scheme, d6_world):
    frame = kf.verify_frame(d6_scheme)
    sv = np.linalg.svd(d6_scheme.cov.stacked, compute_uv=False)
    assert frame.lower == pytest.approx(float(sv.min() ** 2))
    assert frame.upper == pytest.approx(float(sv.max() ** 2))
    assert frame.is_frame
    assert frame.condition == pytest.approx(float(sv.max() / sv.min()))
    assert not frame.ill_conditioned

    sub, fact, channels = d6_world
    thin = kf.build_scheme(sub, fact, channels[:1], "N")
    bounds = kf.verify_frame(thin)
    assert bounds.lower == 0.0
    assert not bounds.is_frame
    assert bounds.condition == float("inf")
    assert bounds.ill_conditioned

    empty = kf.build_scheme(sub, fact, np.zeros((0, 6), dtype=complex), "N")
    zero = kf.verify_frame(empty)
    assert (zero.lower, zero.upper, zero.is_frame) == (0.0, 0.0, False)


def test_check_interpolation_square(d6_world):
    sub, fact, channels = d6_world
    scheme = kf.build_scheme(sub, fact, channels[:2], "N")
    assert scheme.cov.stacked.shape == (6, 6)
    result = kf.check_interpolation(scheme)
    assert result.holds
    assert result.sample_deviation <= 1e-9
    assert result.inverse_deviation <= 1e-9


def test_check_interpolation_preconditions(d6_world, d6_scheme):
    sub, fact, channels = d6_world
    with pytest.raises(kf.NotSquareCase):
        kf.check_interpolation(d6_scheme)  # 9 rows, 6 columns
    doubled = np.stack([channels[0], channels[0]])
    singular = kf.build_scheme(sub, fact, doubled, "N")
    assert singular.cov.stacked.shape == (6, 6)
    assert not singular.reconstructing
    with pytest.raises(kf.NotReconstructing):
        kf.check_interpolation(singular)


def test_dual_expansion_check_both_ways(d6_scheme, d6_world):
    rng = make_rng(23)
    alpha = random_complex(rng, 6)
    f = kf.synthesize(d6_scheme.subspace, alpha)
    assert kf.dual_expansion_check(d6_scheme, f) < 1e-9
    sub, fact, channels = d6_world
    thin = kf.build_scheme(sub, fact, channels[:1], "N")
    err = kf.dual_expansion_check(thin, f)
    assert err > 1e-3  # samples cannot pin down the vector


def test_byh_mode_round_trip(d6_world):
    sub, fact, _ = d6_world
    channels = random_complex(make_rng(24), 4, 6)
    scheme = kf.build_scheme(sub, fact, channels, "H")
    assert scheme.cov.stacked.shape == (8, 6)
    assert scheme.reconstructing
    alpha = random_complex(make_rng(25), 6)
    f = kf.synthesize(sub, alpha)
    f_hat = kf.reconstruct(scheme, kf.take_samples(scheme, f))
    assert np.linalg.norm(f_hat - f) < 1e-9
    kf.verify_shift_structure(scheme.inverse)
