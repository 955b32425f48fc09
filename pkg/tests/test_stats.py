import numpy as np
import pytest

from fdisc.discrepancy import fourier_squared_delta
from fdisc.errors import EmptyGridError, MassMismatchPairError
from fdisc.measures import dirac
from fdisc.spectral import dft
from fdisc.stats import (
    NoiseModel,
    log_likelihood,
    mle_demo,
    noise_demo,
    sample_noise,
    sample_spectrum,
    translated_bump,
)


def test_noise_model_covariance():
    cov = NoiseModel(8, 1.5).covariance
    assert cov[0] == 0
    np.testing.assert_allclose(cov[1:4], 2 * 1.5**2 * np.arange(1, 4) ** 2)
    assert cov[4] == pytest.approx(1.5**2 * 64)
    np.testing.assert_array_equal(cov[1:], cov[1:][::-1])


def test_noise_is_real_and_null_sum():
    eps = sample_noise(NoiseModel(16, 2.0), seed=3, size=100)
    assert eps.dtype == float
    assert np.all(np.abs(eps.sum(axis=1)) <= 1e-9)
    np.testing.assert_array_equal(eps, sample_noise(NoiseModel(16, 2.0), seed=3, size=100))


def test_noise_vanishes_with_sigma():
    assert np.max(np.abs(sample_noise(NoiseModel(8, 1e-300), seed=0))) < 1e-290


def test_noise_second_moments():
    sigma, n, draws = 1.0, 8, 100_000
    spec = dft(sample_noise(NoiseModel(n, sigma), seed=11, size=draws))
    power = np.abs(spec) ** 2
    for k in range(1, n // 2):
        target = 2 * sigma**2 * k**2
        assert abs(power[:, k].mean() / target - 1) <= 0.03
        # |eps_k|^2 is exponential: standard error = target / sqrt(draws)
        assert abs(power[:, k].mean() - target) <= 3 * target / np.sqrt(draws)
    assert abs(power[:, n // 2].mean() / (sigma**2 * n**2) - 1) <= 0.03


def test_log_likelihood_examples():
    d0, d2 = dirac(0, 4), dirac(2, 4)
    assert log_likelihood([d0.weights], [d0.weights], 1.0) == 0
    assert log_likelihood([d0.weights], [d2.weights], 1.0) == pytest.approx(2.0, abs=1e-12)
    assert log_likelihood([d0.weights], [d2.weights], 2.0) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(MassMismatchPairError):
        log_likelihood([[1, 0, 0, 0]], [[0.5, 0, 0, 0]], 1.0)


def test_log_likelihood_identity(rng):
    y = rng.normal(size=(20, 16))
    f = rng.normal(size=(20, 16))
    f += (y.sum(1) - f.sum(1))[:, None] / 16
    sigma = 0.7
    expected = np.sum(fourier_squared_delta(y - f)) / (2 * sigma**2)
    assert log_likelihood(y, f, sigma) == pytest.approx(expected, rel=1e-12)


def test_likelihood_ordering(rng):
    for _ in range(50):
        y, f, g = rng.normal(size=(3, 8))
        f += (y.sum() - f.sum()) / 8
        g += (y.sum() - g.sum()) / 8
        lhs = np.sign(-log_likelihood([y], [f], 1.0) + log_likelihood([y], [g], 1.0))
        rhs = np.sign(fourier_squared_delta(y - g) - fourier_squared_delta(y - f))
        assert lhs == rhs


def test_mle_demo_noiseless():
    family = translated_bump(32)
    grid = np.arange(101) * 32 / 101
    obs = [family(grid[40])] * 3
    res = mle_demo(family, grid, obs, 0.1)
    assert res.index == 40
    assert res.theta_star_likelihood == res.theta_star_fourier == grid[40]
    with pytest.raises(EmptyGridError):
        mle_demo(family, [], obs, 0.1)


def test_mle_demo_recovery_rate():
    hits = 0
    for seed in range(100):
        res, theta_true = noise_demo(32, 0.1, 50, seed)
        step = res.grid[1] - res.grid[0]
        gap = abs(res.theta_star_likelihood - theta_true)
        gap = min(gap, 32 - gap)
        hits += gap <= step + 1e-12
    assert hits >= 95


def test_mle_csv():
    res, _ = noise_demo(8, 0.1, 5, 0, grid_points=11)
    lines = res.to_csv().splitlines()
    assert lines[0] == "theta,neg_loglik,fourier_loss" and len(lines) == 12
