"""Gaussian noise on frequencies and its link to the Fourier loss.

With noise whose DFT is complex normal with covariance diag(2 sigma^2 beta),
the negative log-likelihood of observations y_i around predictions f_i is
sum_i F(y_i, f_i)^2 / (2 sigma^2) up to an additive constant, so maximising
the likelihood and minimising the Fourier loss select the same parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrepancy import fourier_squared_delta
from .errors import EmptyGridError, FdiscError, MassMismatchPairError, SizeMismatchError
from .measures import check_grid_size
from .spectral import idft, weight_beta

MASS_TOL = 1e-9


@dataclass(frozen=True)
class NoiseModel:
    n: int
    sigma: float

    def __post_init__(self):
        check_grid_size(self.n)
        if not self.sigma > 0:
            raise FdiscError(f"sigma must be positive, got {self.sigma}")

    @property
    def covariance(self) -> np.ndarray:
        """Diagonal of Sigma = 2 sigma^2 beta (zero at frequency 0)."""
        return 2.0 * self.sigma**2 * weight_beta(self.n)


def sample_spectrum(model: NoiseModel, rng: np.random.Generator, size=None) -> np.ndarray:
    """Hermitian noise spectrum: 0 at k=0, sigma*k*(g1 + i g2) for 0<k<N/2,
    real N(0, sigma^2 N^2) at N/2, conjugate mirror above N/2."""
    n, sigma = model.n, model.sigma
    lead = () if size is None else (size,)
    half = n // 2
    k = np.arange(1, half, dtype=float)
    spec = np.zeros(lead + (n,), dtype=complex)
    g = rng.standard_normal(lead + (half - 1, 2))
    low = sigma * k * (g[..., 0] + 1j * g[..., 1])
    spec[..., 1:half] = low
    spec[..., half] = sigma * n * rng.standard_normal(lead)
    spec[..., half + 1 :] = np.conj(low[..., ::-1])
    return spec


def sample_noise(model: NoiseModel, seed: int, size=None) -> np.ndarray:
    """Real, zero-mass spatial noise (one vector, or ``size`` rows)."""
    rng = np.random.default_rng(seed)
    return idft(sample_spectrum(model, rng, size))


def log_likelihood(y, f, sigma: float) -> float:
    """Negative log-likelihood minus its data-free constant: sum F^2 / (2 sigma^2).

    Smaller is more likely. Every y_i must carry the same mass as f_i, since
    frequency 0 has zero variance.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    f = np.atleast_2d(np.asarray(f, dtype=float))
    if y.shape != f.shape:
        raise SizeMismatchError(f"shape mismatch: {y.shape} vs {f.shape}")
    if y.shape[0] < 1:
        raise FdiscError("need at least one observation")
    if not sigma > 0:
        raise FdiscError(f"sigma must be positive, got {sigma}")
    gap = np.abs(y.sum(axis=1) - f.sum(axis=1))
    if np.any(gap > MASS_TOL):
        i = int(np.argmax(gap))
        raise MassMismatchPairError(f"pair {i}: masses differ by {gap[i]:.3g}")
    return float(np.sum(fourier_squared_delta(y - f)) / (2.0 * sigma**2))


def translated_bump(n: int, width: float = 2.0):
    """Family theta -> periodic Gaussian bump of unit mass centred at grid
    coordinate theta (in units of grid steps)."""
    n = check_grid_size(n)
    j = np.arange(n)

    def family(theta: float) -> np.ndarray:
        gap = (j - theta + n / 2) % n - n / 2
        w = np.exp(-0.5 * (gap / width) ** 2)
        return w / w.sum()

    return family


@dataclass(frozen=True)
class MleResult:
    grid: np.ndarray
    neg_loglik: np.ndarray
    fourier_loss: np.ndarray
    index: int

    @property
    def theta_star_likelihood(self) -> float:
        return float(self.grid[int(np.argmin(self.neg_loglik))])

    @property
    def theta_star_fourier(self) -> float:
        return float(self.grid[int(np.argmin(self.fourier_loss))])

    def to_csv(self) -> str:
        lines = ["theta,neg_loglik,fourier_loss"]
        lines += [
            f"{t:.17g},{a:.17g},{b:.17g}"
            for t, a, b in zip(self.grid, self.neg_loglik, self.fourier_loss)
        ]
        return "\n".join(lines) + "\n"


def mle_demo(family, grid, observations, sigma: float) -> MleResult:
    """Evaluate likelihood and mean Fourier loss over a parameter grid.

    Raises ArithmeticError if the two optima land on different grid indices.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise EmptyGridError("parameter grid is empty")
    obs = np.atleast_2d(np.asarray(observations, dtype=float))
    m = obs.shape[0]
    neg_loglik = np.empty(grid.size)
    fourier_loss = np.empty(grid.size)
    for idx, theta in enumerate(grid):
        pred = np.broadcast_to(np.asarray(family(theta), dtype=float), obs.shape)
        neg_loglik[idx] = log_likelihood(obs, pred, sigma)
        fourier_loss[idx] = np.sum(fourier_squared_delta(obs - pred)) / m
    a, b = int(np.argmin(neg_loglik)), int(np.argmin(fourier_loss))
    if a != b:
        raise ArithmeticError(f"likelihood optimum {a} differs from Fourier optimum {b}")
    return MleResult(grid=grid, neg_loglik=neg_loglik, fourier_loss=fourier_loss, index=a)


def noise_demo(n: int, sigma: float, samples: int, seed: int, grid_points: int = 101,
               width: float = 2.0, true_index: int | None = None):
    """Simulate ``samples`` noisy observations of a translated bump and fit
    the shift on a grid of ``grid_points`` values in [0, N).

    Returns ``(result, theta_true)``.
    """
    n = check_grid_size(n)
    if samples < 1:
        raise FdiscError("samples must be >= 1")
    if grid_points < 1:
        raise EmptyGridError("grid_points must be >= 1")
    grid = np.arange(grid_points) * (n / grid_points)
    rng = np.random.default_rng(seed)
    if true_index is None:
        true_index = int(rng.integers(grid_points))
    family = translated_bump(n, width)
    theta_true = float(grid[true_index])
    noise = idft(sample_spectrum(NoiseModel(n, sigma), rng, size=samples))
    observations = family(theta_true) + noise
    return mle_demo(family, grid, observations, sigma), theta_true
