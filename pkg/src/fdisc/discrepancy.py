"""Fourier Discrepancy and the baseline discrepancies TV, KL and W1."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import as_vector, check_grid_size, dirac, same_size
from .spectral import dft

# F <= TV_CONSTANT * TV and F <= KL_CONSTANT * sqrt(KL)
TV_CONSTANT = 2.0 * math.pi / math.sqrt(6.0)
KL_CONSTANT = math.pi / math.sqrt(3.0)


def frequency_weights(n: int) -> np.ndarray:
    """Weights on |delta_hat_k|^2 for k = 1..N/2: 1/k^2, and 1/N^2 at N/2."""
    k = np.arange(1, n // 2 + 1, dtype=float)
    w = 1.0 / k**2
    w[-1] = 1.0 / n**2
    return w


def fourier_squared_delta(delta) -> np.ndarray | float:
    """Squared Fourier Discrepancy of a null-sum vector (batched on last axis)."""
    d = as_vector(delta)
    n = check_grid_size(d.shape[-1])
    spec = dft(d)[..., 1 : n // 2 + 1]
    return np.sum(np.abs(spec) ** 2 * frequency_weights(n), axis=-1)


def fourier_discrepancy_delta(delta):
    return np.sqrt(fourier_squared_delta(delta))


def fourier_discrepancy(mu, nu):
    """F(mu, nu): weighted L2 distance between the low half of the spectra."""
    a, b = same_size(mu, nu)
    return fourier_discrepancy_delta(a - b)


def total_variation_delta(delta):
    return 0.5 * np.sum(np.abs(as_vector(delta)), axis=-1)


def total_variation(mu, nu):
    a, b = same_size(mu, nu)
    return total_variation_delta(a - b)


def kullback_leibler(nu, mu) -> float:
    """KL(nu || mu) in nats; +inf when nu charges a point where mu vanishes."""
    p, q = same_size(nu, mu)
    support = p > 0
    if np.any(q[support] <= 0):
        return math.inf
    return float(np.sum(p[support] * np.log(p[support] / q[support])))


def wasserstein1(mu, nu):
    """W1 on the grid j/N with cost |x - y|, via the CDF difference."""
    a, b = same_size(mu, nu)
    n = a.shape[-1]
    cdf_gap = np.cumsum(a - b, axis=-1)[..., :-1]
    return np.sum(np.abs(cdf_gap), axis=-1) / n


@dataclass(frozen=True)
class DiscrepancyReport:
    fourier: float
    tv: float
    kl: float
    w1: float

    def to_dict(self) -> dict:
        return {
            "fourier": self.fourier,
            "tv": self.tv,
            "kl": "inf" if math.isinf(self.kl) else self.kl,
            "w1": self.w1,
        }

    def check(self, tol: float = 1e-9) -> None:
        if self.fourier > TV_CONSTANT * self.tv + tol:
            raise ArithmeticError(f"TV bound violated: F={self.fourier}, TV={self.tv}")
        if math.isfinite(self.kl) and self.fourier > KL_CONSTANT * math.sqrt(self.kl) + tol:
            raise ArithmeticError(f"KL bound violated: F={self.fourier}, KL={self.kl}")


def compare_all(mu, nu) -> DiscrepancyReport:
    """All four discrepancies; KL is taken as KL(mu || nu)."""
    report = DiscrepancyReport(
        fourier=float(fourier_discrepancy(mu, nu)),
        tv=float(total_variation(mu, nu)),
        kl=kullback_leibler(mu, nu),
        w1=float(wasserstein1(mu, nu)),
    )
    report.check()
    return report


def delta_curve(n: int, scaled: bool = False) -> np.ndarray:
    """Rows (d, F, TV, W1) between delta_0 and delta_d for d = 0..N-1."""
    n = check_grid_size(n)
    origin = np.asarray(dirac(0, n))
    shifted = np.eye(n)
    table = np.column_stack(
        [
            np.arange(n, dtype=float),
            fourier_discrepancy(origin, shifted),
            total_variation(origin, shifted),
            wasserstein1(origin, shifted),
        ]
    )
    if scaled:
        table[:, 1:] /= table[:, 1:].max(axis=0)
    return table
