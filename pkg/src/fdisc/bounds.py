"""Tight lower and upper bounds of the Fourier Discrepancy at fixed total
variation, the dipole decomposition of null-sum measures, and a numerical
scan of the conjectured maximising dipole length d = N/2.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .discrepancy import fourier_discrepancy, fourier_discrepancy_delta, total_variation_delta
from .errors import (
    BadRangeError,
    IndexOutOfRangeError,
    NonNullSumError,
    OutOfDomainError,
    ThetaOutOfRangeError,
    ZeroDeltaError,
)
from .measures import ProbabilityMeasure, as_vector, check_grid_size, lift_to_pair, random_null_sum
from .spectral import dft

BOUND_TOL = 1e-9


def _check_theta(theta: float) -> float:
    if not 0.0 < theta <= 1.0:
        raise ThetaOutOfRangeError(f"theta must lie in (0, 1], got {theta}")
    return float(theta)


def thread_count() -> int:
    """Worker cap from FDISC_THREADS (default: CPU count)."""
    raw = os.environ.get("FDISC_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


# --- spectral decomposition on the basis omega_k ----------------------------


def spectral_coefficients(delta) -> np.ndarray:
    """lambda with delta = sum_k lambda_k omega_k, i.e. dft(delta) / N."""
    d = as_vector(delta)
    return dft(d) / d.shape[-1]


def reconstruct(lambdas) -> np.ndarray:
    """sum_k lambda_k omega_k, real part."""
    lam = np.asarray(lambdas, dtype=complex)
    n = lam.shape[-1]
    k = np.arange(n)
    basis = np.exp(2j * np.pi * (np.outer(k, k) % n) / n)  # rows omega_k
    return np.real(lam @ basis)


def fourier_from_coefficients(lambdas):
    """F from spectral coefficients: N^2 (sum_{k<N/2} |l_k|^2/k^2 + |l_{N/2}|^2/N^2)."""
    lam = np.asarray(lambdas, dtype=complex)
    n = check_grid_size(lam.shape[-1])
    if np.any(np.abs(lam[..., 0]) > 1e-9):
        raise NonNullSumError("lambda_0 must vanish for a null-sum measure")
    k = np.arange(1, n // 2, dtype=float)
    sq = np.sum(np.abs(lam[..., 1 : n // 2]) ** 2 / k**2, axis=-1)
    sq = sq + np.abs(lam[..., n // 2]) ** 2 / n**2
    return n * np.sqrt(sq)


def xi_normalize(delta) -> np.ndarray:
    """Rescale so that sum_k |lambda_k| = 1."""
    d = as_vector(delta)
    return d / np.sum(np.abs(spectral_coefficients(d)), axis=-1, keepdims=d.ndim > 1)


def alternating(n: int) -> np.ndarray:
    """omega_{N/2} = ((-1)^j)_j, a real null-sum vector."""
    return np.where(np.arange(check_grid_size(n)) % 2 == 0, 1.0, -1.0)


# --- lower bound -------------------------------------------------------------


def lower_tight_bound(n: int, theta: float):
    """C_L(theta) = 2 theta / N with its extremising pair (mu, nu).

    mu = (2 theta/N)[1,0,1,0,...,0] + (1 - theta) delta_0,
    nu = (2 theta/N)[0,1,0,1,...,1] + (1 - theta) delta_0.
    """
    n = check_grid_size(n)
    theta = _check_theta(theta)
    even = (np.arange(n) % 2 == 0).astype(float)
    mu = 2.0 * theta / n * even
    nu = 2.0 * theta / n * (1.0 - even)
    mu[0] += 1.0 - theta
    nu[0] += 1.0 - theta
    return 2.0 * theta / n, ProbabilityMeasure(mu), ProbabilityMeasure(nu)


# --- dipole decomposition ----------------------------------------------------


@dataclass(frozen=True)
class DipoleDecomposition:
    """delta = tv * sum_k lam_k (delta_{i_k} - delta_{j_k}), sum lam_k = 1."""

    terms: tuple[tuple[int, int, float], ...]
    tv: float
    n: int

    def dense(self) -> np.ndarray:
        """The convex combination sum lam_k eta_{i_k, j_k} (= delta / tv)."""
        out = np.zeros(self.n)
        for i, j, lam in self.terms:
            out[i] += lam
            out[j] -= lam
        return out

    def weights(self) -> np.ndarray:
        return np.array([lam for _, _, lam in self.terms])


def decompose_null_sum(delta) -> DipoleDecomposition:
    """Greedy pairing of positive and negative entries in ascending index order."""
    d = as_vector(delta)
    n = d.size
    tv = float(total_variation_delta(d))
    if tv == 0.0:
        raise ZeroDeltaError("cannot decompose the zero measure")
    pos = [[int(i), float(d[i])] for i in np.flatnonzero(d > 0)]
    neg = [[int(j), float(-d[j])] for j in np.flatnonzero(d < 0)]
    terms = []
    p = q = 0
    while p < len(pos) and q < len(neg):
        mass = min(pos[p][1], neg[q][1])
        terms.append((pos[p][0], neg[q][0], mass))
        pos[p][1] -= mass
        neg[q][1] -= mass
        # the exhausted side advances; rounding leftovers are dropped at the end
        if pos[p][1] <= neg[q][1]:
            p += 1
        else:
            q += 1
    total = sum(mass for _, _, mass in terms)
    normalized = tuple((i, j, mass / total) for i, j, mass in terms if mass > 0)
    return DipoleDecomposition(terms=normalized, tv=tv, n=n)


# --- upper bound -------------------------------------------------------------


def dipole_discrepancy(d: int, n: int) -> float:
    """F(eta_{0,d}) in closed form; depends only on the distance d."""
    n = check_grid_size(n)
    if not 1 <= d <= n - 1:
        raise IndexOutOfRangeError(f"dipole distance must lie in 1..{n - 1}, got {d}")
    k = np.arange(1, n // 2, dtype=float)
    sq = np.sum((2.0 - 2.0 * np.cos(2.0 * np.pi * d * k / n)) / k**2)
    sq += (2.0 - 2.0 * math.cos(math.pi * d)) / n**2
    return math.sqrt(sq)


def g_function(d, n: int):
    """g(d) = sum_{k<N/2} cos(2 pi d k / N)/k^2 + cos(pi d)/N^2 on [0, N]."""
    n = check_grid_size(n)
    d_arr = np.asarray(d, dtype=float)
    if np.any(d_arr < 0) or np.any(d_arr > n):
        raise OutOfDomainError(f"g is defined on [0, {n}]")
    k = np.arange(1, n // 2, dtype=float)
    vals = np.cos(2.0 * np.pi * np.multiply.outer(d_arr, k) / n) @ (1.0 / k**2)
    vals = vals + np.cos(np.pi * d_arr) / n**2
    return float(vals) if d_arr.ndim == 0 else vals


def g_offset(n: int) -> float:
    """sum_{k<N/2} 1/k^2 + 1/N^2, so that F(eta_{0,d})^2 = 2 offset - 2 g(d)."""
    k = np.arange(1, n // 2, dtype=float)
    return float(np.sum(1.0 / k**2) + 1.0 / n**2)


def upper_tight_bound(n: int, theta: float) -> tuple[float, int]:
    """C_U(theta) = theta * max_d F(eta_{0,d}); ties go to the smaller d."""
    n = check_grid_size(n)
    theta = _check_theta(theta)
    values = np.array([dipole_discrepancy(d, n) for d in range(1, n)])
    best = int(np.argmax(values))  # first maximum, i.e. smallest d
    return theta * float(values[best]), best + 1


def conjectured_upper_bound(n: int, theta: float) -> float:
    """theta * F(eta_{0,N/2}), the value C_U takes if d = N/2 maximises."""
    n = check_grid_size(n)
    theta = _check_theta(theta)
    k = np.arange(1, n // 2)
    sq = np.sum((2.0 - 2.0 * (-1.0) ** k) / k.astype(float) ** 2)
    sq += (2.0 - 2.0 * (-1.0) ** (n // 2)) / n**2
    return theta * math.sqrt(sq)


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    d_star: int
    g_min: float
    conjecture_holds: bool
    formula_matches: bool
    dense_d_star: float | None = None


def _scan_one(n: int, dense: bool) -> ConjectureRow:
    ds = np.arange(1, n)
    g = g_function(ds, n)
    best = int(np.argmin(g))  # ties go to the smaller d
    c_upper, _ = upper_tight_bound(n, 1.0)
    dense_star = None
    if dense:
        grid = np.arange(0, 1000 * n + 1) / 1000.0
        dense_star = float(grid[int(np.argmin(g_function(grid, n)))])
    return ConjectureRow(
        n=n,
        d_star=int(ds[best]),
        g_min=float(g[best]),
        conjecture_holds=bool(ds[best] == n // 2),
        formula_matches=abs(conjectured_upper_bound(n, 1.0) - c_upper) <= BOUND_TOL,
        dense_d_star=dense_star,
    )


def conjecture_scan(n_max: int, dense: bool = False, n_min: int = 4) -> list[ConjectureRow]:
    """Check, for each even N in [n_min, n_max], whether d = N/2 minimises g."""
    if n_max < 4 or n_max % 2 or n_min < 2 or n_min % 2 or n_min > n_max:
        raise BadRangeError(f"need even 4 <= n_max and even 2 <= n_min <= n_max, got {n_min}..{n_max}")
    sizes = range(n_min, n_max + 1, 2)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        return list(pool.map(lambda n: _scan_one(n, dense), sizes))


def conjecture_csv(rows) -> str:
    lines = ["N,d_star,g_min,conjecture_holds"]
    lines += [f"{r.n},{r.d_star},{r.g_min:.17g},{str(r.conjecture_holds).lower()}" for r in rows]
    return "\n".join(lines) + "\n"


# --- reports and audits ------------------------------------------------------


@dataclass(frozen=True)
class TightBoundReport:
    n: int
    theta: float
    c_lower: float
    lower_mu: ProbabilityMeasure
    lower_nu: ProbabilityMeasure
    c_upper: float
    d_star: int
    conjecture_holds_at_n: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "theta": self.theta,
            "c_lower": self.c_lower,
            "lower_mu": self.lower_mu.weights.tolist(),
            "lower_nu": self.lower_nu.weights.tolist(),
            "c_upper": self.c_upper,
            "d_star": self.d_star,
            "conjecture_holds_at_n": self.conjecture_holds_at_n,
        }


def tight_bound_report(n: int, theta: float) -> TightBoundReport:
    c_lower, mu, nu = lower_tight_bound(n, theta)
    c_upper, d_star = upper_tight_bound(n, theta)
    row = _scan_one(check_grid_size(n), dense=False)
    return TightBoundReport(
        n=n,
        theta=theta,
        c_lower=c_lower,
        lower_mu=mu,
        lower_nu=nu,
        c_upper=c_upper,
        d_star=d_star,
        conjecture_holds_at_n=row.conjecture_holds,
    )


def random_bound_audit(n: int, theta: float, samples: int, seed: int, extra=()):
    """Envelope (min F, max F) over random pairs lifted to TV = theta.

    ``extra`` holds additional null-sum directions to include (for instance
    the known extremisers). Raises ArithmeticError if any sample escapes
    [C_L(theta), C_U(theta)].
    """
    n = check_grid_size(n)
    theta = _check_theta(theta)
    if samples < 1:
        raise BadRangeError("samples must be >= 1")
    c_lower = 2.0 * theta / n
    c_upper, _ = upper_tight_bound(n, theta)
    rng = np.random.default_rng(seed)
    deltas = list(random_null_sum(n, rng, size=samples)) + [as_vector(e) for e in extra]
    values = []
    for delta in deltas:
        mu, nu, _ = lift_to_pair(delta, theta)
        f = float(fourier_discrepancy(mu, nu))
        if not c_lower - BOUND_TOL <= f <= c_upper + BOUND_TOL:
            raise ArithmeticError(f"F={f} outside [{c_lower}, {c_upper}] for delta={delta}")
        values.append(f)
    return min(values), max(values)
