"""Fourier loss L_nu(mu) = F(mu, nu)^2: value, gradient, Hessian and a
projected-gradient fit over the probability simplex."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .discrepancy import fourier_squared_delta
from .errors import FdiscError, StepSizeTooLargeError
from .measures import ProbabilityMeasure, check_grid_size, same_size
from .spectral import apply_h, circulant_kernel

DENSE_HESSIAN_MAX_N = 1024
CONVERGED_LOSS = 1e-10


def loss_value(mu, nu):
    a, b = same_size(mu, nu)
    return fourier_squared_delta(a - b)


def loss_gradient(mu, nu) -> np.ndarray:
    """grad_l = 2 sum_j (mu_j - nu_j) bhat[(j - l) mod N], i.e. 2 H (mu - nu)."""
    a, b = same_size(mu, nu)
    return 2.0 * apply_h(a - b)


def loss_hessian(n: int) -> np.ndarray:
    """Constant Hessian 2 * bhat[(h - l) mod N]; dense, so only for N <= 1024."""
    n = check_grid_size(n)
    if n > DENSE_HESSIAN_MAX_N:
        raise FdiscError(f"dense Hessian limited to N <= {DENSE_HESSIAN_MAX_N}; use apply_h")
    bhat = circulant_kernel(n)
    idx = np.arange(n)
    return 2.0 * bhat[(idx[:, None] - idx[None, :]) % n]


def project_simplex(v) -> ProbabilityMeasure:
    """Euclidean projection onto {w >= 0, sum w = 1} (sort and threshold)."""
    v = np.asarray(v, dtype=float)
    if np.all(v >= 0) and abs(v.sum() - 1.0) <= 1e-12:
        return ProbabilityMeasure(v)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ranks = np.arange(1, v.size + 1)
    rho = np.flatnonzero(u - css / ranks > 0)[-1]
    tau = css[rho] / (rho + 1)
    return ProbabilityMeasure(np.maximum(v - tau, 0.0))


@dataclass
class FitTrace:
    iterates: list[tuple[int, float]] = field(default_factory=list)
    final: ProbabilityMeasure | None = None
    converged: bool = False

    def to_csv(self) -> str:
        lines = ["step,loss"]
        lines += [f"{step},{loss:.17g}" for step, loss in self.iterates]
        return "\n".join(lines) + "\n"


def fit(target, init, steps: int = 1000, step_size: float | None = None,
        tol: float = CONVERGED_LOSS) -> FitTrace:
    """Projected gradient descent on L_target starting from ``init``.

    The default step 1/N is the reciprocal of the largest Hessian eigenvalue,
    which makes the loss non-increasing. Stops early once the loss is <= tol.
    Raises StepSizeTooLargeError (carrying the trace) if a step increases it.
    """
    target = np.asarray(target, dtype=float)
    mu = np.asarray(init, dtype=float)
    same_size(mu, target)
    n = check_grid_size(mu.size)
    if steps < 1:
        raise FdiscError("steps must be >= 1")
    if step_size is None:
        step_size = 1.0 / n
    if step_size <= 0:
        raise FdiscError("step_size must be positive")

    trace = FitTrace()
    loss = float(loss_value(mu, target))
    trace.iterates.append((0, loss))
    for step in range(1, steps + 1):
        if loss <= tol:
            break
        candidate = np.asarray(project_simplex(mu - step_size * loss_gradient(mu, target)))
        new_loss = float(loss_value(candidate, target))
        trace.iterates.append((step, new_loss))
        if new_loss > loss * (1 + 1e-12) + 1e-15:
            trace.final = ProbabilityMeasure(mu)
            raise StepSizeTooLargeError(
                f"step {step} increased the loss from {loss:.6g} to {new_loss:.6g}", trace
            )
        mu, loss = candidate, new_loss
    trace.final = ProbabilityMeasure(mu)
    trace.converged = loss <= tol
    return trace
