"""DFT of grid measures, the frequency weights and the circulant kernel.

Conventions: ``X_k = sum_j x_j exp(-2 pi i j k / N)``; frequency indices are
taken mod N. Every transform acts on the last axis, so batches of shape
``(m, N)`` are handled in one call.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import FdiscError, NotHermitianError, OddSizeError, SizeMismatchError
from .measures import check_grid_size

HERMITIAN_TOL = 1e-6


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _checked(values, dtype=float) -> np.ndarray:
    x = np.asarray(values, dtype=dtype)
    if x.ndim == 0:
        raise FdiscError("expected a vector")
    n = x.shape[-1]
    if n < 2 or n % 2:
        raise OddSizeError(f"length must be even and >= 2, got {n}")
    return x


@lru_cache(maxsize=32)
def dft_matrix(n: int) -> np.ndarray:
    """Omega[k, j] = exp(-2 pi i j k / n), with j*k reduced mod n first."""
    idx = np.arange(n)
    m = np.exp(-2j * np.pi * (np.outer(idx, idx) % n) / n)
    m.setflags(write=False)
    return m


def dft_naive(values) -> np.ndarray:
    """O(N^2) reference transform straight from the definition."""
    x = np.asarray(values, dtype=complex)
    return x @ dft_matrix(x.shape[-1]).T


@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft_radix2(values) -> np.ndarray:
    """Iterative decimation-in-time radix-2 FFT; length must be a power of two."""
    x = np.asarray(values, dtype=complex)
    n = x.shape[-1]
    if not is_power_of_two(n):
        raise FdiscError(f"radix-2 FFT needs a power-of-two length, got {n}")
    lead = x.shape[:-1]
    a = x[..., _bit_reversal(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = a.reshape(*lead, n // size, size)
        even = blocks[..., :half]
        odd = blocks[..., half:] * twiddle
        a = np.concatenate([even + odd, even - odd], axis=-1).reshape(*lead, n)
        size *= 2
    return a


def dft(values) -> np.ndarray:
    """Spectrum of a real (or complex) vector; radix-2 path for power-of-two N."""
    x = _checked(values, dtype=complex)
    if is_power_of_two(x.shape[-1]):
        return fft_radix2(x)
    return dft_naive(x)


def hermitian_defect(spectrum) -> float:
    """max_k |X_k - conj(X_{N-k})|."""
    s = np.asarray(spectrum, dtype=complex)
    mirrored = np.roll(s[..., ::-1], 1, axis=-1)
    return float(np.max(np.abs(s - np.conj(mirrored)))) if s.size else 0.0


def idft(spectrum) -> np.ndarray:
    """Real inverse of a Hermitian spectrum."""
    s = _checked(spectrum, dtype=complex)
    defect = hermitian_defect(s)
    if defect > HERMITIAN_TOL:
        raise NotHermitianError(f"spectrum is not Hermitian (defect {defect:.3g})")
    n = s.shape[-1]
    return np.real(np.conj(dft(np.conj(s)))) / n


def weight_b(n: int) -> np.ndarray:
    """b = 1/2 (1, 1^-2, ..., (N/2-1)^-2, 2/N^2, (N/2-1)^-2, ..., 1^-2)."""
    n = check_grid_size(n)
    k = np.arange(n)
    fold = np.minimum(k, n - k).astype(float)
    b = np.empty(n)
    b[0] = 0.5
    b[1:] = 0.5 / fold[1:] ** 2
    b[n // 2] = 1.0 / n**2
    return b


def weight_beta(n: int) -> np.ndarray:
    """beta = (0, 1^2, ..., (N/2-1)^2, N^2/2, (N/2-1)^2, ..., 1^2)."""
    n = check_grid_size(n)
    k = np.arange(n)
    beta = np.minimum(k, n - k).astype(float) ** 2
    beta[n // 2] = n**2 / 2.0
    return beta


@lru_cache(maxsize=64)
def _kernel(n: int) -> np.ndarray:
    full = dft_naive(weight_b(n))
    imag = float(np.max(np.abs(full.imag)))
    if imag > 1e-12:
        raise FdiscError(f"kernel not real for N={n}: |imag| = {imag:.3g}")
    # exact mirror symmetry so that H == H.T bit for bit
    bhat = 0.5 * (full.real + full.real[(-np.arange(n)) % n])
    bhat.setflags(write=False)
    return bhat


def circulant_kernel(n: int) -> np.ndarray:
    """Real DFT of ``weight_b(n)``; H[l, j] = bhat[(j - l) mod N]."""
    return _kernel(check_grid_size(n))


def h_matrix(n: int) -> np.ndarray:
    """Dense symmetric circulant H, for inspection and small N."""
    bhat = circulant_kernel(n)
    idx = np.arange(n)
    return bhat[(idx[None, :] - idx[:, None]) % n]


def apply_h(delta, n: int | None = None, method: str = "auto") -> np.ndarray:
    """Matrix-free product H @ delta along the last axis.

    ``method="direct"`` sums over the circulant rows; ``"fft"`` multiplies by
    the eigenvalues N*b in frequency space. ``"auto"`` uses the FFT route
    for power-of-two N. Passing ``n`` checks the vector length against it.
    """
    d = np.asarray(delta, dtype=float)
    size = d.shape[-1] if d.ndim else 0
    if n is not None and size != n:
        raise SizeMismatchError(f"vector of length {size} vs kernel size {n}")
    n = check_grid_size(size)
    if method == "auto":
        method = "fft" if is_power_of_two(n) else "direct"
    if method == "direct":
        return d @ h_matrix(n).T
    if method == "fft":
        return idft(dft(d) * eigenvalues_h(n))
    raise ValueError(f"unknown method {method!r}")


def eigenvalues_h(n: int) -> np.ndarray:
    """Eigenvalues N*b_k of H, in frequency order (eigenvector omega_k)."""
    return n * weight_b(n)


def omega(k: int, n: int) -> np.ndarray:
    """Basis vector omega_k = (exp(2 pi i k j / N))_j."""
    j = np.arange(n)
    return np.exp(2j * np.pi * ((k * j) % n) / n)

