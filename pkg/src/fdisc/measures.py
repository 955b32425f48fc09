"""Discrete measures on the uniform grid {0, 1/N, ..., (N-1)/N}.

Probability measures, null-sum (signed, zero-mass) measures and dipoles,
plus the lifting of a null-sum direction to a pair of probability measures
at a prescribed total variation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    FdiscError,
    IndexOutOfRangeError,
    MassMismatchError,
    NegativeWeightError,
    OddSizeError,
    SizeMismatchError,
    ThetaOutOfRangeError,
    ZeroDeltaError,
)

MASS_TOL = 1e-9
NEG_TOL = 1e-12


def check_grid_size(n) -> int:
    """Return ``n`` as an int, raising OddSizeError unless it is even and >= 2."""
    if int(n) != n or n < 2 or int(n) % 2:
        raise OddSizeError(f"grid size must be an even integer >= 2, got {n}")
    return int(n)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ProbabilityMeasure:
    """Nonnegative weights on I_N summing to one.

    Construction validates; weights within ``MASS_TOL`` of unit mass are
    renormalized exactly, entries in [-1e-12, 0) are clipped to zero.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).ravel()
        check_grid_size(w.size)
        if not np.all(np.isfinite(w)):
            raise FdiscError("weights must be finite")
        bad = np.flatnonzero(w < -NEG_TOL)
        if bad.size:
            raise NegativeWeightError(f"negative weight {w[bad[0]]!r} at index {bad[0]}")
        w = np.clip(w, 0.0, None)
        total = w.sum()
        if abs(total - 1.0) > MASS_TOL:
            raise MassMismatchError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "weights", _frozen(w / total))

    @property
    def n(self) -> int:
        return self.weights.size

    def __len__(self):
        return self.weights.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    def __repr__(self):
        return f"ProbabilityMeasure({np.array2string(self.weights, precision=6)})"


@dataclass(frozen=True, eq=False)
class NullSumMeasure:
    """Signed weights on I_N with zero total mass (a difference mu - nu)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise FdiscError("empty measure")
        if not np.all(np.isfinite(v)):
            raise FdiscError("values must be finite")
        # tolerance scales with the magnitude so that c * delta stays valid
        scale = max(1.0, float(np.abs(v).sum()))
        if abs(v.sum()) > MASS_TOL * scale:
            raise MassMismatchError(f"null-sum measure has mass {v.sum()!r}")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __mul__(self, c):
        return NullSumMeasure(float(c) * self.values)

    __rmul__ = __mul__

    def __repr__(self):
        return f"NullSumMeasure({np.array2string(self.values, precision=6)})"


@dataclass(frozen=True)
class DipoleMeasure:
    """The measure delta_i - delta_j."""

    i: int
    j: int
    n: int = field(default=None)

    def __post_init__(self):
        if self.n is not None:
            check_grid_size(self.n)
            for idx in (self.i, self.j):
                if not 0 <= idx < self.n:
                    raise IndexOutOfRangeError(f"index {idx} outside 0..{self.n - 1}")
        if self.i == self.j:
            raise FdiscError("dipole endpoints must differ")

    def dense(self, n: int | None = None) -> NullSumMeasure:
        n = self.n if n is None else check_grid_size(n)
        if n is None:
            raise FdiscError("grid size required")
        if not (0 <= self.i < n and 0 <= self.j < n):
            raise IndexOutOfRangeError(f"dipole ({self.i}, {self.j}) outside grid of size {n}")
        v = np.zeros(n)
        v[self.i] = 1.0
        v[self.j] = -1.0
        return NullSumMeasure(v)


def as_vector(x) -> np.ndarray:
    """Plain float array view of a measure or array-like."""
    return np.asarray(x, dtype=float)


def same_size(a, b):
    a, b = as_vector(a), as_vector(b)
    if a.shape[-1] != b.shape[-1]:
        raise SizeMismatchError(f"size mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return a, b


def new_probability(weights) -> ProbabilityMeasure:
    return ProbabilityMeasure(weights)


def dirac(k: int, n: int) -> ProbabilityMeasure:
    n = check_grid_size(n)
    if not 0 <= k < n:
        raise IndexOutOfRangeError(f"index {k} outside 0..{n - 1}")
    w = np.zeros(n)
    w[k] = 1.0
    return ProbabilityMeasure(w)


def uniform(n: int) -> ProbabilityMeasure:
    n = check_grid_size(n)
    return ProbabilityMeasure(np.full(n, 1.0 / n))


def diff(mu, nu) -> NullSumMeasure:
    """mu - nu as a null-sum measure."""
    a, b = same_size(mu, nu)
    return NullSumMeasure(a - b)


def jordan_split(delta) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative parts (both nonnegative, disjoint supports)."""
    d = as_vector(delta)
    return np.maximum(d, 0.0), np.maximum(-d, 0.0)


def lift_to_pair(delta, theta: float):
    """Scale ``delta`` to total variation ``theta`` and realise it as mu - nu.

    Returns ``(mu, nu, c)`` with ``mu - nu == c * delta``; the unused mass
    ``1 - theta`` sits at index 0 in both measures.
    """
    if not 0.0 < theta <= 1.0:
        raise ThetaOutOfRangeError(f"theta must lie in (0, 1], got {theta}")
    d = as_vector(delta)
    tv = 0.5 * np.abs(d).sum()
    if tv == 0.0:
        raise ZeroDeltaError("cannot lift the zero measure")
    c = theta / tv
    pos, neg = jordan_split(c * d)
    pos[0] += 1.0 - theta
    neg[0] += 1.0 - theta
    return ProbabilityMeasure(pos), ProbabilityMeasure(neg), c


def random_probability(n: int, seed: int) -> ProbabilityMeasure:
    n = check_grid_size(n)
    w = np.random.default_rng(seed).uniform(0.0, 1.0, n)
    return ProbabilityMeasure(w / w.sum())


def random_null_sum(n: int, rng: np.random.Generator, size=None) -> np.ndarray:
    """Full-support null-sum samples: uniform(-1, 1) entries minus their mean."""
    shape = (n,) if size is None else (size, n)
    d = rng.uniform(-1.0, 1.0, shape)
    return d - d.mean(axis=-1, keepdims=True)


# --- measure files -------------------------------------------------------


class MeasureParseError(FdiscError):
    pass


def parse_measure_text(text: str) -> tuple[np.ndarray, list[int]]:
    """Parse a measure file body into (values, source line numbers).

    Accepts either a JSON array or one decimal value per line with
    '#'-prefixed comment lines and blank lines ignored.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MeasureParseError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(data, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in data
        ):
            raise MeasureParseError("line 1: JSON input must be an array of numbers")
        return np.array(data, dtype=float), [1] * len(data)
    values, lines = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise MeasureParseError(f"line {lineno}: cannot parse {line!r} as a number") from None
        lines.append(lineno)
    return np.array(values, dtype=float), lines


def _read(path) -> tuple[np.ndarray, list[int]]:
    return parse_measure_text(Path(path).read_text(encoding="utf-8"))


def load_probability(path) -> ProbabilityMeasure:
    """Read a measure file and validate it as a probability measure."""
    values, lines = _read(path)
    neg = np.flatnonzero(values < -NEG_TOL)
    if neg.size:
        raise NegativeWeightError(
            f"{path}: line {lines[neg[0]]}: negative weight {values[neg[0]]!r}"
        )
    try:
        return ProbabilityMeasure(values)
    except FdiscError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def load_null_sum(path) -> NullSumMeasure:
    values, _ = _read(path)
    try:
        check_grid_size(values.size)
        return NullSumMeasure(values)
    except FdiscError as exc:
        raise type(exc)(f"{path}: {exc}") from None
