"""Fractional Brownian motion baselines for the complexity-entropy plane.

Fractional Gaussian noise (fGn) with Hurst exponent ``H_exp`` is synthesized
exactly in distribution by circulant embedding of its autocovariance

    gamma(k) = 0.5 * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})

(Davies-Harte); when the minimal embedding fails to be nonnegative definite
the generator falls back to exact sequential conditional sampling via the
Levinson-Durbin recursion (Hosking's method).  Cumulative sums of fGn give
fBm paths.  ``baseline_cloud`` summarizes the plane positions of many
independent paths, the reference crosses drawn alongside empirical
trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .patterns import OrdinalConfig, TimeSeries, extract_pattern_distribution
from .quantifiers import CecpPoint, cecp_point

__all__ = [
    "FbmSpec",
    "BaselineCloud",
    "fgn_autocovariance",
    "generate_fgn",
    "generate_fbm",
    "baseline_cloud",
]

# Eigenvalues of the embedding no more negative than this (relative to the
# largest) are treated as rounding noise and clipped to zero.
_EIG_RTOL = 1e-12


@dataclass(frozen=True)
class FbmSpec:
    """Hurst exponent, path length, and seed for one reproducible path."""

    hurst: float
    length: int
    seed: int

    def __post_init__(self):
        if not 0.0 < self.hurst < 1.0:
            raise ValueError(f"hurst must lie strictly inside (0, 1), got {self.hurst!r}")
        if not isinstance(self.length, int) or self.length < 2:
            raise ValueError(f"length must be an integer >= 2, got {self.length!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class BaselineCloud:
    """Mean and spread of plane positions over independent fBm paths."""

    hurst: float
    mean_point: CecpPoint
    std_entropy: float
    std_complexity: float
    sims: int

    def __post_init__(self):
        if self.sims < 1:
            raise ValueError("sims must be >= 1")
        if self.std_entropy < 0 or self.std_complexity < 0:
            raise ValueError("standard deviations must be nonnegative")


def fgn_autocovariance(hurst: float, lags) -> np.ndarray:
    """Exact fGn autocovariance ``gamma(k)`` at the given integer lags."""
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"hurst must lie strictly inside (0, 1), got {hurst!r}")
    k = np.abs(np.asarray(lags, dtype=np.float64))
    two_h = 2.0 * hurst
    return 0.5 * ((k + 1.0) ** two_h - 2.0 * k ** two_h + np.abs(k - 1.0) ** two_h)


def _fgn_circulant(gamma: np.ndarray, rng: np.random.Generator) -> np.ndarray | None:
    """Davies-Harte synthesis; ``None`` when the embedding is not admissible.

    ``gamma`` must hold autocovariances at lags ``0..n``.  The covariance is
    embedded in a circulant of size ``2n`` whose eigenvalues are the FFT of
    the wrapped first row; a Hermitian random spectrum with those variances
    transforms back to ``2n`` stationary Gaussian samples, of which the first
    ``n`` are returned.
    """
    n = gamma.size - 1
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # length 2n
    lam = np.fft.fft(row).real
    if lam.min() < -_EIG_RTOL * lam.max():
        return None
    lam = np.clip(lam, 0.0, None)
    size = 2 * n
    z = rng.standard_normal(size)
    w = np.empty(size, dtype=np.complex128)
    w[0] = math.sqrt(lam[0] / size) * z[0]
    w[n] = math.sqrt(lam[n] / size) * z[1]
    half = np.sqrt(lam[1:n] / (2.0 * size))
    w[1:n] = half * (z[2::2] + 1j * z[3::2])
    w[n + 1:] = np.conj(w[n - 1:0:-1])
    return np.fft.fft(w)[:n].real


def _fgn_conditional(gamma: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Hosking's sequential exact method, O(n^2).

    Each sample is drawn from its exact Gaussian conditional given all
    previous ones; the prediction coefficients are updated by the
    Levinson-Durbin recursion.
    """
    n = gamma.size - 1
    z = rng.standard_normal(n)
    x = np.empty(n)
    x[0] = math.sqrt(gamma[0]) * z[0]
    phi = np.empty(n)  # phi[:t] are the order-t prediction coefficients
    var = gamma[0]
    for t in range(1, n):
        kappa = (gamma[t] - phi[:t - 1] @ gamma[t - 1:0:-1]) / var
        # RHS is materialized before assignment; the reversed view aliases phi[:t-1].
        phi[:t - 1] = phi[:t - 1] - kappa * phi[:t - 1][::-1]
        phi[t - 1] = kappa
        var *= 1.0 - kappa * kappa
        x[t] = phi[:t] @ x[t - 1::-1] + math.sqrt(var) * z[t]
    return x


def generate_fgn(spec: FbmSpec, method: str = "auto") -> TimeSeries:
    """Fractional Gaussian noise of ``spec.length`` samples.

    ``method`` selects the synthesis route: ``"circulant"`` (error when the
    embedding is inadmissible), ``"conditional"``, or ``"auto"`` (circulant
    with conditional fallback).  Both routes are exact in distribution and
    consume the generator stream differently, so the same seed gives
    different — equally valid — paths per method.
    """
    if method not in ("auto", "circulant", "conditional"):
        raise ValueError(f"unknown method {method!r}")
    gamma = fgn_autocovariance(spec.hurst, np.arange(spec.length + 1))
    rng = np.random.default_rng(spec.seed)
    if method in ("auto", "circulant"):
        values = _fgn_circulant(gamma, rng)
        if values is not None:
            return TimeSeries(values)
        if method == "circulant":
            raise ValueError(
                f"circulant embedding not nonnegative definite for hurst={spec.hurst}, "
                f"length={spec.length}"
            )
    return TimeSeries(_fgn_conditional(gamma, rng))


def generate_fbm(spec: FbmSpec, method: str = "auto") -> TimeSeries:
    """Fractional Brownian motion path: cumulative sum of fGn, starting at
    the first increment (the implicit ``X_0 = 0`` is not emitted)."""
    return TimeSeries(np.cumsum(generate_fgn(spec, method=method).values))


def baseline_cloud(hurst: float, sims: int, length: int,
                   config: OrdinalConfig, seed: int) -> BaselineCloud:
    """Plane-position summary of ``sims`` independent fBm paths.

    Per-simulation seeds are derived from ``seed`` by index so the result is
    identical no matter how the simulations are scheduled.  Standard
    deviations are population (``ddof=0``): a single simulation has spread 0.
    """
    if sims < 1:
        raise ValueError(f"sims must be >= 1, got {sims}")
    if config.windows_in(length) < 1:
        raise ValueError(
            f"length {length} admits no ordinal window at dim={config.dim}, "
            f"delay={config.delay}"
        )
    child_seeds = np.random.SeedSequence(seed).generate_state(sims, dtype=np.uint64)
    entropies = np.empty(sims)
    complexities = np.empty(sims)
    for i in range(sims):
        path = generate_fbm(FbmSpec(hurst, length, int(child_seeds[i])))
        point = cecp_point(extract_pattern_distribution(path, config))
        entropies[i] = point.entropy
        complexities[i] = point.complexity
    return BaselineCloud(
        hurst=hurst,
        mean_point=CecpPoint(float(entropies.mean()), float(complexities.mean())),
        std_entropy=float(entropies.std()),
        std_complexity=float(complexities.std()),
        sims=sims,
    )
