"""Sliding-window evolution of plane coordinates along a series.

Window ``k`` covers samples ``[k*step, k*step + size)``; pattern vectors never
straddle a window edge, and trailing samples that cannot fill a window are
dropped.  Each window is mapped to its (H, C) point, yielding the temporal
trajectory of a series on the complexity-entropy plane.

The implementation encodes the full series once and slices the resulting
pattern-code stream per window: the code at stream position ``t`` depends
only on samples ``t .. t + (dim-1)*delay``, which lie inside window ``k``
exactly when ``t`` is one of the window's ``size - (dim-1)*delay`` admissible
starts.  Counting codes per slice therefore reproduces standalone per-window
extraction bit for bit while doing the sorting work only once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .patterns import OrdinalConfig, TimeSeries, _encode_starts
from .quantifiers import CecpPoint, cecp_point

__all__ = [
    "WindowParams",
    "RollingResult",
    "window_count",
    "rolling_quantifiers",
]


@dataclass(frozen=True)
class WindowParams:
    """Sliding-window geometry: samples per window and stride between starts."""

    size: int = 360
    step: int = 60

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise ValueError(f"size must be an integer >= 2, got {self.size!r}")
        if not isinstance(self.step, int) or self.step < 1:
            raise ValueError(f"step must be an integer >= 1, got {self.step!r}")


@dataclass(frozen=True)
class RollingResult:
    """Per-window plane points, aligned with their window start offsets."""

    asset: str
    window_starts: np.ndarray
    points: tuple[CecpPoint, ...]
    samples_per_window: int
    end_timestamps: np.ndarray | None = None

    def __post_init__(self):
        starts = np.asarray(self.window_starts, dtype=np.int64)
        if starts.size != len(self.points):
            raise ValueError("window_starts and points must have equal length")
        if starts.size > 1:
            strides = np.diff(starts)
            if not (strides > 0).all() or strides.min() != strides.max():
                raise ValueError("window_starts must advance by a constant positive stride")
        starts.flags.writeable = False
        object.__setattr__(self, "window_starts", starts)
        if self.end_timestamps is not None and len(self.end_timestamps) != starts.size:
            raise ValueError("end_timestamps must align with window_starts")

    @property
    def entropies(self) -> np.ndarray:
        return np.array([p.entropy for p in self.points])

    @property
    def complexities(self) -> np.ndarray:
        return np.array([p.complexity for p in self.points])


def window_count(series_len: int, params: WindowParams) -> int:
    """Number of full windows: ``(series_len - size) // step + 1``."""
    if series_len < params.size:
        raise ValueError(
            f"series of length {series_len} shorter than one window of {params.size}"
        )
    return (series_len - params.size) // params.step + 1


def rolling_quantifiers(series: TimeSeries, params: WindowParams,
                        config: OrdinalConfig, asset: str = "") -> RollingResult:
    """Plane point of every full window of the series.

    A constant window is not an error: the tie rule maps it to a single
    pattern, hence to the plane origin (0, 0).
    """
    per_window = config.windows_in(params.size)
    if per_window < 1:
        raise ValueError(
            f"window size {params.size} admits no pattern at dim={config.dim}, "
            f"delay={config.delay}"
        )
    n_windows = window_count(len(series), params)
    codes = _encode_starts(series.values, config)
    m = config.num_patterns
    points = []
    for k in range(n_windows):
        start = k * params.step
        counts = np.bincount(codes[start:start + per_window], minlength=m)
        points.append(cecp_point(counts / per_window))
    starts = np.arange(n_windows, dtype=np.int64) * params.step
    ends = None
    if series.timestamps is not None:
        ends = series.timestamps[starts + params.size - 1].copy()
        ends.flags.writeable = False
    return RollingResult(
        asset=asset,
        window_starts=starts,
        points=tuple(points),
        samples_per_window=per_window,
        end_timestamps=ends,
    )
