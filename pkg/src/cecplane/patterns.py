"""Ordinal pattern symbolization of univariate time series.

A window of ``dim`` values spaced ``delay`` samples apart is replaced by the
permutation describing the relative ordering of its entries (Bandt-Pompe
encoding).  Counting pattern occurrences along a series yields an ordinal
pattern probability distribution, the input to all downstream quantifiers.

Conventions used throughout:

* A window handed to :func:`encode_window` is chronological: ``window[k]`` is
  the value at lag offset ``(dim - 1 - k) * delay`` behind the window's final
  sample, i.e. ``window = (x[s-(D-1)t], ..., x[s-t], x[s])``.
* The encoded permutation ``(r0, ..., r_{D-1})`` lists lag offsets from the
  largest value (``r0``) down to the smallest (``r_{D-1}``); equal values are
  ordered so that the later entry carries the smaller offset (``r_i < r_{i-1}``
  whenever the two values tie).  This makes the encoding total and
  deterministic, with no randomization of ties.
* Patterns are identified by the lexicographic rank of the permutation tuple,
  an integer in ``[0, D! - 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "TimeSeries",
    "OrdinalConfig",
    "PatternId",
    "PatternDistribution",
    "encode_window",
    "extract_pattern_distribution",
    "naive_pattern_oracle",
    "permutation_to_index",
    "index_to_permutation",
]

# D! must stay addressable with exact 64-bit integer counts.
MAX_DIM = 12

# Relative tolerance for the evenly-spaced-timestamps check.
_GRID_RTOL = 1e-9


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"{name} contains a non-finite value at position {bad}")
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """An evenly spaced sequence of finite real observations.

    ``timestamps``, when present, must be strictly increasing with constant
    spacing.  Both arrays are frozen after construction so instances can be
    shared freely across threads.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None

    def __post_init__(self):
        values = _as_float_array(self.values, "values")
        if values.size < 1:
            raise ValueError("series must contain at least one observation")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if self.timestamps is not None:
            ts = _as_float_array(self.timestamps, "timestamps")
            if ts.size != values.size:
                raise ValueError("timestamps and values must have equal length")
            if ts.size > 1:
                gaps = np.diff(ts)
                if not (gaps > 0).all():
                    raise ValueError("timestamps must be strictly increasing")
                ref = gaps[0]
                if np.abs(gaps - ref).max() > _GRID_RTOL * max(abs(ref), 1.0):
                    raise ValueError("timestamps must be evenly spaced")
            ts.flags.writeable = False
            object.__setattr__(self, "timestamps", ts)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class OrdinalConfig:
    """Embedding dimension (pattern length) and delay for symbolization."""

    dim: int = 4
    delay: int = 1

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim!r}")
        if self.dim > MAX_DIM:
            raise ValueError(f"dim must be <= {MAX_DIM} so that dim! stays countable exactly")
        if not isinstance(self.delay, int) or self.delay < 1:
            raise ValueError(f"delay must be an integer >= 1, got {self.delay!r}")

    @property
    def num_patterns(self) -> int:
        """Number of distinct ordinal patterns, dim factorial."""
        return math.factorial(self.dim)

    def windows_in(self, series_len: int) -> int:
        """Number of ordinal windows a series of the given length admits."""
        return series_len - (self.dim - 1) * self.delay


def permutation_to_index(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of ``0..D-1`` (Lehmer code)."""
    d = len(perm)
    rank = 0
    for i in range(d):
        smaller_after = sum(1 for j in range(i + 1, d) if perm[j] < perm[i])
        rank += smaller_after * math.factorial(d - 1 - i)
    return rank


def index_to_permutation(index: int, dim: int) -> tuple[int, ...]:
    """Inverse of :func:`permutation_to_index`."""
    if not 0 <= index < math.factorial(dim):
        raise ValueError(f"index {index} out of range for dim={dim}")
    remaining = list(range(dim))
    out = []
    for i in range(dim):
        f = math.factorial(dim - 1 - i)
        pos, index = divmod(index, f)
        out.append(remaining.pop(pos))
    return tuple(out)


@dataclass(frozen=True)
class PatternId:
    """A single ordinal pattern: the permutation and its lexicographic rank."""

    permutation: tuple[int, ...]
    index: int

    def __post_init__(self):
        d = len(self.permutation)
        if sorted(self.permutation) != list(range(d)):
            raise ValueError(f"{self.permutation} is not a permutation of 0..{d - 1}")
        if self.index != permutation_to_index(self.permutation):
            raise ValueError(
                f"index {self.index} does not match permutation {self.permutation}"
            )

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "PatternId":
        perm = tuple(int(p) for p in perm)
        return cls(perm, permutation_to_index(perm))

    @classmethod
    def from_index(cls, index: int, dim: int) -> "PatternId":
        return cls(index_to_permutation(index, dim), index)

    @property
    def dim(self) -> int:
        return len(self.permutation)


@dataclass(frozen=True)
class PatternDistribution:
    """Ordinal pattern counts and the probability vector they induce.

    ``counts`` holds exact integer occurrence counts for the observed
    patterns; probabilities are formed on demand as ``count / sample_count``
    so no rounding accumulates during counting.
    """

    config: OrdinalConfig
    counts: Mapping[PatternId, int]
    sample_count: int
    _probs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")
        total = sum(self.counts.values())
        if total != self.sample_count:
            raise ValueError(
                f"counts sum to {total}, expected sample_count={self.sample_count}"
            )
        probs = np.zeros(self.config.num_patterns)
        for pid, count in self.counts.items():
            if count < 0:
                raise ValueError("counts must be nonnegative")
            probs[pid.index] = count / self.sample_count
        probs.flags.writeable = False
        object.__setattr__(self, "_probs", probs)

    @property
    def probabilities(self) -> np.ndarray:
        """Dense probability vector over all ``dim!`` patterns (zeros included)."""
        return self._probs


def _encode_starts(values: np.ndarray, config: OrdinalConfig) -> np.ndarray:
    """Pattern index for every admissible window start of ``values``.

    Entry ``t`` encodes the window whose final sample sits at
    ``t + (dim-1)*delay``.  Vectorized: a strided embedding matrix is rank
    coded per row with a stable sort, which realizes the deterministic tie
    rule (equal values ordered by ascending lag offset).
    """
    d, tau = config.dim, config.delay
    n_windows = config.windows_in(values.size)
    # Column j holds the value at lag offset j behind each window's last sample.
    emb = np.empty((n_windows, d))
    for j in range(d):
        start = (d - 1 - j) * tau
        emb[:, j] = values[start:start + n_windows]
    chain = np.argsort(emb, axis=1, kind="stable")  # offsets by ascending value
    perm = chain[:, ::-1]  # (r0, ..., r_{D-1}): largest value first
    # Lexicographic rank via the Lehmer code, vectorized over windows.
    codes = np.zeros(n_windows, dtype=np.int64)
    for i in range(d - 1):
        smaller_after = (perm[:, i + 1:] < perm[:, i:i + 1]).sum(axis=1)
        codes += smaller_after.astype(np.int64) * math.factorial(d - 1 - i)
    return codes


def encode_window(window, config: OrdinalConfig) -> PatternId:
    """Encode one chronological window of ``dim`` values into its pattern.

    Raises ValueError on a length mismatch or non-finite entries.
    """
    arr = _as_float_array(window, "window")
    if arr.size != config.dim:
        raise ValueError(f"window has {arr.size} values, config requires {config.dim}")
    # The window is already materialized, so its effective delay is 1.
    code = int(_encode_starts(arr, OrdinalConfig(config.dim, 1))[0])
    return PatternId.from_index(code, config.dim)


def _distribution_from_codes(codes: np.ndarray, config: OrdinalConfig) -> PatternDistribution:
    observed, occurrences = np.unique(codes, return_counts=True)
    counts = {
        PatternId.from_index(int(code), config.dim): int(count)
        for code, count in zip(observed, occurrences)
    }
    return PatternDistribution(config, counts, int(codes.size))


def extract_pattern_distribution(series: TimeSeries, config: OrdinalConfig) -> PatternDistribution:
    """Count every ordinal pattern along the series and normalize.

    The series must admit at least one window: ``len(series)`` greater than
    ``(dim-1)*delay``.
    """
    n_windows = config.windows_in(len(series))
    if n_windows < 1:
        raise ValueError(
            f"series of length {len(series)} too short for dim={config.dim}, "
            f"delay={config.delay} (needs at least {(config.dim - 1) * config.delay + 1})"
        )
    codes = _encode_starts(series.values, config)
    return _distribution_from_codes(codes, config)


def naive_pattern_oracle(series: TimeSeries, config: OrdinalConfig) -> PatternDistribution:
    """Reference implementation by explicit window materialization.

    Every window is sorted with plain Python and pattern ranks come from an
    enumerated permutation table, independent of the vectorized path.  Only
    meant for tests and small ``dim``.
    """
    d, tau = config.dim, config.delay
    n_windows = config.windows_in(len(series))
    if n_windows < 1:
        raise ValueError(
            f"series of length {len(series)} too short for dim={d}, delay={tau}"
        )
    rank_of = {perm: i for i, perm in enumerate(permutations(range(d)))}
    values = series.values
    counts: dict[PatternId, int] = {}
    for t in range(n_windows):
        last = t + (d - 1) * tau
        # (value, lag) pairs sorted ascending; equal values fall back to the
        # smaller lag offset, which is exactly the deterministic tie rule.
        by_value = sorted((values[last - j * tau], j) for j in range(d))
        perm = tuple(j for _, j in reversed(by_value))
        pid = PatternId(perm, rank_of[perm])
        counts[pid] = counts.get(pid, 0) + 1
    return PatternDistribution(config, counts, n_windows)
