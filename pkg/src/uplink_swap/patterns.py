"""Four-detector click patterns.

A pattern ``(d1, d2, d3, d4)`` is stored as the integer ``d1 d2 d3 d4`` read
in binary, so detector 1 is the most significant bit. Detectors 1-2 resolve
the left spatial mode and 3-4 the right one.
"""
from __future__ import annotations

from typing import Iterator, Sequence, Union

import numpy as np

N_DETECTORS = 4
N_PATTERNS = 16

Pattern = Union[int, Sequence[int]]


def pattern_index(d: Pattern) -> int:
    if isinstance(d, (int, np.integer)):
        idx = int(d)
    else:
        if len(d) != N_DETECTORS or any(b not in (0, 1) for b in d):
            raise ValueError(f"click pattern must be four bits, got {d!r}")
        idx = 0
        for b in d:
            idx = (idx << 1) | int(b)
    if not 0 <= idx < N_PATTERNS:
        raise ValueError(f"pattern index out of range: {idx}")
    return idx


def pattern_bits(idx: int) -> tuple[int, int, int, int]:
    return tuple((idx >> (N_DETECTORS - 1 - i)) & 1 for i in range(N_DETECTORS))  # type: ignore[return-value]


def detector_mask(i: int) -> int:
    """Bit mask of detector ``i`` (0-based)."""
    return 1 << (N_DETECTORS - 1 - i)


def submasks(m: int) -> Iterator[int]:
    """All patterns whose clicks are a subset of ``m``, including 0."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


# one click in each spatial mode
ACCEPTED_SIGNATURES = tuple(
    pattern_index(d) for d in ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))
)
REFERENCE_SIGNATURE = ACCEPTED_SIGNATURES[0]


class DetectorPatternDistribution:
    """Probability mass over the 16 click patterns."""

    __slots__ = ("probs",)

    def __init__(self, probs: Sequence[float]) -> None:
        arr = np.array(probs, dtype=float)
        if arr.shape != (N_PATTERNS,):
            raise ValueError("need exactly 16 pattern probabilities")
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise ValueError("pattern probabilities must be finite and >= 0")
        if abs(arr.sum() - 1.0) > 1e-12:
            raise ValueError(f"pattern probabilities sum to {arr.sum()!r}, not 1")
        arr.setflags(write=False)
        self.probs = arr

    def __getitem__(self, d: Pattern) -> float:
        return float(self.probs[pattern_index(d)])

    def __repr__(self) -> str:
        nz = {pattern_bits(i): round(float(p), 6) for i, p in enumerate(self.probs) if p}
        return f"DetectorPatternDistribution({nz})"
