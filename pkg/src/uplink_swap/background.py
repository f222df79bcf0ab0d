"""Stray-photon and dark-count statistics for the four bucket detectors."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .patterns import N_DETECTORS, N_PATTERNS, DetectorPatternDistribution, pattern_bits

Regime = Literal["day", "night"]


@dataclass(frozen=True)
class RadianceModel:
    """Earth-shine seen by the receiver telescope.

    ``receiver_area_m2`` may be left as None, in which case the aperture of
    the scenario's telescope is used.
    """

    spectral_radiance: float  # photons / (s m^2 sr nm)
    fov_sr: float
    filter_bandwidth_nm: float
    optical_efficiency: float
    receiver_area_m2: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("spectral_radiance", "fov_sr", "filter_bandwidth_nm", "optical_efficiency"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} >= 0 violated")
        if self.receiver_area_m2 is not None and not self.receiver_area_m2 >= 0:
            raise ValueError("receiver_area_m2 >= 0 violated")


@dataclass(frozen=True)
class BackgroundEnv:
    regime: Regime
    rate_per_detector_hz: float
    dark_count_rate_hz: float

    def __post_init__(self) -> None:
        if self.rate_per_detector_hz < 0 or self.dark_count_rate_hz < 0:
            raise ValueError("background rates must be >= 0")

    @property
    def total_rate_hz(self) -> float:
        return self.rate_per_detector_hz + self.dark_count_rate_hz


@dataclass(frozen=True)
class BackgroundParams:
    """Day and night stray rates per detector; a radiance model overrides the direct rate."""

    regime: Regime = "night"
    night_rate_hz: float = 1.6e3
    day_rate_hz: float = 1.6e9
    dark_count_rate_hz: float = 100.0
    night_radiance: Optional[RadianceModel] = None
    day_radiance: Optional[RadianceModel] = None

    def __post_init__(self) -> None:
        if self.regime not in ("day", "night"):
            raise ValueError(f"regime must be 'day' or 'night', got {self.regime!r}")
        for name in ("night_rate_hz", "day_rate_hz", "dark_count_rate_hz"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} >= 0 violated")

    def environment(self, aperture_radius_m: float) -> BackgroundEnv:
        model = self.day_radiance if self.regime == "day" else self.night_radiance
        if model is not None:
            rate = stray_rate(model, aperture_radius_m)
        else:
            rate = self.day_rate_hz if self.regime == "day" else self.night_rate_hz
        return BackgroundEnv(self.regime, rate, self.dark_count_rate_hz)


def stray_rate(m: RadianceModel, aperture_radius_m: Optional[float] = None) -> float:
    """Stray-photon rate per detector, with the collected flux split evenly over four detectors."""
    area = m.receiver_area_m2
    if area is None:
        if aperture_radius_m is None:
            raise ValueError("receiver area unknown: set receiver_area_m2 or pass an aperture radius")
        area = math.pi * aperture_radius_m**2
    total = m.spectral_radiance * area * m.fov_sr * m.filter_bandwidth_nm * m.optical_efficiency
    return total / N_DETECTORS


def stray_count_pmf(rate_hz: float, window_s: float, n: int) -> float:
    """Poisson probability of ``n`` stray photons on one detector within the window."""
    if rate_hz < 0 or not window_s > 0 or n < 0:
        raise ValueError("need rate >= 0, window > 0 and n >= 0")
    mu = rate_hz * window_s
    if mu == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(mu) - mu - math.lgamma(n + 1))


def detector_click_prob(rate_hz: float, dark_hz: float, window_s: float) -> float:
    """Probability of at least one background count (threshold detector)."""
    if rate_hz < 0 or dark_hz < 0 or not window_s > 0:
        raise ValueError("need rates >= 0 and window > 0")
    return -math.expm1(-(rate_hz + dark_hz) * window_s)


def background_pattern_prob(d: Sequence[int], p: Sequence[float]) -> float:
    """Probability that background alone produces click pattern ``d``."""
    if len(d) != N_DETECTORS or len(p) != N_DETECTORS:
        raise ValueError("need four detector bits and four click probabilities")
    out = 1.0
    for di, pi in zip(d, p):
        if not 0 <= pi <= 1:
            raise ValueError("click probabilities must lie in [0, 1]")
        out *= pi if di else 1.0 - pi
    return out


def background_distribution(mean_counts: Sequence[float]) -> DetectorPatternDistribution:
    """Background pattern distribution from per-detector mean counts in the window.

    Working from the mean count keeps the no-click probability ``exp(-mu)``
    accurate even when ``1 - exp(-mu)`` rounds to 1 (daytime).
    """
    mu = np.asarray(mean_counts, dtype=float)
    if mu.shape != (N_DETECTORS,) or np.any(mu < 0):
        raise ValueError("need four non-negative mean counts")
    click = -np.expm1(-mu)
    quiet = np.exp(-mu)
    probs = np.ones(N_PATTERNS)
    for idx in range(N_PATTERNS):
        for i, bit in enumerate(pattern_bits(idx)):
            probs[idx] *= click[i] if bit else quiet[i]
    return DetectorPatternDistribution(probs)
