"""Gaussian photon wavepackets, time gating and mode-mismatch fidelity.

Positions are in metres along the propagation axis (``x = c t``). The
detector clock zero is the nominal arrival of packet 1; packet 2 is displaced
by the clock offset ``delta_t``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateWindowError
from .quadrature import quad

SPEED_OF_LIGHT = 299_792_458.0

GATING_FLOOR = 1e-12


@dataclass(frozen=True)
class WavepacketSpec:
    center_m: float
    temporal_width_s: float
    wavelength_m: float

    def __post_init__(self) -> None:
        if not self.temporal_width_s > 0:
            raise ValueError("temporal_width_s > 0 violated")
        if not self.wavelength_m > 0:
            raise ValueError("wavelength_m > 0 violated")

    @classmethod
    def arriving_at(cls, time_s: float, temporal_width_s: float, wavelength_m: float) -> "WavepacketSpec":
        return cls(SPEED_OF_LIGHT * time_s, temporal_width_s, wavelength_m)

    @property
    def sigma_m(self) -> float:
        return SPEED_OF_LIGHT * self.temporal_width_s

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength_m


@dataclass(frozen=True)
class GatingWindow:
    open_s: float
    close_s: float

    def __post_init__(self) -> None:
        if not self.close_s > self.open_s:
            raise ValueError("gating window needs close_s > open_s")

    @classmethod
    def centered(cls, center_s: float, length_s: float) -> "GatingWindow":
        return cls(center_s - 0.5 * length_s, center_s + 0.5 * length_s)

    @property
    def length_s(self) -> float:
        return self.close_s - self.open_s

    @property
    def bounds_m(self) -> tuple[float, float]:
        return SPEED_OF_LIGHT * self.open_s, SPEED_OF_LIGHT * self.close_s


@dataclass(frozen=True)
class MismatchSpec:
    delta_t_s: float

    @property
    def delta_x_m(self) -> float:
        return SPEED_OF_LIGHT * self.delta_t_s


class IntrinsicFidelity(NamedTuple):
    f_ic: float
    p_gw1: float
    p_gw2: float


def _envelope(x: float, p: WavepacketSpec) -> float:
    s = p.sigma_m
    u = (x - p.center_m) / s
    return (2.0 * math.pi * s * s) ** -0.25 * math.exp(-0.25 * u * u)


def amplitude(x: float, p: WavepacketSpec) -> complex:
    """Wavepacket amplitude at ``x`` in m**-1/2."""
    return _envelope(x, p) * cmath.exp(1j * p.wavenumber * (x - p.center_m))


def gating_probability(window: GatingWindow, p: WavepacketSpec) -> float:
    """Probability that the packet falls inside the gating window."""
    a, b = window.bounds_m
    val = quad(lambda x: _envelope(x, p) ** 2, a, b, [p.center_m])
    return min(1.0, max(0.0, val))


def overlap(window: GatingWindow, p1: WavepacketSpec, p2: WavepacketSpec) -> complex:
    """Windowed inner product of packet 1 with the conjugate of packet 2."""
    if p1.wavelength_m != p2.wavelength_m:
        raise ValueError("wavepackets must share one wavelength")
    a, b = window.bounds_m
    # With equal wavenumbers psi1 * conj(psi2) = env1 * env2 * exp(i k (x2 - x1)),
    # so the carrier cancels and only a constant phase is left.
    phase = cmath.exp(1j * p1.wavenumber * (p2.center_m - p1.center_m))
    mid = 0.5 * (p1.center_m + p2.center_m)
    pts = [mid, p1.center_m, p2.center_m]
    env = lambda x: _envelope(x, p1) * _envelope(x, p2)  # noqa: E731
    re = quad(lambda x: env(x) * phase.real, a, b, pts)
    im = quad(lambda x: env(x) * phase.imag, a, b, pts)
    return complex(re, im)


def intrinsic_fidelity(
    window: GatingWindow, p1: WavepacketSpec, p2: WavepacketSpec, *, floor: float = GATING_FLOOR
) -> IntrinsicFidelity:
    """Swapped-pair fidelity under temporal mode mismatch, plus both gating probabilities."""
    g1 = gating_probability(window, p1)
    g2 = gating_probability(window, p2)
    if g1 < floor or g2 < floor:
        raise DegenerateWindowError(
            f"gating probabilities ({g1:.3g}, {g2:.3g}) below floor {floor:g}"
        )
    ov = abs(overlap(window, p1, p2)) ** 2
    # Cauchy-Schwarz guarantees ov <= g1 g2; clip quadrature noise
    f_ic = 0.5 + 0.5 * min(1.0, ov / (g1 * g2))
    return IntrinsicFidelity(f_ic, g1, g2)
