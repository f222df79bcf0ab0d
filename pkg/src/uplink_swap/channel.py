"""Per-channel transmissivity: beam spread, pointing/tracking and atmosphere."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .geometry import EarthModel, LinkGeometry, distance_to_altitude, path_altitude
from .quadrature import quad


@dataclass(frozen=True)
class BeamParams:
    """Transmitter/receiver optics.

    ``beam_width_m`` bypasses the long-term beam-width model when set.
    """

    aperture_radius_m: float = 0.17
    initial_waist_m: float = 0.15
    fried_parameter_m: float = 0.105
    tracking_error_m: float = 0.0
    pointing_jitter_sq: float = 1e-12
    beam_width_m: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("aperture_radius_m", "initial_waist_m", "fried_parameter_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} > 0 violated")
        if not self.tracking_error_m >= 0:
            raise ValueError("tracking_error_m >= 0 violated")
        if not self.pointing_jitter_sq >= 0:
            raise ValueError("pointing_jitter_sq >= 0 violated")
        if self.beam_width_m is not None and not self.beam_width_m > 0:
            raise ValueError("beam_width_m > 0 violated")


@dataclass(frozen=True)
class AtmosphereParams:
    alpha0_per_m: float = 5e-6
    scale_height_m: float = 6600.0

    def __post_init__(self) -> None:
        if not self.alpha0_per_m >= 0:
            raise ValueError("alpha0_per_m >= 0 violated")
        if not self.scale_height_m > 0:
            raise ValueError("scale_height_m > 0 violated")


@dataclass(frozen=True)
class StaticLosses:
    optics_efficiency: float = 0.5
    detector_efficiency: float = 0.6

    def __post_init__(self) -> None:
        for name in ("optics_efficiency", "detector_efficiency"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"0 < {name} <= 1 violated")


@dataclass(frozen=True)
class ChannelBudget:
    eta_a: float
    eta_w: float
    optics_efficiency: float
    detector_efficiency: float
    beam_width_m: float

    @property
    def eta_ch(self) -> float:
        return self.eta_a * self.eta_w * self.optics_efficiency * self.detector_efficiency


def long_term_beam_width(z: float, wavelength_m: float, beam: BeamParams) -> float:
    """Diffraction and turbulence spreading added in quadrature."""
    if not z > 0:
        raise ValueError("propagation distance must be positive")
    w0 = beam.initial_waist_m
    zr = math.pi * w0 * w0 / wavelength_m
    w_diff_sq = w0 * w0 * (1.0 + (z / zr) ** 2)
    w_turb = math.sqrt(2.0) * wavelength_m * z / (math.pi * beam.fried_parameter_m)
    return math.sqrt(w_diff_sq + w_turb * w_turb)


def widening_wandering_efficiency(
    aperture_radius_m: float,
    beam_width_m: float,
    z: float,
    tracking_error_m: float = 0.0,
    pointing_jitter_sq: float = 1e-12,
) -> float:
    """Fraction of the long-term spot collected by a circular aperture."""
    spread = beam_width_m**2 + pointing_jitter_sq * z * z + tracking_error_m**2
    return -math.expm1(-2.0 * aperture_radius_m**2 / spread)


# altitudes (in scale heights) at which the attenuation integral is split
_SPLITS = (0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)


def attenuation_path_integral(
    geom: LinkGeometry, atmo: AtmosphereParams, earth: EarthModel = EarthModel()
) -> float:
    """Integral of exp(-h(y)/h~) along the line of sight, in metres."""
    hs = atmo.scale_height_m
    theta = geom.zenith_angle_rad
    z = geom.slant_range_m
    knots = [0.0]
    for k in _SPLITS:
        y = distance_to_altitude(k * hs, theta, earth)
        if y >= z:
            break
        knots.append(y)
    knots.append(z)
    f = lambda y: math.exp(-path_altitude(y, theta, earth) / hs)  # noqa: E731
    return math.fsum(quad(f, a, b) for a, b in zip(knots, knots[1:]))


def atmospheric_efficiency(
    geom: LinkGeometry, atmo: AtmosphereParams = AtmosphereParams(), earth: EarthModel = EarthModel()
) -> float:
    return math.exp(-atmo.alpha0_per_m * attenuation_path_integral(geom, atmo, earth))


def channel_efficiency(
    geom: LinkGeometry,
    beam: BeamParams,
    atmo: AtmosphereParams,
    losses: StaticLosses,
    wavelength_m: float,
    earth: EarthModel = EarthModel(),
) -> ChannelBudget:
    z = geom.slant_range_m
    w = beam.beam_width_m if beam.beam_width_m is not None else long_term_beam_width(z, wavelength_m, beam)
    eta_w = widening_wandering_efficiency(
        beam.aperture_radius_m, w, z, beam.tracking_error_m, beam.pointing_jitter_sq
    )
    eta_a = atmospheric_efficiency(geom, atmo, earth)
    return ChannelBudget(eta_a, eta_w, losses.optics_efficiency, losses.detector_efficiency, w)
