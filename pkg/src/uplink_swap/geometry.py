"""Symmetric dual-uplink geometry on a spherical Earth.

Both ground stations sit a great-circle distance ``D_G`` apart and the
satellite hovers above the midpoint, so one :class:`LinkGeometry` describes
both links.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True)
class EarthModel:
    radius_m: float = EARTH_RADIUS_M

    def __post_init__(self) -> None:
        if not self.radius_m > 0:
            raise ValueError("radius_m > 0 violated")


@dataclass(frozen=True)
class LinkGeometry:
    """Line of sight from one ground station to the satellite."""

    slant_range_m: float
    zenith_angle_rad: float
    altitude_m: float
    ground_separation_m: float

    @property
    def zenith_angle_deg(self) -> float:
        return math.degrees(self.zenith_angle_rad)


def link_geometry(
    altitude_m: float, ground_separation_m: float, earth: EarthModel = EarthModel()
) -> LinkGeometry:
    """Slant range and zenith angle for the equidistant snapshot.

    The central angle between a station and the sub-satellite point is
    ``delta = (D_G / 2) / R``. Both the slant range and the zenith angle come
    from the law of cosines in the (Earth centre, station, satellite)
    triangle, rewritten with ``1 - cos(delta) = 2 sin^2(delta / 2)`` so that
    short baselines do not lose precision.

    Raises
    ------
    ValueError
        If the altitude is not positive, the separation is negative, or the
        satellite is on or below the local horizon of the stations.
    """
    if not altitude_m > 0:
        raise ValueError(f"altitude must be positive, got {altitude_m!r}")
    if not ground_separation_m >= 0:
        raise ValueError(f"ground separation must be >= 0, got {ground_separation_m!r}")
    r = earth.radius_m
    h = float(altitude_m)
    delta = 0.5 * ground_separation_m / r
    if delta >= math.pi / 2:
        raise ValueError("half the ground separation must subtend less than 90 degrees")

    s2 = math.sin(0.5 * delta) ** 2
    z = math.sqrt(h * h + 4.0 * r * (r + h) * s2)
    cos_theta = (h - 2.0 * (r + h) * s2) / z
    if cos_theta <= 0.0:
        raise ValueError(
            f"satellite at h={h:g} m is below the horizon for D_G={ground_separation_m:g} m"
        )
    theta = math.acos(min(1.0, cos_theta))
    return LinkGeometry(z, theta, h, float(ground_separation_m))


def path_altitude(
    y: float, zenith_angle_rad: float, earth: EarthModel = EarthModel(), *, flat: bool = False
) -> float:
    """Altitude of the point a distance ``y`` along the line of sight.

    ``flat=True`` returns the flat-Earth value ``y cos(theta)``, useful only as
    a cross-check.
    """
    if y < 0:
        raise ValueError(f"path distance must be >= 0, got {y!r}")
    c = math.cos(zenith_angle_rad)
    if flat:
        return y * c
    r = earth.radius_m
    # sqrt(R^2 + y^2 + 2Ry cos) - R without cancellation
    num = y * y + 2.0 * r * y * c
    return num / (math.sqrt(r * r + num) + r)


def distance_to_altitude(
    altitude_m: float, zenith_angle_rad: float, earth: EarthModel = EarthModel()
) -> float:
    """Inverse of :func:`path_altitude` in ``y``."""
    r = earth.radius_m
    c = math.cos(zenith_angle_rad)
    a = float(altitude_m)
    # y^2 + 2Rc y - (2Ra + a^2) = 0, positive root in stable form
    k = 2.0 * r * a + a * a
    return k / (r * c + math.sqrt((r * c) ** 2 + k))
