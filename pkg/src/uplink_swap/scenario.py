"""End-to-end evaluation of one satellite/ground-station configuration."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .background import BackgroundParams, background_distribution
from .channel import AtmosphereParams, BeamParams, ChannelBudget, StaticLosses, channel_efficiency
from .coincidence import RoutingModel, coincidence_statistics, final_fidelity, ground_pattern_distribution
from .errors import ConsistencyError
from .geometry import EarthModel, LinkGeometry, link_geometry
from .wavepacket import GatingWindow, WavepacketSpec, intrinsic_fidelity

# Gauss-Hermite nodes used when the clock offset is spread
CLOCK_NODES = 24


@dataclass(frozen=True)
class ScenarioParams:
    """Full physical configuration. Defaults equal the shipped defaults document."""

    altitude_m: float = 500e3
    ground_separation_m: float = 1000e3
    temporal_width_s: float = 10e-9
    gating_window_s: float = 40e-9
    clock_offset_s: float = 1e-9
    clock_offset_spread_s: float = 0.0
    wavelength_m: float = 785e-9
    beam: BeamParams = field(default_factory=BeamParams)
    atmosphere: AtmosphereParams = field(default_factory=AtmosphereParams)
    losses: StaticLosses = field(default_factory=StaticLosses)
    background: BackgroundParams = field(default_factory=BackgroundParams)
    earth: EarthModel = field(default_factory=EarthModel)
    routing: RoutingModel = field(default_factory=RoutingModel)

    def __post_init__(self) -> None:
        for name in ("altitude_m", "temporal_width_s", "gating_window_s", "wavelength_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} > 0 violated")
        if not self.ground_separation_m >= 0:
            raise ValueError("ground_separation_m >= 0 violated")
        if not self.clock_offset_spread_s >= 0:
            raise ValueError("clock_offset_spread_s >= 0 violated")
        if not math.isfinite(self.clock_offset_s):
            raise ValueError("clock_offset_s must be finite")


def get_path(obj: Any, path: str) -> Any:
    for part in path.split("."):
        obj = getattr(obj, part)
    return obj


def replace_path(obj: Any, path: str, value: Any) -> Any:
    """Copy of a nested frozen dataclass with the dotted ``path`` set to ``value``."""
    head, _, rest = path.partition(".")
    if not dataclasses.is_dataclass(obj) or head not in {f.name for f in dataclasses.fields(obj)}:
        raise KeyError(path)
    if rest:
        value = replace_path(getattr(obj, head), rest, value)
    return dataclasses.replace(obj, **{head: value})


@dataclass(frozen=True)
class ProtocolMetrics:
    eta_tot: float
    p_m_single: float
    p_s: float
    f_ic: float
    fidelity: float
    p_gw1: float
    p_gw2: float
    eta1: float
    eta2: float
    p_background_click: float
    channel: ChannelBudget
    geometry: LinkGeometry

    def as_row(self) -> dict[str, float]:
        return {
            "eta_a": self.channel.eta_a,
            "eta_w": self.channel.eta_w,
            "P_gw": self.p_gw1,
            "F_ic": self.f_ic,
            "P_S": self.p_s,
            "eta_tot": self.eta_tot,
            "F": self.fidelity,
        }


def _at_offset(p: ScenarioParams, budget: ChannelBudget, window: GatingWindow, delta_t: float, mu: float):
    p1 = WavepacketSpec.arriving_at(0.0, p.temporal_width_s, p.wavelength_m)
    p2 = WavepacketSpec.arriving_at(delta_t, p.temporal_width_s, p.wavelength_m)
    fid = intrinsic_fidelity(window, p1, p2)
    eta1 = budget.eta_ch * fid.p_gw1
    eta2 = budget.eta_ch * fid.p_gw2
    ground = ground_pattern_distribution(eta1, eta2, p.routing)
    bg = background_distribution([mu] * 4)
    stats = coincidence_statistics(ground, bg)
    f = final_fidelity(stats.p_s, fid.f_ic)
    return stats, fid, eta1, eta2, f


def evaluate_scenario(p: ScenarioParams) -> ProtocolMetrics:
    """Run the full model chain for one configuration.

    geometry -> beam and atmosphere -> gating and mode mismatch -> per-photon
    detection efficiency -> ground and background click patterns ->
    signature probabilities -> fidelity.

    The gating window is centred halfway between the nominal arrivals of the
    two photons. With ``clock_offset_spread_s > 0`` the offset is Gaussian
    around ``clock_offset_s``; ``eta_tot`` is then the mean over offsets and
    ``F``, ``F_ic`` and ``P_S`` are success-weighted means, i.e. what the
    delivered pairs would show.
    """
    geom = link_geometry(p.altitude_m, p.ground_separation_m, p.earth)
    budget = channel_efficiency(geom, p.beam, p.atmosphere, p.losses, p.wavelength_m, p.earth)
    window = GatingWindow.centered(0.5 * p.clock_offset_s, p.gating_window_s)
    env = p.background.environment(p.beam.aperture_radius_m)
    mu = env.total_rate_hz * p.gating_window_s
    p_click = -math.expm1(-mu)

    if p.clock_offset_spread_s == 0:
        stats, fid, eta1, eta2, f = _at_offset(p, budget, window, p.clock_offset_s, mu)
        metrics = ProtocolMetrics(
            stats.eta_tot, stats.p_m_single, stats.p_s, fid.f_ic, f,
            fid.p_gw1, fid.p_gw2, eta1, eta2, p_click, budget, geom,
        )
    else:
        nodes, weights = np.polynomial.hermite_e.hermegauss(CLOCK_NODES)
        weights = weights / weights.sum()
        acc = np.zeros(9)
        for x, w in zip(nodes, weights):
            dt = p.clock_offset_s + p.clock_offset_spread_s * x
            stats, fid, eta1, eta2, f = _at_offset(p, budget, window, dt, mu)
            e = stats.eta_tot
            acc += w * np.array(
                [e, stats.p_m_single, e * stats.p_s, e * fid.f_ic, e * f, fid.p_gw1, fid.p_gw2, eta1, eta2]
            )
        e = acc[0]
        if e > 0:
            p_s, f_ic, f = acc[2] / e, acc[3] / e, acc[4] / e
        else:
            p_s, f_ic, f = 0.0, 0.5, 0.25
        metrics = ProtocolMetrics(
            e, acc[1], p_s, f_ic, f, acc[5], acc[6], acc[7], acc[8], p_click, budget, geom
        )
    _check(metrics)
    return metrics


def _check(m: ProtocolMetrics) -> None:
    probs = {
        "eta_a": m.channel.eta_a, "eta_w": m.channel.eta_w, "eta_tot": m.eta_tot,
        "P_S": m.p_s, "P_gw1": m.p_gw1, "P_gw2": m.p_gw2, "eta1": m.eta1, "eta2": m.eta2,
    }
    for name, v in probs.items():
        if not 0.0 <= v <= 1.0:
            raise ConsistencyError(f"{name}={v!r} outside [0, 1]")
    if not 0.25 - 1e-12 <= m.fidelity <= 1.0 + 1e-12:
        raise ConsistencyError(f"fidelity {m.fidelity!r} outside [1/4, 1]")


def ideal_scenario(**overrides: Any) -> ScenarioParams:
    """Lossless, background-free configuration with perfect clocks."""
    base = ScenarioParams(
        clock_offset_s=0.0,
        gating_window_s=400e-9,
        beam=BeamParams(aperture_radius_m=1e3, pointing_jitter_sq=0.0),
        atmosphere=AtmosphereParams(alpha0_per_m=0.0),
        losses=StaticLosses(1.0, 1.0),
        background=BackgroundParams(night_rate_hz=0.0, day_rate_hz=0.0, dark_count_rate_hz=0.0),
    )
    return dataclasses.replace(base, **overrides)
