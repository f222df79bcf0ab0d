"""Sweeps that regenerate the data behind the published figures."""
from __future__ import annotations

import dataclasses

from .config import default_scenario
from .sweep import Axis, SweepSpec

NS = 1e-9
KM = 1e3

FIG2_WIDTHS_S = tuple(w * NS for w in (1, 2, 5, 10, 20))
FIG2_WINDOWS_S = tuple(w * NS for w in range(2, 101, 2))
FIG3_SEPARATIONS_M = tuple(d * KM for d in (300, 600, 1000, 1500))
FIG3_ALTITUDES_M = tuple(h * KM for h in (20, 40, 60, 80, *range(100, 1501, 50)))


def fig2(regime: str = "night") -> SweepSpec:
    """Gating window x wavepacket width at h = 500 km, D_G = 1000 km."""
    base = default_scenario()
    base = dataclasses.replace(
        base,
        altitude_m=500 * KM,
        ground_separation_m=1000 * KM,
        background=dataclasses.replace(base.background, regime=regime),
    )
    return SweepSpec(base, (Axis("temporal_width_s", FIG2_WIDTHS_S), Axis("gating_window_s", FIG2_WINDOWS_S)))


def fig3(regime: str = "night") -> SweepSpec:
    """Ground separation x altitude at sigma_t = 10 ns and a 40 ns window."""
    base = default_scenario()
    base = dataclasses.replace(
        base,
        temporal_width_s=10 * NS,
        gating_window_s=40 * NS,
        background=dataclasses.replace(base.background, regime=regime),
    )
    return SweepSpec(base, (Axis("ground_separation_m", FIG3_SEPARATIONS_M), Axis("altitude_m", FIG3_ALTITUDES_M)))


PRESETS = {"fig2": fig2, "fig3": fig3}
