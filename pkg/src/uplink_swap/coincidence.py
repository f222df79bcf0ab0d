"""Success signatures, dual-channel efficiency and the final swapped-pair fidelity.

A detector fires when a ground photon *or* a background count reaches it, so
the observed pattern is the bitwise union of the ground pattern and the
background pattern.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConsistencyError, ModelError
from .patterns import (
    ACCEPTED_SIGNATURES,
    N_DETECTORS,
    N_PATTERNS,
    DetectorPatternDistribution,
    Pattern,
    detector_mask,
    pattern_index,
    submasks,
)

SYMMETRY_RTOL = 1e-9


@dataclass(frozen=True)
class RoutingModel:
    """Where a detected photon lands. Default: each of the four detectors with 1/4."""

    probs: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self) -> None:
        if len(self.probs) != N_DETECTORS or any(p < 0 for p in self.probs):
            raise ValueError("routing needs four non-negative probabilities")
        if abs(sum(self.probs) - 1.0) > 1e-12:
            raise ValueError("routing probabilities must sum to 1")


def ground_pattern_distribution(
    eta1: float, eta2: float, routing: RoutingModel = RoutingModel()
) -> DetectorPatternDistribution:
    """Click-pattern distribution caused by the two ground photons alone.

    Each photon is lost with probability ``1 - eta`` or lands on detector
    ``j`` with probability ``eta * routing[j]``; the 5 x 5 joint outcomes are
    enumerated exactly.
    """
    for eta in (eta1, eta2):
        if not 0 <= eta <= 1:
            raise ValueError(f"channel efficiency {eta!r} outside [0, 1]")

    def fates(eta: float) -> list[tuple[int, float]]:
        return [(0, 1.0 - eta)] + [(detector_mask(j), eta * r) for j, r in enumerate(routing.probs)]

    probs = np.zeros(N_PATTERNS)
    for m1, q1 in fates(eta1):
        for m2, q2 in fates(eta2):
            probs[m1 | m2] += q1 * q2
    return DetectorPatternDistribution(probs)


def _accepted(m: Pattern) -> int:
    idx = pattern_index(m)
    if idx not in ACCEPTED_SIGNATURES:
        raise ValueError(f"{m!r} is not an accepted success signature")
    return idx


def signature_prob(
    m: Pattern, ground: DetectorPatternDistribution, background: DetectorPatternDistribution
) -> float:
    """Probability that the union of ground and background clicks equals ``m``."""
    idx = _accepted(m)
    pg, pd = ground.probs, background.probs
    # only patterns inside m can contribute to a union equal to m
    total = 0.0
    for g in submasks(idx):
        for b in submasks(idx):
            if g | b == idx:
                total += pg[g] * pd[b]
    return total


def all_signature_probs(
    ground: DetectorPatternDistribution, background: DetectorPatternDistribution
) -> tuple[float, ...]:
    return tuple(signature_prob(m, ground, background) for m in ACCEPTED_SIGNATURES)


def total_success(p_m_single: float, all_signatures: Optional[Sequence[float]] = None) -> float:
    """Four times one signature probability, after checking all four agree when given."""
    if all_signatures is not None:
        lo, hi = min(all_signatures), max(all_signatures)
        if hi - lo > SYMMETRY_RTOL * max(hi, 1e-300):
            raise ConsistencyError(
                f"success signatures are not symmetric: {tuple(all_signatures)!r}"
            )
    if 4.0 * p_m_single > 1.0 + 1e-12:
        raise ConsistencyError(f"signature probability {p_m_single!r} exceeds 1/4")
    return 4.0 * p_m_single


def legitimate_fraction(
    ground: DetectorPatternDistribution,
    background: DetectorPatternDistribution,
    m: Pattern = ACCEPTED_SIGNATURES[0],
) -> float:
    """Share of signature-``m`` events in which both clicks come from ground photons."""
    idx = _accepted(m)
    p_m = signature_prob(idx, ground, background)
    if p_m <= 0:
        raise ModelError("success signature has zero probability; legitimate fraction undefined")
    quiet_elsewhere = sum(background.probs[b] for b in submasks(idx))
    return min(1.0, ground.probs[idx] * quiet_elsewhere / p_m)


def final_fidelity(p_s: float, f_ic: float) -> float:
    """Legitimate events carry ``f_ic``; the rest are maximally mixed (fidelity 1/4)."""
    if not 0 <= p_s <= 1:
        raise ValueError(f"legitimate fraction {p_s!r} outside [0, 1]")
    if not 0.5 <= f_ic <= 1:
        raise ValueError(f"intrinsic fidelity {f_ic!r} outside [1/2, 1]")
    return p_s * f_ic + 0.25 * (1.0 - p_s)


@dataclass(frozen=True)
class CoincidenceResult:
    eta_tot: float
    p_m_single: float
    p_s: float
    signature_probs: tuple[float, ...] = field(repr=False)


def coincidence_statistics(
    ground: DetectorPatternDistribution, background: DetectorPatternDistribution
) -> CoincidenceResult:
    sigs = all_signature_probs(ground, background)
    eta_tot = total_success(sigs[0], sigs)
    p_s = legitimate_fraction(ground, background, ACCEPTED_SIGNATURES[0])
    return CoincidenceResult(eta_tot, sigs[0], p_s, sigs)
