"""Trial-by-trial simulation of the satellite Bell-measurement apparatus.

Used as an independent check on the exact signature enumeration: it never
touches the pattern distributions, it just throws photons and background
counts at four threshold detectors and classifies what clicks.

Trials are processed in fixed-size chunks. Chunk ``k`` draws from a Philox
stream seeded by ``SeedSequence(seed, spawn_key=(k,))``, so the result
depends only on ``(seed, trials)`` and not on how chunks are spread across
workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .coincidence import RoutingModel

CHUNK = 1 << 18
_ACCEPTED = np.zeros(16, dtype=bool)
_ACCEPTED[[0b1010, 0b1001, 0b0110, 0b0101]] = True


@dataclass(frozen=True)
class MonteCarloEstimate:
    trials: int
    successes: int
    legitimate: int

    @property
    def eta_tot(self) -> float:
        return self.successes / self.trials

    @property
    def eta_tot_se(self) -> float:
        e = self.eta_tot
        return math.sqrt(e * (1.0 - e) / self.trials)

    @property
    def p_s(self) -> float:
        return self.legitimate / self.successes if self.successes else math.nan

    @property
    def p_s_se(self) -> float:
        if not self.successes:
            return math.nan
        p = self.p_s
        return math.sqrt(p * (1.0 - p) / self.successes)


def _below(v: np.ndarray, prob: float) -> np.ndarray:
    """Boolean ``v < prob * 2**32`` for uint32 uniforms, so True with probability ``prob``."""
    t = int(prob * 2.0**32)
    if t >= 1 << 32:
        return np.ones(v.shape, dtype=bool)
    return v < np.uint32(t)


def _photon_masks(v: np.ndarray, eta: float, cum_routing: np.ndarray) -> np.ndarray:
    # one uniform decides loss and, by where it falls below eta, the detector
    j = np.zeros(v.shape, dtype=np.uint8)
    for c in cum_routing:
        j += ~_below(v, eta * c)
    return (np.uint8(8) >> j) * _below(v, eta).view(np.uint8)


def _run_chunk(args: tuple) -> tuple[int, int]:
    seed, k, n, eta1, eta2, cum_routing, p_bg = args
    ss = np.random.SeedSequence(seed, spawn_key=(k,))
    lanes = np.random.Philox(ss).random_raw(3 * n).view(np.uint32).reshape(6, n)
    g = _photon_masks(lanes[0], eta1, cum_routing) | _photon_masks(lanes[1], eta2, cum_routing)
    bg = np.zeros(n, dtype=np.uint8)
    for i in range(4):
        bg |= _below(lanes[2 + i], p_bg[i]).view(np.uint8) << np.uint8(3 - i)
    union = g | bg
    success = _ACCEPTED[union]
    legit = success & (g == union)
    return int(np.count_nonzero(success)), int(np.count_nonzero(legit))


def monte_carlo_coincidence(
    eta1: float,
    eta2: float,
    background_click_prob: Union[float, Sequence[float]],
    routing: RoutingModel = RoutingModel(),
    trials: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Estimate the success probability and legitimate fraction by direct sampling.

    Parameters
    ----------
    background_click_prob
        Per-detector probability of at least one background count in the
        gating window; a scalar applies to all four detectors.
    trials
        Number of photon-pair attempts, at least 10**4.
    """
    if trials < 10_000:
        raise ValueError("need at least 10**4 trials")
    p = np.broadcast_to(np.asarray(background_click_prob, dtype=float), (4,))
    if np.any(p < 0) or np.any(p > 1):
        raise ValueError("background click probabilities must lie in [0, 1]")
    cum_routing = np.cumsum(routing.probs)[:-1]
    sizes = [CHUNK] * (trials // CHUNK)
    if trials % CHUNK:
        sizes.append(trials % CHUNK)
    jobs = [(seed, k, n, eta1, eta2, cum_routing, tuple(p)) for k, n in enumerate(sizes)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    return MonteCarloEstimate(trials, sum(s for s, _ in parts), sum(l for _, l in parts))
