"""Adaptive Gauss-Kronrod quadrature that refuses to return unconverged values."""
from __future__ import annotations

import warnings
from typing import Callable, Iterable

from scipy import integrate

from .errors import QuadratureError

EPSREL = 1e-10
EPSABS = 1e-14


def quad(
    f: Callable[[float], float],
    a: float,
    b: float,
    points: Iterable[float] = (),
    *,
    epsrel: float = EPSREL,
    epsabs: float = EPSABS,
) -> float:
    pts = [q for q in points if a < q < b]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            f, a, b, epsabs=epsabs, epsrel=epsrel, limit=200,
            points=pts or None, full_output=1,
        )
    if len(out) > 3:
        raise QuadratureError(f"quadrature on [{a:g}, {b:g}] did not converge: {out[3].splitlines()[0]}")
    return out[0]
