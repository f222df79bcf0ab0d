"""Derivative-free search over scenario parameters.

Bounded Nelder-Mead on the unit box, restarted from the box centre and then
from points drawn with a seeded generator. The result is the best point seen,
never a claim of global optimality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from scipy import optimize as sp_optimize

from .errors import ModelError
from .scenario import ProtocolMetrics, ScenarioParams, evaluate_scenario, get_path, replace_path

Objective = Literal["max_fidelity_subject_to_eta_floor", "weighted_log_product"]
OBJECTIVES = ("max_fidelity_subject_to_eta_floor", "weighted_log_product")

# objective value assigned to points the model cannot evaluate
FAILED = 1e6
# penalty per decade that eta_tot falls short of the floor
FLOOR_PENALTY = 10.0


@dataclass(frozen=True)
class FreeParam:
    path: str
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)) or self.upper < self.lower:
            raise ValueError(f"bounds of {self.path!r} must be finite with lower <= upper")


@dataclass(frozen=True)
class OptimizeSpec:
    baseline: ScenarioParams
    free: tuple[FreeParam, ...]
    objective: Objective = "max_fidelity_subject_to_eta_floor"
    eta_floor: float = 1e-6
    fidelity_weight: float = 1.0
    efficiency_weight: float = 1.0
    max_evaluations: int = 600
    tolerance: float = 1e-6
    restarts: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.free:
            raise ValueError("at least one free parameter is required")
        for fp in self.free:
            try:
                get_path(self.baseline, fp.path)
            except AttributeError:
                raise ValueError(f"unknown free parameter {fp.path!r}") from None
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        if not 0 <= self.eta_floor <= 1:
            raise ValueError("eta_floor in [0, 1] violated")
        if self.max_evaluations < 1 or self.restarts < 1:
            raise ValueError("max_evaluations >= 1 and restarts >= 1 required")
        if not self.tolerance > 0:
            raise ValueError("tolerance > 0 violated")


@dataclass(frozen=True)
class TraceEntry:
    values: tuple[float, ...]
    objective: float
    metrics: Optional[ProtocolMetrics]
    error: Optional[str] = None


@dataclass
class OptimizeResult:
    best_params: ScenarioParams
    best_values: tuple[float, ...]
    metrics: ProtocolMetrics
    objective: float
    converged: bool
    trace: list[TraceEntry] = field(default_factory=list)

    @property
    def n_evaluations(self) -> int:
        return len(self.trace)


def objective_value(spec: OptimizeSpec, m: ProtocolMetrics) -> float:
    """Lower is better."""
    if spec.objective == "weighted_log_product":
        if m.eta_tot <= 0:
            return FAILED
        return -(spec.fidelity_weight * math.log(m.fidelity) + spec.efficiency_weight * math.log(m.eta_tot))
    shortfall = 0.0
    if spec.eta_floor > 0 and m.eta_tot < spec.eta_floor:
        ratio = m.eta_tot / spec.eta_floor
        shortfall = -math.log10(ratio) if ratio > 0 else 30.0
    return -m.fidelity + FLOOR_PENALTY * shortfall


class _BudgetExhausted(Exception):
    pass


class _Evaluator:
    def __init__(self, spec: OptimizeSpec) -> None:
        self.spec = spec
        self.trace: list[TraceEntry] = []
        self.lo = np.array([fp.lower for fp in spec.free])
        self.hi = np.array([fp.upper for fp in spec.free])
        self.active = self.hi > self.lo

    def values(self, u: np.ndarray) -> tuple[float, ...]:
        x = self.lo.copy()
        x[self.active] += np.clip(u, 0.0, 1.0) * (self.hi - self.lo)[self.active]
        return tuple(float(v) for v in np.clip(x, self.lo, self.hi))

    def params(self, values: tuple[float, ...]) -> ScenarioParams:
        p = self.spec.baseline
        for fp, v in zip(self.spec.free, values):
            p = replace_path(p, fp.path, v)
        return p

    def __call__(self, u: np.ndarray) -> float:
        if len(self.trace) >= self.spec.max_evaluations:
            raise _BudgetExhausted
        vals = self.values(np.asarray(u, dtype=float))
        try:
            m = evaluate_scenario(self.params(vals))
            f = objective_value(self.spec, m)
            entry = TraceEntry(vals, f, m)
        except (ValueError, ModelError) as exc:
            f = FAILED
            entry = TraceEntry(vals, f, None, f"{type(exc).__name__}: {exc}")
        self.trace.append(entry)
        return f


def optimize(spec: OptimizeSpec) -> OptimizeResult:
    ev = _Evaluator(spec)
    dim = int(ev.active.sum())
    converged = True
    if dim == 0:
        ev(np.zeros(0))
    else:
        rng = np.random.default_rng(spec.seed)
        starts = [np.full(dim, 0.5)] + [rng.uniform(0.05, 0.95, dim) for _ in range(spec.restarts - 1)]
        for x0 in starts:
            simplex = np.vstack([x0] + [np.clip(x0 + 0.25 * np.eye(dim)[i] * (1 if x0[i] < 0.5 else -1), 0, 1) for i in range(dim)])
            try:
                res = sp_optimize.minimize(
                    ev, x0, method="Nelder-Mead", bounds=[(0.0, 1.0)] * dim,
                    options={
                        "initial_simplex": simplex, "xatol": spec.tolerance, "fatol": spec.tolerance,
                        "maxfev": spec.max_evaluations, "maxiter": spec.max_evaluations,
                    },
                )
                converged = converged and bool(res.success)
            except _BudgetExhausted:
                converged = False
                break

    ok = [e for e in ev.trace if e.metrics is not None]
    if not ok:
        raise ModelError("no evaluated point produced valid metrics")
    best = min(ok, key=lambda e: e.objective)
    return OptimizeResult(ev.params(best.values), best.values, best.metrics, best.objective, converged, ev.trace)
