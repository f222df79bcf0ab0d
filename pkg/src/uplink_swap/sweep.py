"""Grid sweeps over scenario parameters."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ModelError
from .scenario import ProtocolMetrics, ScenarioParams, evaluate_scenario, get_path, replace_path

MAX_AXES = 3


@dataclass(frozen=True)
class Axis:
    path: str
    values: tuple[float, ...]

    @classmethod
    def from_range(cls, path: str, start: float, stop: float, step: float) -> "Axis":
        """Inclusive range; ``stop`` is kept when it lies on the step grid."""
        if not step > 0 or stop < start:
            raise ValueError(f"axis {path}: need step > 0 and stop >= start")
        n = int((stop - start) / step + 1e-9) + 1
        return cls(path, tuple(start + i * step for i in range(n)))


@dataclass(frozen=True)
class SweepSpec:
    baseline: ScenarioParams
    axes: tuple[Axis, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= MAX_AXES:
            raise ValueError(f"a sweep needs 1 to {MAX_AXES} axes, got {len(self.axes)}")
        for ax in self.axes:
            if not ax.values:
                raise ValueError(f"axis {ax.path!r} has no values")
            try:
                current = get_path(self.baseline, ax.path)
            except AttributeError:
                raise ValueError(f"unknown sweep parameter {ax.path!r}") from None
            if current is not None and not isinstance(current, (int, float)):
                raise ValueError(f"sweep parameter {ax.path!r} is not numeric")

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(ax.path for ax in self.axes)

    def points(self) -> list[tuple[float, ...]]:
        return list(itertools.product(*(ax.values for ax in self.axes)))

    def params_at(self, point: Sequence[float]) -> ScenarioParams:
        p = self.baseline
        for ax, v in zip(self.axes, point):
            p = replace_path(p, ax.path, v)
        return p


@dataclass(frozen=True)
class SweepRow:
    point: tuple[float, ...]
    metrics: Optional[ProtocolMetrics]
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    axis_names: tuple[str, ...]
    rows: tuple[SweepRow, ...]


def _evaluate_point(args: tuple[SweepSpec, tuple[float, ...]]) -> SweepRow:
    spec, point = args
    try:
        return SweepRow(point, evaluate_scenario(spec.params_at(point)))
    except (ValueError, ModelError) as exc:
        return SweepRow(point, None, f"{type(exc).__name__}: {exc}")


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; rows come back in lexicographic axis order.

    A point that fails (below the horizon, degenerate window, ...) becomes a
    row carrying the error message instead of metrics.
    """
    jobs = [(spec, pt) for pt in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_evaluate_point, jobs, chunksize=8))
    else:
        rows = [_evaluate_point(j) for j in jobs]
    return SweepResult(spec.axis_names, tuple(rows))
