import dataclasses

import numpy as np
import pytest

from uplink_swap.config import default_scenario
from uplink_swap.optimize import FAILED, FreeParam, OptimizeSpec, objective_value, optimize
from uplink_swap.scenario import evaluate_scenario

NS, KM = 1e-9, 1e3


@pytest.fixture(scope="module")
def quiet():
    base = default_scenario()
    return dataclasses.replace(base, background=dataclasses.replace(base.background, night_rate_hz=0.0, dark_count_rate_hz=0.0))


def grid_best(spec, path_values):
    vals = [objective_value(spec, evaluate_scenario(dataclasses.replace(spec.baseline, gating_window_s=w))) for w in path_values]
    i = int(np.argmin(vals))
    return path_values[i], vals[i]


WINDOW = FreeParam("gating_window_s", 2 * NS, 100 * NS)
GRID = np.linspace(2 * NS, 100 * NS, 4901)


def test_constrained_optimum_matches_fine_grid(quiet):
    floor = evaluate_scenario(dataclasses.replace(quiet, gating_window_s=12 * NS)).eta_tot
    spec = OptimizeSpec(quiet, (WINDOW,), eta_floor=floor, tolerance=1e-8)
    res = optimize(spec)
    w_ref, f_ref = grid_best(spec, GRID)
    assert res.converged
    assert res.best_values[0] == pytest.approx(w_ref, abs=0.05 * NS)
    assert res.objective <= f_ref + 1e-6
    assert res.metrics.eta_tot >= floor * (1 - 1e-6)


def test_weighted_product_matches_fine_grid(quiet):
    spec = OptimizeSpec(quiet, (WINDOW,), objective="weighted_log_product")
    res = optimize(spec)
    w_ref, f_ref = grid_best(spec, GRID)
    assert res.best_values[0] == pytest.approx(w_ref, abs=0.05 * NS)
    assert res.objective == pytest.approx(f_ref, abs=1e-6)


def test_fidelity_alone_reaches_intrinsic_ceiling(quiet):
    res = optimize(OptimizeSpec(quiet, (WINDOW,), eta_floor=0.0))
    assert res.metrics.fidelity == res.metrics.f_ic
    _, ref = grid_best(OptimizeSpec(quiet, (WINDOW,), eta_floor=0.0), GRID)
    assert -res.metrics.fidelity <= ref + 1e-9


def test_single_point_box():
    fp = FreeParam("altitude_m", 400 * KM, 400 * KM)
    res = optimize(OptimizeSpec(default_scenario(), (fp,)))
    assert res.best_values == (400 * KM,)
    assert res.n_evaluations == 1
    assert res.best_params.altitude_m == 400 * KM


def test_budget_exhaustion_flags_non_convergence():
    spec = OptimizeSpec(
        default_scenario(),
        (WINDOW, FreeParam("altitude_m", 100 * KM, 1500 * KM)),
        max_evaluations=7,
    )
    res = optimize(spec)
    assert not res.converged
    assert res.n_evaluations == 7
    assert res.objective == min(e.objective for e in res.trace)


def test_stays_in_box_and_trace_is_complete():
    free = (FreeParam("altitude_m", 100 * KM, 1500 * KM), FreeParam("ground_separation_m", 200 * KM, 1400 * KM), WINDOW)
    spec = OptimizeSpec(default_scenario(), free, max_evaluations=300, seed=5)
    res = optimize(spec)
    assert res.n_evaluations == len(res.trace) <= 300
    for e in res.trace:
        for fp, v in zip(free, e.values):
            assert fp.lower <= v <= fp.upper
    assert any(e.objective < FAILED for e in res.trace)


def test_seeded_restarts_are_deterministic():
    free = (FreeParam("altitude_m", 100 * KM, 1500 * KM), WINDOW)
    spec = OptimizeSpec(default_scenario(), free, max_evaluations=200, seed=3)
    a, b = optimize(spec), optimize(spec)
    assert a.best_values == b.best_values
    assert [e.values for e in a.trace] == [e.values for e in b.trace]


def test_unevaluable_points_are_recorded():
    # low altitudes with a wide separation put the satellite below the horizon
    free = (FreeParam("altitude_m", 10 * KM, 1000 * KM),)
    base = dataclasses.replace(default_scenario(), ground_separation_m=1500 * KM)
    res = optimize(OptimizeSpec(base, free, max_evaluations=200))
    assert res.best_params.altitude_m > 40 * KM


@pytest.mark.parametrize(
    "kwargs",
    [
        {"free": ()},
        {"free": (FreeParam("altitdue_m", 0, 1),)},
        {"objective": "max_eta"},
        {"eta_floor": 2.0},
        {"max_evaluations": 0},
        {"tolerance": 0.0},
    ],
)
def test_spec_validation(kwargs):
    args = {"baseline": default_scenario(), "free": (WINDOW,), **kwargs}
    with pytest.raises(ValueError):
        OptimizeSpec(**args)


def test_bounds_validation():
    with pytest.raises(ValueError):
        FreeParam("altitude_m", 2.0, 1.0)
    with pytest.raises(ValueError):
        FreeParam("altitude_m", 0.0, float("inf"))
