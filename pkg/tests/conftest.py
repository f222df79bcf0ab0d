import os

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary is printed at the end of the run."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA.append((name, bool(passed), detail))
        return bool(passed)

    return record


@pytest.fixture
def random_distribution():
    def make(rng: np.random.Generator, zeros: float = 0.3) -> np.ndarray:
        p = rng.random(16) * (rng.random(16) > zeros)
        if p.sum() == 0:
            p[0] = 1.0
        return p / p.sum()

    return make


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
