import time
from functools import lru_cache

import pytest

from csflow.flow import run
from csflow.presets import get_preset
from csflow.shapes import generate


@lru_cache(maxsize=None)
def preset_run(name: str):
    """Run a preset once per session; returns (trajectory, wall seconds)."""
    p = get_preset(name)
    t0 = time.perf_counter()
    traj = run(generate(p.shape), p.config)
    return traj, time.perf_counter() - t0


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line straight to the terminal, bypassing capture."""

    def emit(label: str, ok: bool, detail: str = "") -> bool:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}: {detail}")
        return ok

    return emit
