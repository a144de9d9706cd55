"""Shared fixtures.

The heavyweight ensemble runs are built once per session and cached by
name, so the acceptance criteria can share them. Frozen seeds: 2026
for drawing initial conditions, 7 for the walks themselves.
"""

from __future__ import annotations

import numpy as np
import pytest

from coinwalk.disorder import ContinuousSU2, Regime, TwoCoin
from coinwalk.ensemble import run_ensemble
from coinwalk.initial import XI1, XI2, gaussian_profile, random_ics

IC_SEED = 2026
RUN_SEED = 7
STEPS = 1000

HADAMARD_ONLY = TwoCoin(p=1.0)

# name -> (regime, ensemble, ic count, replicates)
_LOCALIZED_RUNS = {
    "dyn-inf-500": (Regime.DYNAMIC, ContinuousSU2(), 500, 1),
    "flu-inf-500": (Regime.FLUCTUATING, ContinuousSU2(), 500, 1),
    "dyn-2-500": (Regime.DYNAMIC, TwoCoin(), 500, 1),
    "flu-2-500": (Regime.FLUCTUATING, TwoCoin(), 500, 1),
    "static-inf-500": (Regime.STATIC, ContinuousSU2(), 500, 1),
    "static-2-500": (Regime.STATIC, TwoCoin(), 500, 1),
    "ordered-inf-500": (Regime.ORDERED, ContinuousSU2(), 500, 1),
    "ordered-2-500": (Regime.ORDERED, TwoCoin(), 500, 1),
    "ordered-H-500": (Regime.ORDERED, HADAMARD_ONLY, 500, 1),
    "dyn-inf-1000": (Regime.DYNAMIC, ContinuousSU2(), 1000, 1),
    "flu-inf-1000": (Regime.FLUCTUATING, ContinuousSU2(), 1000, 1),
    "dyn-2-1000": (Regime.DYNAMIC, TwoCoin(), 1000, 1),
    "flu-2-1000": (Regime.FLUCTUATING, TwoCoin(), 1000, 1),
    "static-inf-1000": (Regime.STATIC, ContinuousSU2(), 1000, 1),
    "static-2-1000": (Regime.STATIC, TwoCoin(), 1000, 1),
    "ordered-H-1000": (Regime.ORDERED, HADAMARD_ONLY, 1000, 1),
}

# Gaussian runs use a single wide initial state and average over
# disorder realizations instead of initial conditions.
_GAUSSIAN_RUNS = {
    "gauss-dyn-xi1": (Regime.DYNAMIC, ContinuousSU2(), XI1, 64),
    "gauss-dyn-xi2": (Regime.DYNAMIC, ContinuousSU2(), XI2, 64),
    "gauss-flu-xi1": (Regime.FLUCTUATING, ContinuousSU2(), XI1, 64),
    "gauss-flu-xi2": (Regime.FLUCTUATING, ContinuousSU2(), XI2, 64),
    "gauss-ordH-xi1": (Regime.ORDERED, HADAMARD_ONLY, XI1, 1),
    "gauss-ordH-xi2": (Regime.ORDERED, HADAMARD_ONLY, XI2, 1),
}


class RunCache:
    def __init__(self) -> None:
        self._results: dict[str, object] = {}
        self._ics: dict[int, list] = {}

    def ics(self, count: int) -> list:
        if count not in self._ics:
            self._ics[count] = random_ics(count, IC_SEED, "localized")
        return self._ics[count]

    def get(self, name: str):
        if name in self._results:
            return self._results[name]
        if name in _LOCALIZED_RUNS:
            regime, ensemble, count, reps = _LOCALIZED_RUNS[name]
            res = run_ensemble(
                regime, ensemble, self.ics(count), STEPS, RUN_SEED, replicates=reps
            )
        elif name in _GAUSSIAN_RUNS:
            regime, ensemble, spin, reps = _GAUSSIAN_RUNS[name]
            res = run_ensemble(
                regime, ensemble, [gaussian_profile(5.0, spin)], STEPS, RUN_SEED,
                replicates=reps,
            )
        else:
            raise KeyError(name)
        self._results[name] = res
        return res

    def built(self) -> dict[str, object]:
        return dict(self._results)


@pytest.fixture(scope="session")
def runs() -> RunCache:
    return RunCache()


def loglog_slope(values: np.ndarray, t_lo: int, t_hi: int) -> float:
    """Least-squares slope of log(values) vs log(t) over t in [t_lo, t_hi]."""
    t = np.arange(1, len(values) + 1)
    sel = (t >= t_lo) & (t <= t_hi)
    coef = np.polyfit(np.log(t[sel]), np.log(values[sel]), 1)
    return float(coef[0])
