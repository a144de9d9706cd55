"""Discrete-time quantum walks on the line with disordered coins."""

from .coins import FOURIER, HADAMARD, CoinParams, coin_matrix
from .disorder import CoinField, ContinuousSU2, Regime, TwoCoin
from .ensemble import EnsembleResult, run_ensemble
from .errors import ConfigError, NumericalDomainError, ParameterDomainError, WalkError
from .fitting import PowerLawFit, fit_power_law
from .initial import XI1, XI2, InitialCondition, build_state, gaussian_profile
from .observables import (
    classical_baseline,
    dispersion,
    entropy,
    position_distribution,
    reduce_spin,
    trace_distance,
)
from .state import WalkerState, evolve

__version__ = "0.1.0"

__all__ = [
    "CoinParams",
    "coin_matrix",
    "HADAMARD",
    "FOURIER",
    "Regime",
    "TwoCoin",
    "ContinuousSU2",
    "CoinField",
    "WalkerState",
    "evolve",
    "InitialCondition",
    "build_state",
    "gaussian_profile",
    "XI1",
    "XI2",
    "reduce_spin",
    "entropy",
    "trace_distance",
    "dispersion",
    "position_distribution",
    "classical_baseline",
    "run_ensemble",
    "EnsembleResult",
    "fit_power_law",
    "PowerLawFit",
    "WalkError",
    "ParameterDomainError",
    "ConfigError",
    "NumericalDomainError",
    "__version__",
]
