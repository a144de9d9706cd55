"""Observables: spin reduction, entanglement entropy, trace distance,
position statistics and the classical random-walk baseline.

The reduced spin density matrix of a walker state is fixed by two
numbers, alpha = sum_j |a_j|^2 (spin-up weight) and the coherence
gamma = sum_j a_j conj(b_j):

    rho = [ alpha        gamma   ]
          [ conj(gamma)  1-alpha ]

Its eigenvalues are 1/2 +- sqrt((alpha - 1/2)^2 + |gamma|^2), and the
entanglement entropy between spin and position is their Shannon entropy
in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NumericalDomainError
from .state import WalkerState

EIGENVALUE_TOL = 1e-12


@dataclass(frozen=True)
class ReducedSpinState:
    """Spin density matrix as (alpha, gamma)."""

    alpha: float
    gamma: complex

    @property
    def beta(self) -> float:
        return 1.0 - self.alpha


def reduce_spin(state: WalkerState) -> ReducedSpinState:
    """Trace out position."""
    alpha = float(np.sum(np.abs(state.a) ** 2))
    gamma = complex(np.sum(state.a * np.conj(state.b)))
    return ReducedSpinState(alpha, gamma)


def eigenvalues(r: ReducedSpinState) -> tuple[float, float]:
    """Eigenvalues of the reduced spin state, largest first.

    Raises NumericalDomainError if either lies outside [0, 1] by more
    than EIGENVALUE_TOL, which signals a non-normalized or otherwise
    invalid input.
    """
    s = math.sqrt((r.alpha - 0.5) ** 2 + abs(r.gamma) ** 2)
    lam_hi = 0.5 + s
    lam_lo = 0.5 - s
    if lam_hi > 1.0 + EIGENVALUE_TOL or lam_lo < -EIGENVALUE_TOL:
        raise NumericalDomainError(
            f"reduced-state eigenvalues ({lam_hi!r}, {lam_lo!r}) outside [0, 1]"
        )
    return min(lam_hi, 1.0), max(lam_lo, 0.0)


def entropy(r: ReducedSpinState) -> float:
    """Entanglement entropy in bits; 0 for product states, 1 at maximum."""
    lam_hi, lam_lo = eigenvalues(r)
    out = 0.0
    for lam in (lam_hi, lam_lo):
        if lam > 0.0:
            out -= lam * math.log2(lam)
    return out


def _xlog2(x: np.ndarray) -> np.ndarray:
    pos = x > 0.0
    logs = np.log2(x, out=np.zeros_like(x), where=pos)
    return np.multiply(x, logs, out=np.zeros_like(x), where=pos)


def entropy_arrays(alpha: np.ndarray, gre: np.ndarray, gim: np.ndarray) -> np.ndarray:
    """Vectorized entropy from alpha and Re/Im gamma arrays."""
    s = np.sqrt((alpha - 0.5) ** 2 + gre * gre + gim * gim)
    lam_hi = 0.5 + s
    lam_lo = 0.5 - s
    if float(np.max(lam_hi, initial=0.0)) > 1.0 + EIGENVALUE_TOL or float(
        np.min(lam_lo, initial=1.0)
    ) < -EIGENVALUE_TOL:
        raise NumericalDomainError("reduced-state eigenvalues outside [0, 1]")
    lam_hi = np.minimum(lam_hi, 1.0)
    lam_lo = np.maximum(lam_lo, 0.0)
    return -(_xlog2(lam_hi) + _xlog2(lam_lo))


def trace_distance(r1: ReducedSpinState, r2: ReducedSpinState) -> float:
    """Trace distance between two reduced spin states."""
    return math.sqrt((r1.alpha - r2.alpha) ** 2 + abs(r1.gamma - r2.gamma) ** 2)


def position_distribution(state: WalkerState) -> dict[int, float]:
    """Map site -> occupation probability over the walker window."""
    p = np.abs(state.a) ** 2 + np.abs(state.b) ** 2
    return {int(j): float(v) for j, v in zip(state.sites(), p)}


def dispersion(dist: Mapping[int, float]) -> float:
    """Standard deviation of the position distribution."""
    m0 = sum(dist.values())
    if m0 <= 0.0:
        raise NumericalDomainError("distribution has no weight")
    m1 = sum(j * p for j, p in dist.items()) / m0
    m2 = sum(j * j * p for j, p in dist.items()) / m0
    return math.sqrt(max(0.0, m2 - m1 * m1))


@dataclass(frozen=True)
class ClassicalBaseline:
    """Unbiased classical random walk after a fixed number of steps."""

    steps: int
    distribution: dict[int, float]
    dispersion: float


def classical_baseline(steps: int) -> ClassicalBaseline:
    """Exact binomial position distribution after `steps` coin flips.

    Probabilities are binomial coefficients over 2^steps, computed in
    integer arithmetic and rounded once to float; the dispersion is
    sqrt(steps) exactly.
    """
    if steps < 1:
        raise NumericalDomainError(f"baseline needs steps >= 1, got {steps}")
    denom = 1 << steps
    dist = {
        2 * k - steps: math.comb(steps, k) / denom for k in range(steps + 1)
    }
    return ClassicalBaseline(steps, dist, math.sqrt(steps))
